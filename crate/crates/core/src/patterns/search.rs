//! Finding copies of a pattern inside a host, and in particular copies that
//! use one given host edge (what the arrowing search asks after coloring it).

use crate::graph::{Adjacency, EdgeColoring, Embedding, Graph};
use crate::pattern::{make_pattern_graph, PatternSpec};

#[derive(Debug, Clone)]
enum Kind {
    /// Pattern without edges: any `k` distinct host vertices.
    Edgeless,
    Star(usize),
    CompleteBipartite(usize, usize),
    Generic,
}

/// Search order for the generic backtracker. `anchor[i]` is an earlier
/// pattern neighbour of `order[i]`, `back[i]` all of them.
#[derive(Debug, Clone)]
struct Plan {
    order: Vec<usize>,
    anchor: Vec<Option<usize>>,
    back: Vec<Vec<usize>>,
}

impl Plan {
    fn new(pattern: &Adjacency, prefix: &[usize]) -> Plan {
        let n = pattern.vertex_count();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for &p in prefix {
            placed[p] = true;
            order.push(p);
        }
        // Grow greedily: next is the unplaced vertex with most placed
        // neighbours (ties: higher degree, then lower index).
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links = pattern.neighbors(v).iter().filter(|&&w| placed[w]).count();
                    (links, pattern.degree(v), std::cmp::Reverse(v))
                })
                .expect("some vertex is unplaced");
            placed[next] = true;
            order.push(next);
        }
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let back: Vec<Vec<usize>> = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                pattern
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| position[w] < i)
                    .collect()
            })
            .collect();
        let anchor = back.iter().map(|b| b.first().copied()).collect();
        Plan {
            order,
            anchor,
            back,
        }
    }
}

/// A pattern prepared for repeated searching.
#[derive(Debug, Clone)]
pub struct Matcher {
    graph: Graph,
    adjacency: Adjacency,
    kind: Kind,
    full: Plan,
    /// Plans with a pattern edge `(p, q)` placed first, one per directed
    /// edge class that needs trying.
    through: Vec<((usize, usize), Plan)>,
}

impl Matcher {
    pub fn new(spec: &PatternSpec) -> Matcher {
        let graph = make_pattern_graph(spec);
        let kind = if graph.edge_count() == 0 {
            Kind::Edgeless
        } else {
            match spec {
                PatternSpec::Star(n) => Kind::Star(*n),
                PatternSpec::CompleteBipartite(m, n) => Kind::CompleteBipartite(*m, *n),
                _ => Kind::Generic,
            }
        };
        let adjacency = graph.adjacency();
        let full = Plan::new(&adjacency, &[]);
        // Directed pattern edges up to the obvious symmetries.
        let directed: Vec<(usize, usize)> = match spec {
            PatternSpec::Cycle(_) => vec![(0, 1)],
            PatternSpec::Path(_) => graph.edges().to_vec(),
            _ => graph
                .edges()
                .iter()
                .flat_map(|&(p, q)| [(p, q), (q, p)])
                .collect(),
        };
        let through = directed
            .into_iter()
            .map(|(p, q)| ((p, q), Plan::new(&adjacency, &[p, q])))
            .collect();
        Matcher {
            graph,
            adjacency,
            kind,
            full,
            through,
        }
    }

    pub fn pattern(&self) -> &Graph {
        &self.graph
    }

    /// Some copy of the pattern in `host`.
    pub fn find(&self, host: &Adjacency) -> Option<Embedding> {
        if self.graph.vertex_count() > host.vertex_count() {
            return None;
        }
        match self.kind {
            Kind::Edgeless => Some(Embedding {
                map: (0..self.graph.vertex_count()).collect(),
            }),
            Kind::Star(n) => (0..host.vertex_count()).find_map(|c| star_at(host, c, n, None)),
            Kind::CompleteBipartite(m, n) => complete_bipartite_anywhere(host, m, n),
            Kind::Generic => {
                let mut state = State::new(self.graph.vertex_count(), host.vertex_count());
                let found = self.extend(host, &self.full, 0, &mut state);
                found.then_some(Embedding { map: state.map })
            }
        }
    }

    /// Some copy of the pattern in `host` that uses the host edge `uv`
    /// (which must be present in `host`).
    pub fn find_through(&self, host: &Adjacency, u: usize, v: usize) -> Option<Embedding> {
        if self.graph.vertex_count() > host.vertex_count() {
            return None;
        }
        match self.kind {
            Kind::Edgeless => None,
            Kind::Star(n) => star_at(host, u, n, Some(v)).or_else(|| star_at(host, v, n, Some(u))),
            Kind::CompleteBipartite(m, n) => complete_bipartite_through(host, m, n, u, v)
                .or_else(|| complete_bipartite_through(host, m, n, v, u)),
            Kind::Generic => {
                for ((p, q), plan) in &self.through {
                    let mut state = State::new(self.graph.vertex_count(), host.vertex_count());
                    state.assign(*p, u);
                    state.assign(*q, v);
                    if self.extend(host, plan, 2, &mut state) {
                        return Some(Embedding { map: state.map });
                    }
                }
                None
            }
        }
    }

    fn extend(&self, host: &Adjacency, plan: &Plan, pos: usize, state: &mut State) -> bool {
        if pos == plan.order.len() {
            return true;
        }
        let x = plan.order[pos];
        let need = self.adjacency.degree(x);
        let fits = |state: &State, c: usize| {
            !state.used[c]
                && host.degree(c) >= need
                && plan.back[pos]
                    .iter()
                    .all(|&w| host.adjacent(c, state.map[w]))
        };
        match plan.anchor[pos] {
            Some(a) => {
                let nbrs = host.neighbors(state.map[a]);
                for (i, &c) in nbrs.iter().enumerate() {
                    if nbrs[..i].contains(&c) || !fits(state, c) {
                        continue;
                    }
                    state.assign(x, c);
                    if self.extend(host, plan, pos + 1, state) {
                        return true;
                    }
                    state.release(x);
                }
            }
            None => {
                for c in 0..host.vertex_count() {
                    if !fits(state, c) {
                        continue;
                    }
                    state.assign(x, c);
                    if self.extend(host, plan, pos + 1, state) {
                        return true;
                    }
                    state.release(x);
                }
            }
        }
        false
    }
}

struct State {
    map: Vec<usize>,
    used: Vec<bool>,
}

impl State {
    fn new(pattern: usize, host: usize) -> State {
        State {
            map: vec![usize::MAX; pattern],
            used: vec![false; host],
        }
    }

    fn assign(&mut self, x: usize, c: usize) {
        self.map[x] = c;
        self.used[c] = true;
    }

    fn release(&mut self, x: usize) {
        self.used[self.map[x]] = false;
        self.map[x] = usize::MAX;
    }
}

/// Star with `leaves` leaves centred at `center`, using `must` as a leaf
/// when given.
fn star_at(
    host: &Adjacency,
    center: usize,
    leaves: usize,
    must: Option<usize>,
) -> Option<Embedding> {
    if host.degree(center) < leaves {
        return None;
    }
    let distinct = host.distinct_neighbors(center);
    if distinct.len() < leaves {
        return None;
    }
    let mut map = vec![center];
    if let Some(m) = must {
        map.push(m);
    }
    map.extend(
        distinct
            .into_iter()
            .filter(|&w| Some(w) != must)
            .take(leaves + 1 - map.len()),
    );
    Some(Embedding { map })
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    // both sorted
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Extends `chosen` by `remaining` more vertices from `pool` (ascending,
/// from index `start`) while the common neighbourhood keeps `n` vertices.
fn grow_side(
    host: &Adjacency,
    pool: &[usize],
    start: usize,
    remaining: usize,
    n: usize,
    chosen: &mut Vec<usize>,
    common: &[usize],
) -> Option<Vec<usize>> {
    if remaining == 0 {
        return Some(common.to_vec());
    }
    for i in start..pool.len() {
        let c = pool[i];
        let next = intersect(common, &host.distinct_neighbors(c));
        if next.len() < n {
            continue;
        }
        chosen.push(c);
        if let Some(found) = grow_side(host, pool, i + 1, remaining - 1, n, chosen, &next) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

fn bipartite_embedding(a_side: &[usize], b_side: &[usize], n: usize) -> Embedding {
    let mut map = a_side.to_vec();
    map.extend_from_slice(&b_side[..n]);
    Embedding { map }
}

fn complete_bipartite_anywhere(host: &Adjacency, m: usize, n: usize) -> Option<Embedding> {
    let all: Vec<usize> = (0..host.vertex_count())
        .filter(|&v| host.degree(v) >= n)
        .collect();
    for (i, &first) in all.iter().enumerate() {
        let common = host.distinct_neighbors(first);
        if common.len() < n {
            continue;
        }
        let mut chosen = vec![first];
        if let Some(b) = grow_side(host, &all, i + 1, m - 1, n, &mut chosen, &common) {
            return Some(bipartite_embedding(&chosen, &b, n));
        }
    }
    None
}

/// `K_{m,n}` with `a` on the m-side and `b` on the n-side.
fn complete_bipartite_through(
    host: &Adjacency,
    m: usize,
    n: usize,
    a: usize,
    b: usize,
) -> Option<Embedding> {
    let common = host.distinct_neighbors(a);
    if common.len() < n {
        return None;
    }
    // The other m-side vertices are neighbours of b.
    let pool: Vec<usize> = host
        .distinct_neighbors(b)
        .into_iter()
        .filter(|&x| x != a && host.degree(x) >= n)
        .collect();
    let mut chosen = vec![a];
    let b_side = grow_side(host, &pool, 0, m - 1, n, &mut chosen, &common)?;
    // Put b first on the n-side so the copy visibly uses edge ab.
    let mut ordered = vec![b];
    ordered.extend(b_side.into_iter().filter(|&x| x != b));
    Some(bipartite_embedding(&chosen, &ordered, n))
}

/// A color and a copy of the pattern inside that color class, or `None`
/// when every class avoids the pattern.
pub fn find_monochromatic(
    h: &Graph,
    col: &EdgeColoring,
    pat: &PatternSpec,
) -> Option<(usize, Embedding)> {
    find_monochromatic_with(h, col, &Matcher::new(pat))
}

pub fn find_monochromatic_with(
    h: &Graph,
    col: &EdgeColoring,
    matcher: &Matcher,
) -> Option<(usize, Embedding)> {
    let mut classes = vec![Adjacency::new(h.vertex_count()); col.colors()];
    for (e, &(u, v)) in h.edges().iter().enumerate() {
        classes[col.color(e)].push_edge(u, v);
    }
    classes
        .iter()
        .enumerate()
        .find_map(|(c, adj)| matcher.find(adj).map(|emb| (c, emb)))
}
