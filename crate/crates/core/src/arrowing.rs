//! Deciding `H →s G`: does every `s`-coloring of the edges of `H` contain a
//! monochromatic copy of `G`?
//!
//! [`decide_arrowing`] colors edges one at a time in a fixed order and
//! backtracks as soon as the newest edge completes a monochromatic copy. Only
//! copies through that newest edge are looked for: every monochromatic copy
//! in a full coloring has a last-colored edge, and the check made when that
//! edge was colored would have caught it. Colors are interchangeable, so
//! color `c + 1` is only offered once color `c` has been used, which leaves
//! one representative per permutation class of colorings.
//!
//! [`brute_force_arrowing`] enumerates every coloring and runs a full search
//! on each; it shares nothing with the decider beyond the pattern matcher's
//! full-search path and serves as its oracle.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{check_bipartition, Adjacency, EdgeColoring, Graph};
use crate::pattern::PatternSpec;
use crate::patterns::{find_monochromatic_with, Matcher};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
}

impl SearchBudget {
    pub fn new(max_nodes: u64, max_seconds: f64) -> Self {
        assert!(
            max_nodes > 0 && max_seconds > 0.0,
            "budgets must be positive"
        );
        SearchBudget {
            max_nodes,
            max_seconds,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(50_000_000, 600.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArrowVerdict {
    /// Every coloring contains a monochromatic copy; the search tree was
    /// exhausted after visiting `nodes_explored` partial colorings.
    Arrows { nodes_explored: u64 },
    /// `certificate` has no monochromatic copy.
    NotArrows { certificate: EdgeColoring },
    /// The budget ran out first.
    Unknown { budget_spent: u64 },
}

impl ArrowVerdict {
    pub fn arrows(&self) -> Option<bool> {
        match self {
            ArrowVerdict::Arrows { .. } => Some(true),
            ArrowVerdict::NotArrows { .. } => Some(false),
            ArrowVerdict::Unknown { .. } => None,
        }
    }

    /// Process exit code: 0 arrows, 1 does not arrow, 2 unknown.
    pub fn exit_code(&self) -> i32 {
        match self {
            ArrowVerdict::Arrows { .. } => 0,
            ArrowVerdict::NotArrows { .. } => 1,
            ArrowVerdict::Unknown { .. } => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrowError {
    #[error("oracle would enumerate {colors}^{edges} colorings, above the 10^7 limit")]
    OracleTooLarge { colors: usize, edges: usize },
    #[error("color count must be positive")]
    NoColors,
}

/// True iff no color class of `col` contains the pattern.
pub fn verify_coloring(h: &Graph, col: &EdgeColoring, pat: &PatternSpec) -> bool {
    find_monochromatic_with(h, col, &Matcher::new(pat)).is_none()
}

/// Edge indices by descending endpoint-degree sum, ties by index.
pub fn branching_order(h: &Graph) -> Vec<usize> {
    let deg = h.degrees();
    let mut order: Vec<usize> = (0..h.edge_count()).collect();
    order.sort_by_key(|&e| {
        let (u, v) = h.edge(e);
        (std::cmp::Reverse(deg[u] + deg[v]), e)
    });
    order
}

struct Shared {
    nodes: AtomicU64,
    max_nodes: u64,
    deadline: Instant,
    out_of_budget: AtomicBool,
    /// Lowest prefix index that has produced a certificate.
    found: AtomicUsize,
    deterministic: bool,
}

impl Shared {
    fn cancelled(&self, prefix: usize) -> bool {
        if self.out_of_budget.load(Ordering::Relaxed) {
            return true;
        }
        let found = self.found.load(Ordering::Relaxed);
        if self.deterministic {
            found < prefix
        } else {
            found != usize::MAX
        }
    }
}

enum Outcome {
    Found(Vec<usize>),
    Exhausted,
    Stopped,
}

/// A partial coloring with one adjacency structure per color class.
struct Partial<'a> {
    h: &'a Graph,
    matcher: &'a Matcher,
    order: &'a [usize],
    colors: usize,
    classes: Vec<Adjacency>,
    assignment: Vec<usize>,
}

impl<'a> Partial<'a> {
    fn new(h: &'a Graph, matcher: &'a Matcher, order: &'a [usize], colors: usize) -> Self {
        Partial {
            h,
            matcher,
            order,
            colors,
            classes: vec![Adjacency::new(h.vertex_count()); colors],
            assignment: vec![usize::MAX; h.edge_count()],
        }
    }

    /// Colors the edge at position `pos` of the order; false if that closes
    /// a monochromatic copy (the assignment is then undone).
    fn push(&mut self, pos: usize, c: usize) -> bool {
        let e = self.order[pos];
        let (u, v) = self.h.edge(e);
        self.classes[c].push_edge(u, v);
        self.assignment[e] = c;
        if self.matcher.find_through(&self.classes[c], u, v).is_some() {
            self.pop(pos);
            return false;
        }
        true
    }

    fn pop(&mut self, pos: usize) {
        let e = self.order[pos];
        let (u, v) = self.h.edge(e);
        let c = self.assignment[e];
        self.classes[c].pop_edge(u, v);
        self.assignment[e] = usize::MAX;
    }

    /// Colors open to position `pos` given the highest color used so far.
    fn offered(&self, highest: Option<usize>) -> usize {
        highest.map_or(1, |h| (h + 2).min(self.colors))
    }

    fn dfs(
        &mut self,
        pos: usize,
        highest: Option<usize>,
        shared: &Shared,
        prefix: usize,
    ) -> Outcome {
        if pos == self.order.len() {
            return Outcome::Found(self.assignment.clone());
        }
        for c in 0..self.offered(highest) {
            let n = shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
            if n > shared.max_nodes || (n.is_multiple_of(1024) && Instant::now() > shared.deadline)
            {
                shared.out_of_budget.store(true, Ordering::Relaxed);
            }
            if shared.cancelled(prefix) {
                return Outcome::Stopped;
            }
            if !self.push(pos, c) {
                continue;
            }
            let next = Some(highest.map_or(c, |h| h.max(c)));
            let out = self.dfs(pos + 1, next, shared, prefix);
            self.pop(pos);
            if !matches!(out, Outcome::Exhausted) {
                return out;
            }
        }
        Outcome::Exhausted
    }
}

/// Canonical colorings of the first `depth` edges of the order that are
/// still free of monochromatic copies, in lexicographic order.
fn prefixes(partial: &mut Partial<'_>, depth: usize) -> Vec<(Vec<usize>, Option<usize>)> {
    fn rec(
        partial: &mut Partial<'_>,
        pos: usize,
        depth: usize,
        highest: Option<usize>,
        colors: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Option<usize>)>,
    ) {
        if pos == depth {
            out.push((colors.clone(), highest));
            return;
        }
        for c in 0..partial.offered(highest) {
            if partial.push(pos, c) {
                colors.push(c);
                rec(
                    partial,
                    pos + 1,
                    depth,
                    Some(highest.map_or(c, |h| h.max(c))),
                    colors,
                    out,
                );
                colors.pop();
                partial.pop(pos);
            }
        }
    }
    let mut out = Vec::new();
    rec(partial, 0, depth, None, &mut Vec::new(), &mut out);
    out
}

fn trivial_verdict(h: &Graph, matcher: &Matcher, colors: usize) -> Option<ArrowVerdict> {
    if matcher.pattern().edge_count() == 0 {
        // Every color class contains an edgeless pattern that fits.
        return Some(if matcher.pattern().vertex_count() <= h.vertex_count() {
            ArrowVerdict::Arrows { nodes_explored: 0 }
        } else {
            ArrowVerdict::NotArrows {
                certificate: EdgeColoring::monochromatic(colors, h.edge_count()),
            }
        });
    }
    None
}

/// Renumbers colors in order of first appearance along edge indices.
fn normalize(assignment: &mut [usize], colors: usize) {
    let mut relabel = vec![usize::MAX; colors];
    let mut next = 0;
    for c in assignment.iter_mut() {
        if relabel[*c] == usize::MAX {
            relabel[*c] = next;
            next += 1;
        }
        *c = relabel[*c];
    }
}

fn certify(
    h: &Graph,
    pat: &PatternSpec,
    matcher: &Matcher,
    colors: usize,
    mut assignment: Vec<usize>,
) -> ArrowVerdict {
    normalize(&mut assignment, colors);
    let certificate =
        EdgeColoring::new(colors, assignment).expect("search assigns every edge a valid color");
    assert!(
        find_monochromatic_with(h, &certificate, matcher).is_none(),
        "search produced a coloring with a monochromatic {pat}"
    );
    ArrowVerdict::NotArrows { certificate }
}

/// Single-threaded backtracking decision of `h →s pat`. A certificate,
/// when found, is the first canonical coloring in branching order, with
/// colors renumbered by first appearance along edge indices.
pub fn decide_arrowing(
    h: &Graph,
    pat: &PatternSpec,
    colors: usize,
    budget: SearchBudget,
) -> ArrowVerdict {
    decide(h, pat, colors, budget, false, true)
}

/// Like [`decide_arrowing`] but splits the search tree across the rayon
/// pool. In deterministic mode the certificate is the same one the
/// sequential search returns; otherwise the first one found wins.
pub fn decide_arrowing_parallel(
    h: &Graph,
    pat: &PatternSpec,
    colors: usize,
    budget: SearchBudget,
    deterministic: bool,
) -> ArrowVerdict {
    decide(h, pat, colors, budget, true, deterministic)
}

fn decide(
    h: &Graph,
    pat: &PatternSpec,
    colors: usize,
    budget: SearchBudget,
    parallel: bool,
    deterministic: bool,
) -> ArrowVerdict {
    assert!(colors >= 1, "at least one color is required");
    let matcher = Matcher::new(pat);
    if let Some(v) = trivial_verdict(h, &matcher, colors) {
        return v;
    }
    let order = branching_order(h);
    let shared = Shared {
        nodes: AtomicU64::new(0),
        max_nodes: budget.max_nodes,
        deadline: Instant::now() + Duration::from_secs_f64(budget.max_seconds),
        out_of_budget: AtomicBool::new(false),
        found: AtomicUsize::new(usize::MAX),
        deterministic,
    };

    let mut root = Partial::new(h, &matcher, &order, colors);
    let starts = if parallel {
        let target = 8 * rayon::current_num_threads();
        let mut depth = 0;
        let mut starts = vec![(Vec::new(), None)];
        while depth < order.len() && starts.len() < target && !starts.is_empty() {
            depth = (depth + 2).min(order.len());
            starts = prefixes(&mut root, depth);
        }
        starts
    } else {
        vec![(Vec::new(), None)]
    };
    if starts.is_empty() {
        return ArrowVerdict::Arrows {
            nodes_explored: shared.nodes.load(Ordering::Relaxed),
        };
    }

    let run = |(index, (prefix, highest)): (usize, &(Vec<usize>, Option<usize>))| {
        let mut partial = Partial::new(h, &matcher, &order, colors);
        for (pos, &c) in prefix.iter().enumerate() {
            let fine = partial.push(pos, c);
            debug_assert!(fine, "prefixes are copy-free");
        }
        let out = partial.dfs(prefix.len(), *highest, &shared, index);
        if matches!(out, Outcome::Found(_)) {
            shared.found.fetch_min(index, Ordering::Relaxed);
        }
        out
    };
    let outcomes: Vec<Outcome> = if parallel {
        starts.par_iter().enumerate().map(run).collect()
    } else {
        starts.iter().enumerate().map(run).collect()
    };

    let nodes = shared.nodes.load(Ordering::Relaxed);
    let mut exhausted = true;
    for out in outcomes {
        match out {
            Outcome::Found(assignment) => return certify(h, pat, &matcher, colors, assignment),
            Outcome::Exhausted => {}
            Outcome::Stopped => exhausted = false,
        }
    }
    if exhausted {
        ArrowVerdict::Arrows {
            nodes_explored: nodes,
        }
    } else {
        ArrowVerdict::Unknown {
            budget_spent: nodes,
        }
    }
}

const ORACLE_LIMIT: u128 = 10_000_000;

/// Enumerates all `colors^|E|` colorings; refuses above 10^7. The first
/// coloring (in counting order, edge 0 least significant) without a
/// monochromatic copy is the certificate.
pub fn brute_force_arrowing(
    h: &Graph,
    pat: &PatternSpec,
    colors: usize,
) -> Result<ArrowVerdict, ArrowError> {
    if colors == 0 {
        return Err(ArrowError::NoColors);
    }
    let edges = h.edge_count();
    let total = (colors as u128)
        .checked_pow(edges as u32)
        .filter(|&t| t <= ORACLE_LIMIT);
    let Some(total) = total else {
        return Err(ArrowError::OracleTooLarge { colors, edges });
    };
    let matcher = Matcher::new(pat);
    let mut assignment = vec![0usize; edges];
    for count in 0..total as u64 {
        let col =
            EdgeColoring::new(colors, assignment.clone()).expect("digits below the color count");
        if find_monochromatic_with(h, &col, &matcher).is_none() {
            return Ok(ArrowVerdict::NotArrows { certificate: col });
        }
        // increment the base-`colors` counter
        for digit in assignment.iter_mut() {
            *digit += 1;
            if *digit < colors {
                break;
            }
            *digit = 0;
        }
        if count + 1 == total as u64 {
            return Ok(ArrowVerdict::Arrows {
                nodes_explored: total as u64,
            });
        }
    }
    unreachable!("the loop returns on its last iteration")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperBoundKind {
    /// Some host in the scan is not bipartite: bounds `r_Δ` only.
    DegreeRamsey,
    /// Every host in the scan is bipartite: bounds the bipartite variant.
    BipartiteDegreeRamsey,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    /// Maximum degree of the best arrowing host; an upper bound only.
    pub max_degree: usize,
    pub host_index: usize,
    pub kind: UpperBoundKind,
    /// Hosts whose search ran out of budget.
    pub undecided: Vec<usize>,
}

/// Among hosts that arrow the pattern, the one of least maximum degree
/// (ties: fewer vertices, then earlier in the list).
pub fn host_upper_bound_scan(
    pat: &PatternSpec,
    colors: usize,
    hosts: &[Graph],
    budget: SearchBudget,
) -> Option<ScanResult> {
    let kind = if hosts.iter().all(|h| check_bipartition(h).is_some()) {
        UpperBoundKind::BipartiteDegreeRamsey
    } else {
        UpperBoundKind::DegreeRamsey
    };
    let mut best: Option<(usize, usize, usize)> = None;
    let mut undecided = Vec::new();
    for (i, h) in hosts.iter().enumerate() {
        match decide_arrowing(h, pat, colors, budget).arrows() {
            Some(true) => {
                let key = (h.max_degree(), h.vertex_count(), i);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
            Some(false) => {}
            None => undecided.push(i),
        }
    }
    best.map(|(max_degree, _, host_index)| ScanResult {
        max_degree,
        host_index,
        kind,
        undecided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::patterns::Matcher;

    fn budget() -> SearchBudget {
        SearchBudget::new(10_000_000, 60.0)
    }

    #[test]
    fn path_host_does_not_arrow_two_star() {
        let h = path(4);
        let v = decide_arrowing(&h, &PatternSpec::Star(2), 2, budget());
        match &v {
            ArrowVerdict::NotArrows { certificate } => {
                assert_eq!(certificate.assignment(), &[0, 1, 0]);
            }
            other => panic!("{other:?}"),
        }
        let oracle = brute_force_arrowing(&h, &PatternSpec::Star(2), 2).unwrap();
        assert_eq!(oracle.arrows(), Some(false));
    }

    #[test]
    fn star_formula_upper_direction() {
        for (s, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let h = star(s * (n - 1) + 1);
            let v = decide_arrowing(&h, &PatternSpec::Star(n), s, budget());
            assert_eq!(v.arrows(), Some(true), "s={s} n={n}");
            let smaller = star(s * (n - 1));
            assert_eq!(
                decide_arrowing(&smaller, &PatternSpec::Star(n), s, budget()).arrows(),
                Some(false)
            );
        }
    }

    #[test]
    fn one_color_means_containment() {
        let h = petersen();
        for (spec, contained) in [
            (PatternSpec::Cycle(5), true),
            (PatternSpec::Cycle(4), false),
            (PatternSpec::Path(10), true),
            (PatternSpec::Star(3), true),
            (PatternSpec::Star(4), false),
        ] {
            let v = decide_arrowing(&h, &spec, 1, budget());
            assert_eq!(v.arrows(), Some(contained), "{spec}");
            let direct = Matcher::new(&spec).find(&h.adjacency()).is_some();
            assert_eq!(direct, contained);
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            brute_force_arrowing(&cycle(4), &PatternSpec::Star(2), 2)
                .unwrap()
                .arrows(),
            Some(false)
        );
        assert_eq!(
            brute_force_arrowing(&star(3), &PatternSpec::Star(2), 2)
                .unwrap()
                .arrows(),
            Some(true)
        );
        assert_eq!(
            brute_force_arrowing(&path(2), &PatternSpec::Star(1), 1)
                .unwrap()
                .arrows(),
            Some(true)
        );
        assert!(matches!(
            brute_force_arrowing(&complete(8), &PatternSpec::Star(2), 2),
            Err(ArrowError::OracleTooLarge { .. })
        ));
    }

    #[test]
    fn verify_coloring_examples() {
        let alt = EdgeColoring::new(2, vec![0, 1, 0, 1]).unwrap();
        assert!(verify_coloring(&cycle(4), &alt, &PatternSpec::Star(2)));
        let any = EdgeColoring::new(2, vec![0, 1, 0, 1, 0]).unwrap();
        assert!(!verify_coloring(&star(5), &any, &PatternSpec::Star(3)));
        let mono = EdgeColoring::monochromatic(1, 2);
        assert!(verify_coloring(&path(3), &mono, &PatternSpec::Path(4)));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let h = complete_bipartite(3, 3);
        let tiny = SearchBudget::new(3, 60.0);
        let v = decide_arrowing(&h, &PatternSpec::Cycle(4), 2, tiny);
        assert!(matches!(v, ArrowVerdict::Unknown { .. }));
        assert_eq!(v.exit_code(), 2);
    }

    #[test]
    fn edgeless_patterns() {
        let h = path(3);
        assert_eq!(
            decide_arrowing(&h, &PatternSpec::Path(1), 3, budget()).arrows(),
            Some(true)
        );
        assert_eq!(
            decide_arrowing(&h, &PatternSpec::Path(2), 3, budget()).arrows(),
            Some(true)
        );
        let five = PatternSpec::graph(Graph::empty(5)).unwrap();
        assert_eq!(
            decide_arrowing(&h, &five, 2, budget()).arrows(),
            Some(false)
        );
        assert_eq!(
            decide_arrowing(&Graph::empty(6), &five, 2, budget()).arrows(),
            Some(true)
        );
        let empty = Graph::empty(4);
        assert_eq!(
            decide_arrowing(&empty, &PatternSpec::Path(2), 2, budget()).arrows(),
            Some(false)
        );
    }

    #[test]
    fn parallel_deterministic_matches_sequential() {
        let cases = [
            (complete(5), PatternSpec::Cycle(4), 2),
            (complete(6), PatternSpec::Cycle(3), 2),
            (complete_bipartite(3, 4), PatternSpec::Star(3), 2),
            (petersen(), PatternSpec::Path(4), 2),
        ];
        for (h, spec, s) in cases {
            let seq = decide_arrowing(&h, &spec, s, budget());
            let par = decide_arrowing_parallel(&h, &spec, s, budget(), true);
            match (&seq, &par) {
                (
                    ArrowVerdict::NotArrows { certificate: a },
                    ArrowVerdict::NotArrows { certificate: b },
                ) => {
                    assert_eq!(a, b)
                }
                (ArrowVerdict::Arrows { .. }, ArrowVerdict::Arrows { .. }) => {}
                other => panic!("{spec}: {other:?}"),
            }
            let loose = decide_arrowing_parallel(&h, &spec, s, budget(), false);
            assert_eq!(loose.arrows(), seq.arrows());
        }
    }

    #[test]
    fn classic_ramsey_triangle() {
        // K6 → K3 with two colors, K5 does not.
        assert_eq!(
            decide_arrowing(&complete(6), &PatternSpec::Cycle(3), 2, budget()).arrows(),
            Some(true)
        );
        assert_eq!(
            decide_arrowing(&complete(5), &PatternSpec::Cycle(3), 2, budget()).arrows(),
            Some(false)
        );
    }

    #[test]
    fn scan_picks_least_degree() {
        let hosts = vec![star(2), star(3)];
        let r = host_upper_bound_scan(&PatternSpec::Star(2), 2, &hosts, budget()).unwrap();
        assert_eq!((r.max_degree, r.host_index), (3, 1));
        assert_eq!(r.kind, UpperBoundKind::BipartiteDegreeRamsey);

        let r = host_upper_bound_scan(&PatternSpec::Path(5), 1, &[path(5)], budget()).unwrap();
        assert_eq!(r.max_degree, 2);

        assert_eq!(
            host_upper_bound_scan(&PatternSpec::Path(5), 2, &[path(3), path(4)], budget()),
            None
        );
        let mixed = vec![complete(6), complete(3)];
        let r = host_upper_bound_scan(&PatternSpec::Cycle(3), 2, &mixed, budget()).unwrap();
        assert_eq!((r.max_degree, r.kind), (5, UpperBoundKind::DegreeRamsey));
    }
}
