//! Undirected multigraphs with an optional bipartition, edge colorings and
//! the structural queries every other module leans on.

use std::collections::VecDeque;
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {index} joins vertex {vertex} to itself")]
    Loop { index: usize, vertex: usize },
    #[error("edge {index} has endpoint {vertex} but the graph has {vertex_count} vertices")]
    EndpointOutOfRange {
        index: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("bipartition split {split} exceeds vertex count {vertex_count}")]
    SplitOutOfRange { split: usize, vertex_count: usize },
    #[error("edge {index} ({u}, {v}) lies inside one side of the bipartition")]
    BipartitionViolated { index: usize, u: usize, v: usize },
    #[error("graph has no vertices")]
    EmptyVertexSet,
    #[error("graph has no edges")]
    NoEdges,
    #[error("coloring has {got} entries but the host has {expected} edges")]
    ColoringLength { expected: usize, got: usize },
    #[error("edge {index} has color {color} outside [0, {colors})")]
    ColorOutOfRange {
        index: usize,
        color: usize,
        colors: usize,
    },
    #[error("color count must be positive")]
    NoColors,
}

/// An undirected multigraph on vertices `0..vertex_count`.
///
/// The edge list order is significant: colorings, certificates and the
/// arrowing search all address edges by their position in it. A declared
/// bipartition is always a split point `k`: side A is `0..k`, side B is
/// `k..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    bipartition: Option<usize>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for (index, &(u, v)) in edges.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= vertex_count {
                    return Err(GraphError::EndpointOutOfRange {
                        index,
                        vertex,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::Loop { index, vertex: u });
            }
        }
        Ok(Graph {
            vertex_count,
            edges,
            bipartition: None,
        })
    }

    /// Graph with no edges.
    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            vertex_count,
            edges: Vec::new(),
            bipartition: None,
        }
    }

    /// Declares side A as `0..split`. Every edge must cross the split.
    pub fn with_bipartition(mut self, split: usize) -> Result<Self, GraphError> {
        if split > self.vertex_count {
            return Err(GraphError::SplitOutOfRange {
                split,
                vertex_count: self.vertex_count,
            });
        }
        for (index, &(u, v)) in self.edges.iter().enumerate() {
            if (u < split) == (v < split) {
                return Err(GraphError::BipartitionViolated { index, u, v });
            }
        }
        self.bipartition = Some(split);
        Ok(self)
    }

    pub fn without_bipartition(mut self) -> Self {
        self.bipartition = None;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    /// Split point of the declared bipartition, if any.
    pub fn bipartition(&self) -> Option<usize> {
        self.bipartition
    }

    /// Degrees counted with edge multiplicity.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn adjacency(&self) -> Adjacency {
        Adjacency::from_graph(self)
    }

    /// No two edges join the same pair.
    pub fn is_simple(&self) -> bool {
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        pairs.windows(2).all(|w| w[0] != w[1])
    }

    pub fn component_count(&self) -> usize {
        let mut dsu = DisjointSets::new(self.vertex_count);
        let mut count = self.vertex_count;
        for &(u, v) in &self.edges {
            if dsu.union(u, v) {
                count -= 1;
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.component_count() == 1
    }

    /// Connected, simple and with exactly `|V| - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.vertex_count > 0 && self.edges.len() + 1 == self.vertex_count && self.is_connected()
    }

    /// Spanning subgraph keeping the listed edges in the given order.
    /// The declared bipartition carries over.
    pub fn spanning_subgraph(&self, edge_indices: &[usize]) -> Graph {
        Graph {
            vertex_count: self.vertex_count,
            edges: edge_indices.iter().map(|&i| self.edges[i]).collect(),
            bipartition: self.bipartition,
        }
    }

    /// Induced subgraph on `keep`, relabelled to `0..keep.len()` in the order
    /// given. Returns the subgraph and, for each new vertex, its old label.
    pub fn induced_subgraph(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut relabel = vec![usize::MAX; self.vertex_count];
        for (new, &old) in keep.iter().enumerate() {
            relabel[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| relabel[u] != usize::MAX && relabel[v] != usize::MAX)
            .map(|&(u, v)| (relabel[u], relabel[v]))
            .collect();
        (
            Graph {
                vertex_count: keep.len(),
                edges,
                bipartition: None,
            },
            keep.to_vec(),
        )
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::serialize_graph(self))
    }
}

/// Neighbour lists with multiplicity. Mutable so that search code can push
/// and pop edges as a coloring is built up.
#[derive(Debug, Clone, Default)]
pub struct Adjacency {
    nbrs: Vec<Vec<usize>>,
}

impl Adjacency {
    pub fn new(vertex_count: usize) -> Self {
        Adjacency {
            nbrs: vec![Vec::new(); vertex_count],
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut adj = Adjacency::new(g.vertex_count());
        for &(u, v) in g.edges() {
            adj.push_edge(u, v);
        }
        adj
    }

    pub fn vertex_count(&self) -> usize {
        self.nbrs.len()
    }

    pub fn push_edge(&mut self, u: usize, v: usize) {
        self.nbrs[u].push(v);
        self.nbrs[v].push(u);
    }

    /// Undoes the most recent `push_edge(u, v)`.
    pub fn pop_edge(&mut self, u: usize, v: usize) {
        let a = self.nbrs[u].pop();
        let b = self.nbrs[v].pop();
        debug_assert_eq!((a, b), (Some(v), Some(u)));
    }

    /// Neighbours of `v`, repeated once per parallel edge.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.nbrs[u].len() <= self.nbrs[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.nbrs[a].contains(&b)
    }

    /// Sorted neighbour set without repetition.
    pub fn distinct_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = self.nbrs[v].clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn distinct_degree(&self, v: usize) -> usize {
        self.distinct_neighbors(v).len()
    }
}

/// Length of a shortest cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= bound,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

/// Shortest cycle length via breadth-first search from every vertex.
/// Two parallel edges form a cycle of length 2.
pub fn girth(g: &Graph) -> Girth {
    let n = g.vertex_count();
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push((v, i));
        incident[v].push((u, i));
    }
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        let mut touched = vec![root];
        dist[root] = 0;
        queue.push_back(root);
        'bfs: while let Some(x) = queue.pop_front() {
            if 2 * dist[x] + 1 >= best {
                break;
            }
            for &(y, e) in &incident[x] {
                if e == parent_edge[x] {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent_edge[y] = e;
                    touched.push(y);
                    queue.push_back(y);
                } else {
                    best = best.min(dist[x] + dist[y] + 1);
                    if best <= 2 {
                        break 'bfs;
                    }
                }
            }
        }
        queue.clear();
        for v in touched {
            dist[v] = usize::MAX;
            parent_edge[v] = usize::MAX;
        }
        if best == 2 {
            break;
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub min_degree: usize,
    pub max_degree: usize,
    /// `2|E| / |V|`, kept exact.
    pub average_degree: Ratio<u64>,
}

pub fn degree_stats(g: &Graph) -> Result<DegreeStats, GraphError> {
    if g.vertex_count() == 0 {
        return Err(GraphError::EmptyVertexSet);
    }
    let deg = g.degrees();
    Ok(DegreeStats {
        min_degree: *deg.iter().min().unwrap(),
        max_degree: *deg.iter().max().unwrap(),
        average_degree: Ratio::new(2 * g.edge_count() as u64, g.vertex_count() as u64),
    })
}

/// An assignment of one of `colors` classes to every edge of a host.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    colors: usize,
    assignment: Vec<usize>,
}

impl EdgeColoring {
    pub fn new(colors: usize, assignment: Vec<usize>) -> Result<Self, GraphError> {
        if colors == 0 {
            return Err(GraphError::NoColors);
        }
        if let Some((index, &color)) = assignment.iter().enumerate().find(|(_, &c)| c >= colors) {
            return Err(GraphError::ColorOutOfRange {
                index,
                color,
                colors,
            });
        }
        Ok(EdgeColoring { colors, assignment })
    }

    /// Every edge gets color 0.
    pub fn monochromatic(colors: usize, edge_count: usize) -> Self {
        EdgeColoring {
            colors: colors.max(1),
            assignment: vec![0; edge_count],
        }
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn color(&self, edge: usize) -> usize {
        self.assignment[edge]
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn check_host(&self, h: &Graph) -> Result<(), GraphError> {
        if self.assignment.len() != h.edge_count() {
            return Err(GraphError::ColoringLength {
                expected: h.edge_count(),
                got: self.assignment.len(),
            });
        }
        Ok(())
    }

    /// Edge indices of each color class, in host edge order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.colors];
        for (i, &c) in self.assignment.iter().enumerate() {
            out[c].push(i);
        }
        out
    }
}

/// Spanning subgraph of `h` formed by the edges of color `c`.
pub fn color_class(h: &Graph, col: &EdgeColoring, c: usize) -> Result<Graph, GraphError> {
    col.check_host(h)?;
    if c >= col.colors() {
        return Err(GraphError::ColorOutOfRange {
            index: 0,
            color: c,
            colors: col.colors(),
        });
    }
    let keep: Vec<usize> = (0..h.edge_count()).filter(|&i| col.color(i) == c).collect();
    Ok(h.spanning_subgraph(&keep))
}

/// The two sides of a bipartite graph, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sides {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl Sides {
    pub fn side_of(&self, vertex_count: usize) -> Vec<bool> {
        let mut in_b = vec![false; vertex_count];
        for &v in &self.b {
            in_b[v] = true;
        }
        in_b
    }
}

/// A proper 2-coloring of the vertices, or `None` for non-bipartite graphs.
///
/// A declared bipartition is returned as is (it has already been checked
/// against every edge). Otherwise each component is 2-colored by BFS and the
/// side holding its lowest-index vertex goes to A.
pub fn check_bipartition(g: &Graph) -> Option<Sides> {
    let n = g.vertex_count();
    if let Some(split) = g.bipartition() {
        return Some(Sides {
            a: (0..split).collect(),
            b: (split..n).collect(),
        });
    }
    let adj = g.adjacency();
    let mut side = vec![u8::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            for &y in adj.neighbors(x) {
                if side[y] == u8::MAX {
                    side[y] = 1 - side[x];
                    queue.push_back(y);
                } else if side[y] == side[x] {
                    return None;
                }
            }
        }
    }
    let a = (0..n).filter(|&v| side[v] == 0).collect();
    let b = (0..n).filter(|&v| side[v] == 1).collect();
    Some(Sides { a, b })
}

/// True iff every edge of `g` joins `sides.a` to `sides.b` and the sides
/// partition the vertex set.
pub fn validate_bipartition(g: &Graph, sides: &Sides) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![0u8; n];
    for &v in sides.a.iter().chain(&sides.b) {
        if v >= n || seen[v] != 0 {
            return false;
        }
        seen[v] = 1;
    }
    if seen.contains(&0) {
        return false;
    }
    let in_b = sides.side_of(n);
    g.edges().iter().all(|&(u, v)| in_b[u] != in_b[v])
}

/// Injective map from pattern vertices to host vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Injective, in range, and every pattern edge lands on a host edge
    /// (as many parallel host edges as the pattern has copies of the pair).
    pub fn is_valid(&self, pattern: &Graph, host: &Graph) -> bool {
        if self.map.len() != pattern.vertex_count() {
            return false;
        }
        let mut used = vec![false; host.vertex_count()];
        for &x in &self.map {
            if x >= host.vertex_count() || used[x] {
                return false;
            }
            used[x] = true;
        }
        let mut need: std::collections::HashMap<(usize, usize), usize> = Default::default();
        for &(u, v) in pattern.edges() {
            let (a, b) = (self.map[u], self.map[v]);
            *need.entry((a.min(b), a.max(b))).or_default() += 1;
        }
        let mut have: std::collections::HashMap<(usize, usize), usize> = Default::default();
        for &(u, v) in host.edges() {
            let key = (u.min(v), u.max(v));
            if need.contains_key(&key) {
                *have.entry(key).or_default() += 1;
            }
        }
        need.iter()
            .all(|(k, &count)| have.get(k).copied().unwrap_or(0) >= count)
    }
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect()).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    pub fn complete_bipartite(m: usize, n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..m {
            for v in 0..n {
                edges.push((u, m + v));
            }
        }
        Graph::new(m + n, edges)
            .unwrap()
            .with_bipartition(m)
            .unwrap()
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(matches!(
            Graph::new(3, vec![(0, 0)]),
            Err(GraphError::Loop {
                index: 0,
                vertex: 0
            })
        ));
        assert!(matches!(
            Graph::new(2, vec![(0, 2)]),
            Err(GraphError::EndpointOutOfRange { .. })
        ));
    }

    #[test]
    fn bipartition_must_be_respected() {
        let g = Graph::new(4, vec![(0, 1)]).unwrap();
        assert!(matches!(
            g.with_bipartition(2),
            Err(GraphError::BipartitionViolated { index: 0, .. })
        ));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&cycle(6)), Girth::Finite(6));
        assert_eq!(girth(&complete_bipartite(3, 3)), Girth::Finite(4));
        assert_eq!(girth(&path(7)), Girth::Infinite);
        assert_eq!(girth(&star(5)), Girth::Infinite);
        assert_eq!(girth(&petersen()), Girth::Finite(5));
        assert_eq!(girth(&complete(4)), Girth::Finite(3));
        let multi = Graph::new(3, vec![(0, 1), (1, 2), (0, 1)]).unwrap();
        assert_eq!(girth(&multi), Girth::Finite(2));
        assert_eq!(girth(&Graph::empty(0)), Girth::Infinite);
    }

    #[test]
    fn degree_stats_examples() {
        let s = degree_stats(&star(4)).unwrap();
        assert_eq!((s.min_degree, s.max_degree), (1, 4));
        assert_eq!(s.average_degree, Ratio::new(8, 5));

        let c = degree_stats(&cycle(6)).unwrap();
        assert_eq!((c.min_degree, c.max_degree), (2, 2));
        assert_eq!(c.average_degree, Ratio::from_integer(2));

        // K4 plus a pendant vertex: 7 edges on 5 vertices.
        let mut edges = complete(4).edges().to_vec();
        edges.push((3, 4));
        let g = Graph::new(5, edges).unwrap();
        let d = degree_stats(&g).unwrap();
        assert_eq!((d.min_degree, d.max_degree), (1, 4));
        assert_eq!(d.average_degree, Ratio::new(14, 5));

        assert_eq!(
            degree_stats(&Graph::empty(0)),
            Err(GraphError::EmptyVertexSet)
        );
    }

    #[test]
    fn color_class_examples() {
        let c4 = cycle(4);
        let alt = EdgeColoring::new(2, vec![0, 1, 0, 1]).unwrap();
        let class = color_class(&c4, &alt, 0).unwrap();
        assert_eq!(class.edges(), &[(0, 1), (2, 3)]);
        assert_eq!(class.vertex_count(), 4);

        let mono = EdgeColoring::monochromatic(1, 4);
        assert_eq!(color_class(&c4, &mono, 0).unwrap(), c4);

        let k16 = star(6);
        let col = EdgeColoring::new(3, vec![0, 0, 1, 1, 2, 2]).unwrap();
        let class = color_class(&k16, &col, 2).unwrap();
        assert_eq!(class.vertex_count(), 7);
        assert_eq!(class.edges(), &[(0, 5), (0, 6)]);
        let deg = class.degrees();
        assert_eq!(deg.iter().filter(|&&d| d == 0).count(), 4);

        assert!(color_class(&c4, &alt, 2).is_err());
    }

    #[test]
    fn color_classes_partition_edges() {
        let g = complete(5);
        let col = EdgeColoring::new(3, (0..10).map(|i| i % 3).collect()).unwrap();
        let total: usize = (0..3)
            .map(|c| color_class(&g, &col, c).unwrap().edge_count())
            .sum();
        assert_eq!(total, g.edge_count());
    }

    #[test]
    fn bipartition_checks() {
        assert_eq!(check_bipartition(&cycle(5)), None);
        let sides = check_bipartition(&cycle(6)).unwrap();
        assert_eq!(sides.a, vec![0, 2, 4]);
        assert_eq!(sides.b, vec![1, 3, 5]);
        assert!(validate_bipartition(&cycle(6), &sides));

        let k33 = complete_bipartite(3, 3);
        assert_eq!(check_bipartition(&k33).unwrap().a, vec![0, 1, 2]);

        // two components, each gets its lowest vertex on side A
        let g = Graph::new(4, vec![(1, 0), (3, 2)]).unwrap();
        let s = check_bipartition(&g).unwrap();
        assert_eq!(s.a, vec![0, 2]);
    }

    #[test]
    fn embedding_validity_counts_multiplicity() {
        let host = Graph::new(2, vec![(0, 1)]).unwrap();
        let pat = Graph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert!(!Embedding { map: vec![0, 1] }.is_valid(&pat, &host));
        let single = Graph::new(2, vec![(0, 1)]).unwrap();
        assert!(Embedding { map: vec![1, 0] }.is_valid(&single, &host));
        assert!(!Embedding { map: vec![1, 1] }.is_valid(&single, &host));
    }

    #[test]
    fn tree_recognition() {
        assert!(path(5).is_tree());
        assert!(star(3).is_tree());
        assert!(!cycle(4).is_tree());
        assert!(!Graph::new(4, vec![(0, 1), (2, 3), (0, 1)])
            .unwrap()
            .is_tree());
    }
}
