//! Constructions: regular bipartite supergraphs, 1-factorizations, colorings
//! that avoid large monochromatic stars, bipartite double covers, high-girth
//! regular graphs and seeded random colorings.

mod high_girth;
mod matching;

pub use high_girth::{high_girth_regular, high_girth_regular_with, HighGirthConfig};
pub use matching::maximum_matching;

use rand::Rng;
use thiserror::Error;

use crate::graph::{check_bipartition, EdgeColoring, Graph, Sides};
use crate::rng::seeded;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("maximum degree {max_degree} exceeds target degree {target}")]
    DegreeTooLarge { max_degree: usize, target: usize },
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("sides have {a} and {b} vertices")]
    UnequalSides { a: usize, b: usize },
    #[error("no perfect matching left while extracting factor {factor}")]
    NoPerfectMatching { factor: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("construction budget exhausted: {0}")]
    BudgetExhausted(String),
}

/// A partition of the edge set of a regular bipartite graph into perfect
/// matchings, each listed as ascending edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<Vec<usize>>,
}

impl Factorization {
    /// Checks disjointness, coverage and that every factor is a perfect
    /// matching of `h`.
    pub fn check(&self, h: &Graph) -> Result<(), String> {
        let mut owner = vec![usize::MAX; h.edge_count()];
        for (k, factor) in self.factors.iter().enumerate() {
            let mut covered = vec![false; h.vertex_count()];
            for &e in factor {
                if e >= h.edge_count() {
                    return Err(format!("factor {k} names edge {e} outside the host"));
                }
                if owner[e] != usize::MAX {
                    return Err(format!("edge {e} is in factors {} and {k}", owner[e]));
                }
                owner[e] = k;
                let (u, v) = h.edge(e);
                for x in [u, v] {
                    if covered[x] {
                        return Err(format!("factor {k} covers vertex {x} twice"));
                    }
                    covered[x] = true;
                }
            }
            if let Some(x) = covered.iter().position(|&c| !c) {
                return Err(format!("factor {k} misses vertex {x}"));
            }
        }
        if let Some(e) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(format!("edge {e} is in no factor"));
        }
        Ok(())
    }
}

/// A regular bipartite multigraph containing a given bipartite graph.
///
/// `vertex_map[v]` is the supergraph vertex standing for original vertex `v`
/// and `inclusion[e]` the supergraph edge standing for original edge `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupergraphWitness {
    pub supergraph: Graph,
    pub vertex_map: Vec<usize>,
    pub inclusion: Vec<usize>,
}

impl SupergraphWitness {
    pub fn check(&self, h: &Graph, d: usize) -> Result<(), String> {
        let sup = &self.supergraph;
        if self.vertex_map.len() != h.vertex_count() || self.inclusion.len() != h.edge_count() {
            return Err("maps do not cover the original graph".into());
        }
        let mut hit = vec![false; sup.vertex_count()];
        for &s in &self.vertex_map {
            if s >= sup.vertex_count() || hit[s] {
                return Err(format!("vertex map is not injective at {s}"));
            }
            hit[s] = true;
        }
        let mut used = vec![false; sup.edge_count()];
        for (e, &s) in self.inclusion.iter().enumerate() {
            if s >= sup.edge_count() || used[s] {
                return Err(format!("inclusion is not injective at edge {e}"));
            }
            used[s] = true;
            let (u, v) = h.edge(e);
            let (a, b) = sup.edge(s);
            let (x, y) = (self.vertex_map[u], self.vertex_map[v]);
            if (a, b) != (x, y) && (a, b) != (y, x) {
                return Err(format!("edge {e} maps to ({a}, {b}), not ({x}, {y})"));
            }
        }
        if let Some((v, &deg)) = sup.degrees().iter().enumerate().find(|(_, &x)| x != d) {
            return Err(format!(
                "supergraph vertex {v} has degree {deg}, expected {d}"
            ));
        }
        if sup.bipartition().is_none() {
            return Err("supergraph has no declared bipartition".into());
        }
        Ok(())
    }
}

fn sides_of(h: &Graph) -> Result<Sides, ConstructError> {
    check_bipartition(h).ok_or(ConstructError::NotBipartite)
}

/// Proper edge coloring of a bipartite multigraph with `colors >= Δ`
/// colors, by alternating-path recoloring. Returns a color per edge.
pub fn bipartite_edge_coloring(h: &Graph, colors: usize) -> Result<Vec<usize>, ConstructError> {
    let sides = sides_of(h)?;
    let max_degree = h.max_degree();
    if max_degree > colors {
        return Err(ConstructError::DegreeTooLarge {
            max_degree,
            target: colors,
        });
    }
    let n = h.vertex_count();
    let in_b = sides.side_of(n);
    // at[v][c] = the edge of color c at v, if any
    let mut at = vec![vec![usize::MAX; colors]; n];
    let mut color = vec![usize::MAX; h.edge_count()];
    let free = |at: &Vec<Vec<usize>>, v: usize| at[v].iter().position(|&e| e == usize::MAX);
    for (e, &(x, y)) in h.edges().iter().enumerate() {
        let (u, v) = if in_b[x] { (y, x) } else { (x, y) };
        let a = free(&at, u).expect("degree bound leaves a free color");
        if at[v][a] != usize::MAX {
            let b = free(&at, v).expect("degree bound leaves a free color");
            // Swap a and b along the a/b path starting at v; it cannot reach
            // u because the graph is bipartite and a is free at u.
            let mut path = Vec::new();
            let mut cur = v;
            let mut want = a;
            while at[cur][want] != usize::MAX {
                let f = at[cur][want];
                path.push(f);
                let (p, q) = h.edge(f);
                cur = if p == cur { q } else { p };
                want = if want == a { b } else { a };
            }
            for &f in &path {
                let (p, q) = h.edge(f);
                at[p][color[f]] = usize::MAX;
                at[q][color[f]] = usize::MAX;
            }
            for &f in &path {
                let (p, q) = h.edge(f);
                let c = if color[f] == a { b } else { a };
                color[f] = c;
                at[p][c] = f;
                at[q][c] = f;
            }
        }
        color[e] = a;
        at[u][a] = e;
        at[v][a] = e;
    }
    Ok(color)
}

/// Embeds a bipartite graph with maximum degree at most `d` in a
/// `d`-regular bipartite multigraph.
///
/// The original edges are properly colored with `d` colors, both sides are
/// padded with isolated vertices to a common size, and each color class is
/// completed to a perfect matching by pairing its unmatched vertices in
/// ascending order. The supergraph lists the original edges first, so
/// `inclusion` is the identity on edge indices; vertices are relabelled so
/// that side A (original A vertices, then padding) comes first.
pub fn regular_bipartite_supergraph(
    h: &Graph,
    d: usize,
) -> Result<SupergraphWitness, ConstructError> {
    let sides = sides_of(h)?;
    let color = bipartite_edge_coloring(h, d)?;
    let side_size = sides.a.len().max(sides.b.len());
    let mut vertex_map = vec![usize::MAX; h.vertex_count()];
    for (i, &v) in sides.a.iter().enumerate() {
        vertex_map[v] = i;
    }
    for (i, &v) in sides.b.iter().enumerate() {
        vertex_map[v] = side_size + i;
    }
    let mut edges: Vec<(usize, usize)> = h
        .edges()
        .iter()
        .map(|&(u, v)| (vertex_map[u], vertex_map[v]))
        .collect();
    let mut matched = vec![vec![false; 2 * side_size]; d];
    for (e, &(u, v)) in edges.iter().enumerate() {
        matched[color[e]][u] = true;
        matched[color[e]][v] = true;
    }
    for class in &matched {
        let free_a = (0..side_size).filter(|&x| !class[x]);
        let free_b = (side_size..2 * side_size).filter(|&x| !class[x]);
        edges.extend(free_a.zip(free_b));
    }
    let supergraph = Graph::new(2 * side_size, edges)
        .and_then(|g| g.with_bipartition(side_size))
        .expect("completion keeps edges across the split");
    Ok(SupergraphWitness {
        supergraph,
        vertex_map,
        inclusion: (0..h.edge_count()).collect(),
    })
}

/// Splits a `d`-regular bipartite multigraph into `d` perfect matchings by
/// repeatedly extracting a maximum matching from what remains.
pub fn one_factorization(h: &Graph) -> Result<Factorization, ConstructError> {
    let sides = sides_of(h)?;
    if sides.a.len() != sides.b.len() {
        return Err(ConstructError::UnequalSides {
            a: sides.a.len(),
            b: sides.b.len(),
        });
    }
    let degrees = h.degrees();
    let d = degrees.first().copied().unwrap_or(0);
    if let Some((vertex, &degree)) = degrees.iter().enumerate().find(|(_, &x)| x != d) {
        return Err(ConstructError::NotRegular {
            vertex,
            degree,
            expected: d,
        });
    }
    let mut index = vec![0usize; h.vertex_count()];
    for (i, &v) in sides.a.iter().enumerate() {
        index[v] = i;
    }
    for (i, &v) in sides.b.iter().enumerate() {
        index[v] = i;
    }
    let in_b = sides.side_of(h.vertex_count());
    let oriented: Vec<(usize, usize)> = h
        .edges()
        .iter()
        .map(|&(u, v)| {
            if in_b[u] {
                (index[v], index[u])
            } else {
                (index[u], index[v])
            }
        })
        .collect();

    let side = sides.a.len();
    let mut remaining: Vec<usize> = (0..h.edge_count()).collect();
    let mut factors = Vec::with_capacity(d);
    for factor in 0..d {
        let local: Vec<(usize, usize)> = remaining.iter().map(|&e| oriented[e]).collect();
        let matching = maximum_matching(side, side, &local);
        if matching.iter().any(Option::is_none) {
            return Err(ConstructError::NoPerfectMatching { factor });
        }
        let mut take: Vec<usize> = matching.iter().map(|m| remaining[m.unwrap()]).collect();
        take.sort_unstable();
        let mut taken = vec![false; h.edge_count()];
        for &e in &take {
            taken[e] = true;
        }
        remaining.retain(|&e| !taken[e]);
        factors.push(take);
    }
    Ok(Factorization { factors })
}

/// Colors a bipartite graph with `colors` colors so that no vertex meets
/// more than `star - 1` edges of any one color.
///
/// Completes to a `colors * (star - 1)`-regular supergraph, 1-factorizes it,
/// gives factors `0..star-1` color 0, the next `star - 1` color 1, and so on,
/// then reads the colors of the original edges back through the inclusion.
pub fn star_free_coloring(
    h: &Graph,
    colors: usize,
    star: usize,
) -> Result<EdgeColoring, ConstructError> {
    if colors == 0 || star == 0 {
        return Err(ConstructError::InvalidParameter(
            "color count and star size must be positive".into(),
        ));
    }
    let per_color = star - 1;
    let d = colors * per_color;
    let max_degree = h.max_degree();
    if max_degree > d {
        return Err(ConstructError::DegreeTooLarge {
            max_degree,
            target: d,
        });
    }
    let witness = regular_bipartite_supergraph(h, d)?;
    let factorization = one_factorization(&witness.supergraph)?;
    let mut super_color = vec![0usize; witness.supergraph.edge_count()];
    for (k, factor) in factorization.factors.iter().enumerate() {
        for &e in factor {
            super_color[e] = k / per_color;
        }
    }
    let assignment = witness.inclusion.iter().map(|&s| super_color[s]).collect();
    Ok(EdgeColoring::new(colors, assignment).expect("factor groups stay below the color count"))
}

/// The direct product `G × K_2`: vertex `v` becomes `v` (layer 0) and
/// `n + v` (layer 1); edge `uv` becomes `u–(n+v)` and `v–(n+u)`.
pub fn bipartite_double_cover(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let edges = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, n + v), (v, n + u)])
        .collect();
    Graph::new(2 * n, edges)
        .and_then(|c| c.with_bipartition(n))
        .expect("cover edges cross the layers")
}

/// Independent uniform color per edge, reproducible from `seed`.
pub fn random_coloring(h: &Graph, colors: usize, seed: u64) -> EdgeColoring {
    let colors = colors.max(1);
    let mut rng = seeded(seed);
    let assignment = (0..h.edge_count())
        .map(|_| rng.random_range(0..colors))
        .collect();
    EdgeColoring::new(colors, assignment).expect("colors drawn in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{girth, validate_bipartition, Girth};
    use crate::rng::derive_seed;

    fn per_vertex_color_degree(h: &Graph, col: &EdgeColoring) -> usize {
        let mut count = vec![vec![0usize; col.colors()]; h.vertex_count()];
        for (e, &(u, v)) in h.edges().iter().enumerate() {
            count[u][col.color(e)] += 1;
            count[v][col.color(e)] += 1;
        }
        count.iter().flatten().copied().max().unwrap_or(0)
    }

    #[test]
    fn edge_coloring_is_proper() {
        for g in [complete_bipartite(3, 4), cycle(8), star(5), path(6)] {
            let d = g.max_degree();
            let col = bipartite_edge_coloring(&g, d).unwrap();
            let col = EdgeColoring::new(d, col).unwrap();
            assert_eq!(per_vertex_color_degree(&g, &col), 1);
        }
        assert_eq!(
            bipartite_edge_coloring(&cycle(5), 3),
            Err(ConstructError::NotBipartite)
        );
    }

    #[test]
    fn supergraph_of_a_path() {
        let p3 = path(3);
        let w = regular_bipartite_supergraph(&p3, 2).unwrap();
        w.check(&p3, 2).unwrap();
        assert_eq!(w.supergraph.vertex_count(), 4);
        assert_eq!(w.supergraph.edge_count(), 4);
    }

    #[test]
    fn supergraph_of_regular_graph_is_itself() {
        let k33 = complete_bipartite(3, 3);
        let w = regular_bipartite_supergraph(&k33, 3).unwrap();
        assert_eq!(w.supergraph, k33);
        assert_eq!(w.inclusion, (0..9).collect::<Vec<_>>());
        assert_eq!(w.vertex_map, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn supergraph_of_a_star() {
        let s = star(4);
        let w = regular_bipartite_supergraph(&s, 4).unwrap();
        w.check(&s, 4).unwrap();
        assert!(w.supergraph.vertex_count() <= 10);
    }

    #[test]
    fn supergraph_errors() {
        assert!(matches!(
            regular_bipartite_supergraph(&star(4), 3),
            Err(ConstructError::DegreeTooLarge {
                max_degree: 4,
                target: 3
            })
        ));
        assert_eq!(
            regular_bipartite_supergraph(&cycle(3), 3),
            Err(ConstructError::NotBipartite)
        );
    }

    #[test]
    fn factorization_examples() {
        let c6 = cycle(6);
        let f = one_factorization(&c6).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|m| m.len() == 3));
        f.check(&c6).unwrap();

        let k33 = complete_bipartite(3, 3);
        let f = one_factorization(&k33).unwrap();
        assert_eq!(f.factors.len(), 3);
        f.check(&k33).unwrap();

        let double = Graph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        let f = one_factorization(&double).unwrap();
        assert_eq!(f.factors, vec![vec![0], vec![1]]);
    }

    #[test]
    fn factorization_errors() {
        assert!(matches!(
            one_factorization(&path(3)),
            Err(ConstructError::UnequalSides { a: 2, b: 1 })
        ));
        assert!(matches!(
            one_factorization(&path(4)),
            Err(ConstructError::NotRegular { .. })
        ));
    }

    #[test]
    fn star_free_examples() {
        let s = star(4);
        let col = star_free_coloring(&s, 2, 3).unwrap();
        assert!(per_vertex_color_degree(&s, &col) <= 2);

        let e = path(2);
        for colors in 1..4 {
            let col = star_free_coloring(&e, colors, 2).unwrap();
            assert_eq!(col.len(), 1);
        }

        let c8 = cycle(8);
        let col = star_free_coloring(&c8, 2, 2).unwrap();
        assert_eq!(per_vertex_color_degree(&c8, &col), 1);

        assert!(matches!(
            star_free_coloring(&star(5), 2, 3),
            Err(ConstructError::DegreeTooLarge {
                max_degree: 5,
                target: 4
            })
        ));
    }

    #[test]
    fn double_cover_examples() {
        let c10 = bipartite_double_cover(&cycle(5));
        assert_eq!(c10.vertex_count(), 10);
        assert!(c10.is_connected());
        assert!(c10.degrees().iter().all(|&d| d == 2));
        assert_eq!(girth(&c10), Girth::Finite(10));

        let k2 = bipartite_double_cover(&path(2));
        assert_eq!(k2.edges(), &[(0, 3), (1, 2)]);
        assert_eq!(k2.component_count(), 2);

        let k4 = bipartite_double_cover(&complete(4));
        assert_eq!(k4.vertex_count(), 8);
        assert!(k4.degrees().iter().all(|&d| d == 3));
        assert_eq!(girth(&k4), Girth::Finite(4));
        let sides = check_bipartition(&k4).unwrap();
        assert!(validate_bipartition(&k4, &sides));
    }

    #[test]
    fn random_coloring_contract() {
        let g = complete(30);
        assert!(random_coloring(&g, 1, 9)
            .assignment()
            .iter()
            .all(|&c| c == 0));
        assert_eq!(random_coloring(&g, 3, 9), random_coloring(&g, 3, 9));
        assert_ne!(random_coloring(&g, 3, 9), random_coloring(&g, 3, 10));
    }

    #[test]
    fn random_coloring_frequencies_within_three_sigma() {
        let host = Graph::new(10_001, (0..10_000).map(|i| (i, i + 1)).collect()).unwrap();
        for s in [2usize, 3, 5] {
            let col = random_coloring(&host, s, derive_seed(42, s as u64));
            let n = col.len() as f64;
            let p = 1.0 / s as f64;
            let sigma = (n * p * (1.0 - p)).sqrt();
            for c in 0..s {
                let k = col.assignment().iter().filter(|&&x| x == c).count() as f64;
                assert!((k - n * p).abs() <= 3.0 * sigma, "s={s} c={c} k={k}");
            }
        }
    }
}
