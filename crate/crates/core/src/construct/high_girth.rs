//! Random `d`-regular graphs with girth at least `g`.
//!
//! A simple `d`-regular graph is drawn with the pairing model (pairs are
//! redrawn whenever they would create a loop or a repeated edge), then every
//! cycle shorter than `g` is broken by a 2-edge swap: an edge `xy` on the
//! short cycle and a random edge `ce` are replaced by `xc` and `ye`. A swap is
//! kept only when neither new edge lies on a cycle shorter than `g`, so the
//! number of short cycles strictly drops. If no swap can be found the order
//! is doubled and the process restarts. The result is verified with an exact
//! girth computation before it is returned.

use std::collections::VecDeque;

use rand::seq::IndexedRandom;
use rand::Rng;

use super::ConstructError;
use crate::graph::{girth, Graph};
use crate::rng::{derive_seed, seeded, SeededRng};

#[derive(Debug, Clone)]
pub struct HighGirthConfig {
    /// Starting order; derived from `d` and `g` when `None`.
    pub initial_order: Option<usize>,
    /// How many times the order may double after a failed attempt.
    pub max_doublings: u32,
    /// Pairing restarts per order before doubling.
    pub pairing_restarts: u32,
    /// Random partner edges tried per short cycle before giving up.
    pub swap_attempts: u32,
    /// Orders above this are refused.
    pub max_order: usize,
}

impl Default for HighGirthConfig {
    fn default() -> Self {
        HighGirthConfig {
            initial_order: None,
            max_doublings: 6,
            pairing_restarts: 16,
            swap_attempts: 2_000,
            max_order: 1 << 21,
        }
    }
}

pub fn high_girth_regular(d: usize, g: usize, seed: u64) -> Result<Graph, ConstructError> {
    high_girth_regular_with(d, g, seed, &HighGirthConfig::default())
}

/// Vertices within distance `radius` of a vertex in a `d`-regular tree.
fn ball_size(d: usize, radius: usize) -> usize {
    let mut total = 1usize;
    let mut layer = d;
    for _ in 0..radius {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(d.saturating_sub(1));
    }
    total
}

fn default_order(d: usize, g: usize) -> usize {
    // A new edge must join two vertices at distance >= g - 1, so the order
    // has to comfortably exceed a ball of radius g - 2.
    let ball = if g >= 3 { ball_size(d, g - 2) } else { 1 };
    (d + 1).max(g).max(ball.saturating_mul(2))
}

pub fn high_girth_regular_with(
    d: usize,
    g: usize,
    seed: u64,
    config: &HighGirthConfig,
) -> Result<Graph, ConstructError> {
    if d < 2 {
        return Err(ConstructError::InvalidParameter(format!(
            "degree must be at least 2, got {d}"
        )));
    }
    let mut order = config
        .initial_order
        .unwrap_or_else(|| default_order(d, g))
        .max(d + 1);
    let mut attempt = 0u64;
    for _ in 0..=config.max_doublings {
        if d * order % 2 == 1 {
            order += 1;
        }
        if order > config.max_order {
            break;
        }
        for _ in 0..config.pairing_restarts {
            let mut rng = seeded(derive_seed(seed, attempt));
            attempt += 1;
            let Some(mut adj) = random_regular(order, d, &mut rng) else {
                continue;
            };
            if break_short_cycles(&mut adj, g, config.swap_attempts, &mut rng) {
                let graph = to_graph(&adj);
                if girth(&graph).at_least(g) {
                    return Ok(graph);
                }
            }
        }
        order = order.saturating_mul(2);
    }
    Err(ConstructError::BudgetExhausted(format!(
        "no {d}-regular graph of girth >= {g} found up to order {order}"
    )))
}

fn to_graph(adj: &[Vec<usize>]) -> Graph {
    let mut edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    edges.sort_unstable();
    Graph::new(adj.len(), edges).expect("adjacency lists are in range and loop-free")
}

/// Pairing model with rejection of loops and repeated pairs
/// (Steger–Wormald). `None` when the pairing gets stuck.
fn random_regular(n: usize, d: usize, rng: &mut SeededRng) -> Option<Vec<Vec<usize>>> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
    let ok = |adj: &Vec<Vec<usize>>, u: usize, v: usize| u != v && !adj[u].contains(&v);
    while !points.is_empty() {
        let mut chosen = None;
        for _ in 0..64 {
            let i = rng.random_range(0..points.len());
            let j = rng.random_range(0..points.len());
            if i != j && ok(&adj, points[i], points[j]) {
                chosen = Some((i, j));
                break;
            }
        }
        if chosen.is_none() {
            let mut valid = Vec::new();
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    if ok(&adj, points[i], points[j]) {
                        valid.push((i, j));
                    }
                }
            }
            chosen = valid.choose(rng).copied();
        }
        let (i, j) = chosen?;
        let (u, v) = (points[i], points[j]);
        adj[u].push(v);
        adj[v].push(u);
        let (hi, lo) = (i.max(j), i.min(j));
        points.swap_remove(hi);
        points.swap_remove(lo);
    }
    Some(adj)
}

fn remove_edge(adj: &mut [Vec<usize>], u: usize, v: usize) {
    let i = adj[u].iter().position(|&x| x == v).expect("edge present");
    adj[u].swap_remove(i);
    let j = adj[v].iter().position(|&x| x == u).expect("edge present");
    adj[v].swap_remove(j);
}

fn add_edge(adj: &mut [Vec<usize>], u: usize, v: usize) {
    adj[u].push(v);
    adj[v].push(u);
}

/// An edge on a cycle of length < `g` within reach of `root`, found by BFS.
/// Every such cycle through `root` is detected.
fn short_cycle_edge(
    adj: &[Vec<usize>],
    root: usize,
    g: usize,
    dist: &mut [usize],
    parent: &mut [usize],
) -> Option<(usize, usize)> {
    let mut touched = vec![root];
    let mut queue = VecDeque::from([root]);
    dist[root] = 0;
    let mut found = None;
    'bfs: while let Some(x) = queue.pop_front() {
        if 2 * dist[x] + 1 >= g {
            break;
        }
        for &y in &adj[x] {
            if y == parent[x] {
                continue;
            }
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                parent[y] = x;
                touched.push(y);
                queue.push_back(y);
            } else if dist[x] + dist[y] + 1 < g {
                found = Some((x, y));
                break 'bfs;
            }
        }
    }
    for v in touched {
        dist[v] = usize::MAX;
        parent[v] = usize::MAX;
    }
    found
}

/// Is `target` within `limit` steps of `source`?
fn within(
    adj: &[Vec<usize>],
    source: usize,
    target: usize,
    limit: usize,
    dist: &mut [usize],
) -> bool {
    let mut touched = vec![source];
    let mut queue = VecDeque::from([source]);
    dist[source] = 0;
    let mut hit = false;
    'bfs: while let Some(x) = queue.pop_front() {
        if dist[x] >= limit {
            continue;
        }
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                if y == target {
                    hit = true;
                    break 'bfs;
                }
                dist[y] = dist[x] + 1;
                touched.push(y);
                queue.push_back(y);
            }
        }
    }
    for v in touched {
        dist[v] = usize::MAX;
    }
    hit
}

/// Removes every cycle shorter than `g`. Returns false when some short cycle
/// could not be broken within the attempt budget.
fn break_short_cycles(
    adj: &mut [Vec<usize>],
    g: usize,
    swap_attempts: u32,
    rng: &mut SeededRng,
) -> bool {
    if g <= 3 {
        return true;
    }
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    for root in 0..n {
        while let Some((x, y)) = short_cycle_edge(adj, root, g, &mut dist, &mut parent) {
            let mut repaired = false;
            for _ in 0..swap_attempts {
                let k = rng.random_range(0..edges.len());
                let (mut c, mut e) = edges[k];
                if rng.random_bool(0.5) {
                    std::mem::swap(&mut c, &mut e);
                }
                if [c, e].iter().any(|&z| z == x || z == y)
                    || adj[x].contains(&c)
                    || adj[y].contains(&e)
                {
                    continue;
                }
                remove_edge(adj, x, y);
                remove_edge(adj, c, e);
                add_edge(adj, x, c);
                add_edge(adj, y, e);
                // The shortest cycle through a new edge uv is one more than
                // the u-v distance once uv itself is taken out.
                let mut short = false;
                for (u, v) in [(x, c), (y, e)] {
                    remove_edge(adj, u, v);
                    short |= within(adj, u, v, g - 2, &mut dist);
                    add_edge(adj, u, v);
                }
                if short {
                    remove_edge(adj, x, c);
                    remove_edge(adj, y, e);
                    add_edge(adj, x, y);
                    add_edge(adj, c, e);
                    continue;
                }
                let xy = edges
                    .iter()
                    .position(|&p| p == (x.min(y), x.max(y)))
                    .expect("edge list tracks the graph");
                edges[xy] = (x.min(c), x.max(c));
                edges[k] = (y.min(e), y.max(e));
                repaired = true;
                break;
            }
            if !repaired {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Girth;

    fn check(g: &Graph, d: usize, girth_target: usize) {
        assert!(g.is_simple());
        assert!(g.degrees().iter().all(|&x| x == d));
        assert!(girth(g).at_least(girth_target), "girth {}", girth(g));
    }

    #[test]
    fn two_regular_is_a_union_of_long_cycles() {
        let g = high_girth_regular(2, 7, 1).unwrap();
        check(&g, 2, 7);
    }

    #[test]
    fn cubic_girth_five() {
        let g = high_girth_regular(3, 5, 3).unwrap();
        check(&g, 3, 5);
        assert!(g.vertex_count() >= 10);
    }

    #[test]
    fn vacuous_girth_target() {
        let g = high_girth_regular(3, 2, 5).unwrap();
        check(&g, 3, 3);
    }

    #[test]
    fn quartic_girth_six() {
        let g = high_girth_regular(4, 6, 11).unwrap();
        check(&g, 4, 6);
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(
            high_girth_regular(3, 6, 21).unwrap(),
            high_girth_regular(3, 6, 21).unwrap()
        );
    }

    #[test]
    fn odd_degree_order_parity_is_fixed_up() {
        let cfg = HighGirthConfig {
            initial_order: Some(11),
            ..Default::default()
        };
        let g = high_girth_regular_with(3, 4, 2, &cfg).unwrap();
        assert_eq!(g.vertex_count() % 2, 0);
        check(&g, 3, 4);
    }

    #[test]
    fn tiny_budget_is_reported() {
        let cfg = HighGirthConfig {
            initial_order: Some(10),
            max_doublings: 0,
            pairing_restarts: 1,
            swap_attempts: 1,
            max_order: 10,
        };
        assert!(matches!(
            high_girth_regular_with(3, 9, 0, &cfg),
            Err(ConstructError::BudgetExhausted(_))
        ));
        assert!(matches!(
            high_girth_regular(1, 5, 0),
            Err(ConstructError::InvalidParameter(_))
        ));
    }

    #[test]
    fn short_cycle_detection_matches_girth() {
        let mut rng = seeded(5);
        for _ in 0..20 {
            let Some(adj) = random_regular(30, 3, &mut rng) else {
                continue;
            };
            let graph = to_graph(&adj);
            let Girth::Finite(gi) = girth(&graph) else {
                continue;
            };
            let mut dist = vec![usize::MAX; 30];
            let mut parent = vec![usize::MAX; 30];
            let any_below = |t: usize, dist: &mut [usize], parent: &mut [usize]| {
                (0..30).any(|r| short_cycle_edge(&adj, r, t, dist, parent).is_some())
            };
            assert!(any_below(gi + 1, &mut dist, &mut parent));
            assert!(!any_below(gi, &mut dist, &mut parent));
        }
    }
}
