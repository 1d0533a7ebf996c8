use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::graph::{degree_stats, DegreeStats, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeelError {
    #[error("graph has no edges")]
    Edgeless,
}

/// Outcome of dense-core peeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelResult {
    /// Induced subgraph on the surviving vertices, relabelled in ascending
    /// order of their input labels.
    pub core: Graph,
    /// Deleted vertices in deletion order.
    pub removed: Vec<usize>,
    /// `vertex_map[i]` is the input label of core vertex `i`.
    pub vertex_map: Vec<usize>,
    pub core_stats: DegreeStats,
}

/// Repeatedly deletes the lowest-index vertex whose degree is at most the
/// current edge/vertex ratio.
///
/// Deleting such a vertex never lowers `|E|/|V|`, so the surviving core has
/// average degree at least the input's and minimum degree strictly above
/// `|E(core)|/|V(core)|`, i.e. above half its own average degree.
pub fn peel_dense_core(g: &Graph) -> Result<PeelResult, PeelError> {
    if g.edge_count() == 0 {
        return Err(PeelError::Edgeless);
    }
    let adj = g.adjacency();
    let n = g.vertex_count();
    let mut degree = g.degrees();
    let mut alive = vec![true; n];
    let mut queued = vec![false; n];
    let mut vertices = n as u64;
    let mut edges = g.edge_count() as u64;

    // Vertices with degree <= threshold are exactly the queued ones; the
    // threshold floor(|E|/|V|) only grows, so the rest wait in buckets keyed
    // by the degree they had when filed (stale entries are skipped).
    let max_degree = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_degree + 1];
    let mut heap = BinaryHeap::new();
    let mut threshold = (edges / vertices) as usize;
    for v in 0..n {
        if degree[v] <= threshold {
            queued[v] = true;
            heap.push(Reverse(v));
        } else {
            buckets[degree[v]].push(v);
        }
    }
    let mut scanned = threshold;
    let mut removed = Vec::new();

    while let Some(Reverse(v)) = heap.pop() {
        alive[v] = false;
        removed.push(v);
        vertices -= 1;
        edges -= degree[v] as u64;
        for &w in adj.neighbors(v) {
            if !alive[w] {
                continue;
            }
            degree[w] -= 1;
            if !queued[w] {
                if degree[w] <= threshold {
                    queued[w] = true;
                    heap.push(Reverse(w));
                } else {
                    buckets[degree[w]].push(w);
                }
            }
        }
        degree[v] = 0;
        if vertices == 0 {
            break;
        }
        threshold = (edges / vertices) as usize;
        while scanned < threshold.min(max_degree) {
            scanned += 1;
            for w in std::mem::take(&mut buckets[scanned]) {
                if alive[w] && !queued[w] && degree[w] <= threshold {
                    queued[w] = true;
                    heap.push(Reverse(w));
                }
            }
        }
    }

    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let (core, vertex_map) = g.induced_subgraph(&keep);
    let core_stats = degree_stats(&core).expect("peeling keeps at least one edge");
    Ok(PeelResult {
        core,
        removed,
        vertex_map,
        core_stats,
    })
}
