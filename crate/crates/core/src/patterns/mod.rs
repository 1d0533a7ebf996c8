//! Searching hosts for target structures: monochromatic copies, dense cores,
//! greedily grown trees, `K_{m,n}` by double counting, and locally injective
//! homomorphisms.

mod embed;
mod hom;
mod kst;
mod peel;
mod search;

pub use embed::{embed_tree, EmbedError, EmbedOutcome};
pub use hom::{is_locally_injective_hom, locally_injective_hom};
pub use kst::{kst_find, kst_threshold, KstCertificate, KstError};
pub use peel::{peel_dense_core, PeelError, PeelResult};
pub use search::{find_monochromatic, find_monochromatic_with, Matcher};

use crate::graph::{color_class, EdgeColoring, Graph, GraphError};

/// The largest color class (lowest color on ties) as a spanning subgraph.
/// It always has at least `⌈|E|/s⌉` edges.
pub fn majority_color_class(h: &Graph, col: &EdgeColoring) -> Result<(usize, Graph), GraphError> {
    col.check_host(h)?;
    if h.edge_count() == 0 {
        return Err(GraphError::NoEdges);
    }
    let mut sizes = vec![0usize; col.colors()];
    for &c in col.assignment() {
        sizes[c] += 1;
    }
    let best = (0..sizes.len())
        .max_by_key(|&c| (sizes[c], std::cmp::Reverse(c)))
        .expect("at least one color");
    Ok((best, color_class(h, col, best)?))
}
