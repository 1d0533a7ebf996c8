use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Embedding, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("pattern is not a tree")]
    NotATree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbedOutcome {
    Embedded(Embedding),
    /// No host root of the required degree exists.
    NoRoot {
        required_degree: usize,
    },
    /// Tree vertex `tree_vertex`, placed at `host_vertex`, had a child left
    /// over and no unused host neighbour to put it on.
    Stuck {
        tree_vertex: usize,
        host_vertex: usize,
    },
}

impl EmbedOutcome {
    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            EmbedOutcome::Embedded(e) => Some(e),
            _ => None,
        }
    }
}

/// Grows a copy of the tree `t` in `h` greedily, without backtracking.
///
/// The tree is rooted at its lowest-index vertex of maximum degree. The host
/// root is the lowest-index vertex with at least `root_degree` distinct
/// neighbours (default: the tree's maximum degree). Tree vertices are then
/// placed in breadth-first order, each child on the lowest unused host
/// neighbour of its parent's image. When `h` has girth above `|V(t)|` and
/// every host vertex has at least as many neighbours as the tree's
/// non-root vertices need, this never gets stuck.
pub fn embed_tree(
    h: &Graph,
    t: &Graph,
    root_degree: Option<usize>,
) -> Result<EmbedOutcome, EmbedError> {
    if !t.is_tree() || !t.is_simple() {
        return Err(EmbedError::NotATree);
    }
    let tree = t.adjacency();
    let host = h.adjacency();
    let tree_root = (0..t.vertex_count())
        .max_by_key(|&v| (tree.degree(v), std::cmp::Reverse(v)))
        .expect("trees are nonempty");
    let required_degree = root_degree.unwrap_or_else(|| tree.degree(tree_root));
    let Some(host_root) =
        (0..h.vertex_count()).find(|&v| host.distinct_degree(v) >= required_degree)
    else {
        return Ok(EmbedOutcome::NoRoot { required_degree });
    };

    let mut map = vec![usize::MAX; t.vertex_count()];
    let mut used = vec![false; h.vertex_count()];
    map[tree_root] = host_root;
    used[host_root] = true;
    let mut queue = VecDeque::from([tree_root]);
    while let Some(x) = queue.pop_front() {
        let image = map[x];
        let free: Vec<usize> = host
            .distinct_neighbors(image)
            .into_iter()
            .filter(|&w| !used[w])
            .collect();
        let mut free = free.into_iter();
        for &child in tree.neighbors(x) {
            if map[child] != usize::MAX {
                continue;
            }
            let Some(w) = free.next() else {
                return Ok(EmbedOutcome::Stuck {
                    tree_vertex: x,
                    host_vertex: image,
                });
            };
            map[child] = w;
            used[w] = true;
            queue.push_back(child);
        }
    }
    let embedding = Embedding { map };
    debug_assert!(embedding.is_valid(t, h));
    Ok(EmbedOutcome::Embedded(embedding))
}
