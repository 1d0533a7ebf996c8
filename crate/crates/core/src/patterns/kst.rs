use std::collections::HashMap;

use num_bigint::BigUint;
use thiserror::Error;

use crate::bounds::binomial;
use crate::graph::{check_bipartition, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KstError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("parameters violate 0 <= m <= p <= M and n >= 1: {0}")]
    Parameters(String),
}

/// A copy of `K_{m,n}`: `left` on side A, `right` their common neighbours
/// on side B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KstCertificate {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl KstCertificate {
    pub fn is_valid(&self, g: &Graph, m: usize, n: usize) -> bool {
        let adj = g.adjacency();
        let distinct = |xs: &[usize]| {
            let mut s = xs.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len() == xs.len()
        };
        self.left.len() == m
            && self.right.len() == n
            && distinct(&self.left)
            && distinct(&self.right)
            && self.left.iter().all(|a| !self.right.contains(a))
            && self
                .left
                .iter()
                .all(|&a| self.right.iter().all(|&b| adj.adjacent(a, b)))
    }
}

/// Whether `N·C(p, m) > (n − 1)·C(M, m)`, evaluated exactly. When it holds,
/// any subgraph of `K_{M,N}` with at least `N·p` edges contains `K_{m,n}`.
pub fn kst_threshold(big_m: u64, big_n: u64, p: u64, m: u64, n: u64) -> Result<bool, KstError> {
    if m > p || p > big_m || n == 0 {
        return Err(KstError::Parameters(format!(
            "M={big_m} N={big_n} p={p} m={m} n={n}"
        )));
    }
    let left = BigUint::from(big_n) * binomial(p, m);
    let right = BigUint::from(n - 1) * binomial(big_m, m);
    Ok(left > right)
}

/// Double-counting search for `K_{m,n}` with the `m` side in A.
///
/// Each B vertex contributes one to every `m`-subset of its A-neighbourhood;
/// the first subset to reach `n` contributors is returned. Subsets are only
/// ever generated from real neighbourhoods.
pub fn kst_find(g: &Graph, m: usize, n: usize) -> Result<Option<KstCertificate>, KstError> {
    let sides = check_bipartition(g).ok_or(KstError::NotBipartite)?;
    if n == 0 {
        return Ok((sides.a.len() >= m).then(|| KstCertificate {
            left: sides.a[..m].to_vec(),
            right: Vec::new(),
        }));
    }
    let adj = g.adjacency();
    let mut counts: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut subset = Vec::with_capacity(m);
    for &b in &sides.b {
        let hood = adj.distinct_neighbors(b);
        if hood.len() < m {
            continue;
        }
        let mut hit = None;
        for_each_subset(&hood, m, 0, &mut subset, &mut |s| {
            let witnesses = counts.entry(s.to_vec()).or_default();
            witnesses.push(b);
            if witnesses.len() >= n {
                hit = Some(KstCertificate {
                    left: s.to_vec(),
                    right: witnesses.clone(),
                });
                return true;
            }
            false
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// Calls `visit` on each `k`-subset of `items` in lexicographic order until
/// it returns true.
fn for_each_subset(
    items: &[usize],
    k: usize,
    start: usize,
    current: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if current.len() == k {
        return visit(current);
    }
    let need = k - current.len();
    for i in start..=items.len().saturating_sub(need) {
        if i >= items.len() {
            break;
        }
        current.push(items[i]);
        let stop = for_each_subset(items, k, i + 1, current, visit);
        current.pop();
        if stop {
            return true;
        }
    }
    false
}
