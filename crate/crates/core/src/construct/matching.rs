//! Hopcroft–Karp maximum matching on a bipartite multigraph given as an
//! edge list between left vertices `0..left` and right vertices `0..right`.

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// For each left vertex, the index (into `edges`) of its matched edge.
pub fn maximum_matching(left: usize, right: usize, edges: &[(usize, usize)]) -> Vec<Option<usize>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); left];
    for (i, &(l, r)) in edges.iter().enumerate() {
        adj[l].push((r, i));
    }
    let mut match_left = vec![NONE; left];
    let mut match_right = vec![NONE; right];
    let mut edge_of_left = vec![NONE; left];
    let mut dist = vec![usize::MAX; left];

    loop {
        // Layer the graph from free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..left {
            if match_left[l] == NONE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &(r, _) in &adj[l] {
                let next = match_right[r];
                if next == NONE {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut iter = vec![0usize; left];
        for l in 0..left {
            if match_left[l] == NONE {
                augment(
                    l,
                    &adj,
                    &mut match_left,
                    &mut match_right,
                    &mut edge_of_left,
                    &mut dist,
                    &mut iter,
                );
            }
        }
    }
    edge_of_left
        .into_iter()
        .map(|e| (e != NONE).then_some(e))
        .collect()
}

fn augment(
    start: usize,
    adj: &[Vec<(usize, usize)>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    edge_of_left: &mut [usize],
    dist: &mut [usize],
    iter: &mut [usize],
) -> bool {
    // Iterative DFS along the layered graph.
    let mut stack = vec![start];
    let mut via: Vec<(usize, usize)> = Vec::new();
    while let Some(&l) = stack.last() {
        if iter[l] == adj[l].len() {
            dist[l] = usize::MAX;
            stack.pop();
            via.pop();
            continue;
        }
        let (r, e) = adj[l][iter[l]];
        iter[l] += 1;
        let next = match_right[r];
        if next == NONE {
            via.push((r, e));
            for (&l, &(r, e)) in stack.iter().zip(&via) {
                match_left[l] = r;
                match_right[r] = l;
                edge_of_left[l] = e;
            }
            return true;
        }
        if dist[next] == dist[l].wrapping_add(1) {
            via.push((r, e));
            stack.push(next);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn size(m: &[Option<usize>]) -> usize {
        m.iter().flatten().count()
    }

    #[test]
    fn perfect_on_complete_bipartite() {
        let edges: Vec<_> = (0..4).flat_map(|l| (0..4).map(move |r| (l, r))).collect();
        let m = maximum_matching(4, 4, &edges);
        assert_eq!(size(&m), 4);
        let mut rights: Vec<_> = m.iter().map(|e| edges[e.unwrap()].1).collect();
        rights.sort();
        assert_eq!(rights, vec![0, 1, 2, 3]);
    }

    #[test]
    fn needs_augmenting_paths() {
        // Greedy on left order would match 0-0 and leave 1 stranded.
        let edges = vec![(0, 0), (0, 1), (1, 0)];
        assert_eq!(size(&maximum_matching(2, 2, &edges)), 2);
    }

    #[test]
    fn brute_force_agreement() {
        // Exhaustive maximum over all edge subsets for small random instances.
        let mut state = 12345u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let l = 1 + (next() % 4) as usize;
            let r = 1 + (next() % 4) as usize;
            let m = (next() % 9) as usize;
            let edges: Vec<_> = (0..m)
                .map(|_| ((next() % l as u64) as usize, (next() % r as u64) as usize))
                .collect();
            let mut best = 0;
            for mask in 0u32..(1 << m) {
                let chosen: Vec<_> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
                let mut ls: Vec<_> = chosen.iter().map(|&i| edges[i].0).collect();
                let mut rs: Vec<_> = chosen.iter().map(|&i| edges[i].1).collect();
                ls.sort();
                ls.dedup();
                rs.sort();
                rs.dedup();
                if ls.len() == chosen.len() && rs.len() == chosen.len() {
                    best = best.max(chosen.len());
                }
            }
            let got = maximum_matching(l, r, &edges);
            assert_eq!(size(&got), best, "{edges:?}");
            let mut seen_r = vec![false; r];
            for (li, e) in got.iter().enumerate() {
                if let Some(e) = e {
                    assert_eq!(edges[*e].0, li);
                    assert!(!seen_r[edges[*e].1]);
                    seen_r[edges[*e].1] = true;
                }
            }
        }
    }
}
