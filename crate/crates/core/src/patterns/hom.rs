use crate::graph::{Adjacency, Graph};

/// Searches for a locally injective homomorphism `g → h`: an edge-preserving
/// vertex map that is injective on every neighbourhood. Returns the
/// lexicographically least such map, or `None` after exhausting the search.
///
/// Exponential in the worst case (`|V(h)|^|V(g)|`); meant for small graphs.
pub fn locally_injective_hom(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let ga = g.adjacency();
    let ha = h.adjacency();
    let gn: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|v| ga.distinct_neighbors(v))
        .collect();
    let hn: Vec<Vec<usize>> = (0..h.vertex_count())
        .map(|v| ha.distinct_neighbors(v))
        .collect();
    let mut map = vec![usize::MAX; g.vertex_count()];
    extend(0, &gn, &hn, &ha, &mut map).then_some(map)
}

fn extend(
    x: usize,
    gn: &[Vec<usize>],
    hn: &[Vec<usize>],
    ha: &Adjacency,
    map: &mut [usize],
) -> bool {
    if x == map.len() {
        return true;
    }
    let mapped: Vec<usize> = gn[x].iter().copied().filter(|&y| y < x).collect();
    // The neighbourhood of x itself must map injectively.
    let mut around: Vec<usize> = mapped.iter().map(|&y| map[y]).collect();
    around.sort_unstable();
    if around.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    // Candidates come from the neighbourhood of any already-mapped
    // neighbour; scanning them in ascending order keeps the witness
    // lexicographically least.
    let candidates: Vec<usize> = match mapped.first() {
        Some(&y) => hn[map[y]].clone(),
        None => (0..hn.len()).collect(),
    };
    for c in candidates {
        if hn[c].len() < gn[x].len() {
            continue;
        }
        // edge preserved, and c is new among the images around each y
        let ok = mapped
            .iter()
            .all(|&y| ha.adjacent(c, map[y]) && gn[y].iter().all(|&z| z >= x || map[z] != c));
        if !ok {
            continue;
        }
        map[x] = c;
        if extend(x + 1, gn, hn, ha, map) {
            return true;
        }
        map[x] = usize::MAX;
    }
    false
}

/// Checks the defining properties of a locally injective homomorphism.
pub fn is_locally_injective_hom(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    if map.len() != g.vertex_count() || map.iter().any(|&v| v >= h.vertex_count()) {
        return false;
    }
    let ha = h.adjacency();
    let ga = g.adjacency();
    if !g.edges().iter().all(|&(u, v)| ha.adjacent(map[u], map[v])) {
        return false;
    }
    (0..g.vertex_count()).all(|v| {
        let mut images: Vec<usize> = ga.distinct_neighbors(v).iter().map(|&w| map[w]).collect();
        let len = images.len();
        images.sort_unstable();
        images.dedup();
        images.len() == len
    })
}
