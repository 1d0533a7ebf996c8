//! End-to-end runs of the constructive arguments on concrete instances.
//! Each run returns a list of named checks that either pass or fail.

use std::fmt;

use rand::seq::index::sample;
use rand::Rng;

use crate::arrowing::{decide_arrowing, verify_coloring, ArrowVerdict, SearchBudget};
use crate::bounds::{kmn_constant, kmn_expected_copies, kmn_expected_upper, monte_carlo_kmn};
use crate::construct::{
    bipartite_double_cover, bipartite_edge_coloring, high_girth_regular, one_factorization,
    random_coloring, star_free_coloring,
};
use crate::graph::{check_bipartition, girth, EdgeColoring, Embedding, Girth, Graph};
use crate::pattern::{make_pattern_graph, PatternSpec};
use crate::patterns::{embed_tree, kst_find, kst_threshold, majority_color_class, peel_dense_core};
use crate::rng::{derive_seed, seeded};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "CHECK {} {} {}", self.name, verdict, self.detail)
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// A simple bipartite graph with maximum degree exactly `d` and at most
/// `max_vertices` vertices (which must be at least `2d`). Vertex 0 gets
/// full degree; other edges are added at random without exceeding `d`.
pub fn random_bipartite_host(d: usize, max_vertices: usize, seed: u64) -> Graph {
    assert!(d >= 1 && max_vertices >= 2 * d);
    let mut rng = seeded(seed);
    let a = rng.random_range(d..=max_vertices - d);
    let b = rng.random_range(d..=max_vertices - a);
    let mut deg = vec![0usize; a + b];
    let mut present = vec![false; a * b];
    let mut edges = Vec::new();
    let mut add = |i: usize, j: usize, deg: &mut Vec<usize>, edges: &mut Vec<(usize, usize)>| {
        if present[i * b + j] || deg[i] == d || deg[a + j] == d {
            return;
        }
        present[i * b + j] = true;
        deg[i] += 1;
        deg[a + j] += 1;
        edges.push((i, a + j));
    };
    for j in 0..d {
        add(0, j, &mut deg, &mut edges);
    }
    let density = rng.random_range(0.2..0.9);
    for i in 0..a {
        for j in 0..b {
            if rng.random_bool(density) {
                add(i, j, &mut deg, &mut edges);
            }
        }
    }
    edges.sort_unstable();
    Graph::new(a + b, edges)
        .and_then(|g| g.with_bipartition(a))
        .expect("edges run from A to B")
}

/// Star formula, both directions, for every `(s, n)` given: the star with
/// `s(n−1)+1` leaves arrows `S_n`, the one with `s(n−1)` leaves does not,
/// and `hosts` random bipartite hosts of maximum degree `s(n−1)` get a
/// coloring free of monochromatic `S_n`.
pub fn verify_lemma1(pairs: &[(usize, usize)], hosts: usize, seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    for &(s, n) in pairs {
        let d = s * (n - 1);
        let spec = PatternSpec::Star(n);
        let budget = SearchBudget::default();
        let upper = decide_arrowing(
            &make_pattern_graph(&PatternSpec::Star(d + 1)),
            &spec,
            s,
            budget,
        );
        checks.push(Check::new(
            format!("lemma1-upper s={s} n={n}"),
            matches!(upper, ArrowVerdict::Arrows { .. }),
            format!("K_(1,{}) -> S{n}: {:?}", d + 1, upper.arrows()),
        ));
        let lower = decide_arrowing(&make_pattern_graph(&PatternSpec::Star(d)), &spec, s, budget);
        let lower_ok = match &lower {
            ArrowVerdict::NotArrows { certificate } => verify_coloring(
                &make_pattern_graph(&PatternSpec::Star(d)),
                certificate,
                &spec,
            ),
            _ => false,
        };
        checks.push(Check::new(
            format!("lemma1-star-lower s={s} n={n}"),
            lower_ok,
            format!("K_(1,{d}) has a certificate"),
        ));
        let mut good = 0;
        let mut first_bad = None;
        for i in 0..hosts {
            let h = random_bipartite_host(
                d,
                30,
                derive_seed(seed, (s * 100 + n) as u64 * 1000 + i as u64),
            );
            let ok = h.max_degree() == d
                && star_free_coloring(&h, s, n).is_ok_and(|col| verify_coloring(&h, &col, &spec));
            if ok {
                good += 1;
            } else if first_bad.is_none() {
                first_bad = Some(i);
            }
        }
        checks.push(Check::new(
            format!("lemma1-lower s={s} n={n}"),
            good == hosts,
            format!(
                "{good}/{hosts} hosts colored without monochromatic S{n}{}",
                first_bad.map_or(String::new(), |i| format!(" (first failure: host {i})"))
            ),
        ));
    }
    checks
}

/// The monochromatic tree found in `class` (a spanning color class of the
/// host): peel to the dense core, then grow the tree greedily.
fn tree_in_class(
    class: &Graph,
    tree: &Graph,
    root_degree: Option<usize>,
) -> Result<Embedding, String> {
    let peeled = peel_dense_core(class).map_err(|e| e.to_string())?;
    let outcome = embed_tree(&peeled.core, tree, root_degree).map_err(|e| e.to_string())?;
    let Some(inner) = outcome.embedding() else {
        return Err(format!("{outcome:?}"));
    };
    let embedding = Embedding {
        map: inner.map.iter().map(|&v| peeled.vertex_map[v]).collect(),
    };
    if !embedding.is_valid(tree, class) {
        return Err("embedding does not map into the color class".into());
    }
    Ok(embedding)
}

/// Colorings meant to stress the argument on a regular bipartite host:
/// groupings of a 1-factorization, a proper edge coloring folded mod `s`,
/// one matching against the rest, single colors, and parity/side rules.
pub fn adversarial_colorings(h: &Graph, s: usize) -> Vec<EdgeColoring> {
    let e = h.edge_count();
    let make = |f: &dyn Fn(usize) -> usize| {
        EdgeColoring::new(s, (0..e).map(|i| f(i) % s).collect()).expect("colors reduced mod s")
    };
    let mut out = Vec::new();
    if let Ok(fact) = one_factorization(h) {
        let d = fact.factors.len();
        let mut factor_of = vec![0usize; e];
        for (k, f) in fact.factors.iter().enumerate() {
            for &i in f {
                factor_of[i] = k;
            }
        }
        let block = d.div_ceil(s).max(1);
        out.push(make(&|i| factor_of[i]));
        out.push(make(&|i| factor_of[i] / block));
        out.push(make(&|i| usize::from(factor_of[i] != 0)));
        out.push(make(&|i| usize::from(factor_of[i] + 1 < d)));
    }
    if let Ok(proper) = bipartite_edge_coloring(h, h.max_degree()) {
        out.push(make(&|i| proper[i]));
    }
    out.push(EdgeColoring::monochromatic(s, e));
    out.push(make(&|_| s - 1));
    out.push(make(&|i| {
        let (u, v) = h.edge(i);
        u + v
    }));
    out.push(make(&|i| h.edge(i).0));
    out.push(make(&|i| i));
    out
}

fn run_colorings(
    name: &str,
    host: &Graph,
    tree: &Graph,
    colorings: &[EdgeColoring],
    root_degree: Option<usize>,
) -> Check {
    let mut failures = Vec::new();
    for (i, col) in colorings.iter().enumerate() {
        let result = majority_color_class(host, col)
            .map_err(|e| e.to_string())
            .and_then(|(_, class)| tree_in_class(&class, tree, root_degree));
        if let Err(why) = result {
            failures.push(format!("#{i}: {why}"));
        }
    }
    let detail = if failures.is_empty() {
        format!(
            "{}/{} colorings contain a monochromatic tree",
            colorings.len(),
            colorings.len()
        )
    } else {
        format!(
            "{}/{} succeeded; {}",
            colorings.len() - failures.len(),
            colorings.len(),
            failures.join("; ")
        )
    };
    Check::new(name, failures.is_empty(), detail)
}

/// A host for `T` with `s` colors: the double cover of a
/// `2s(Δ(T)−1)`-regular graph of girth above `|V(T)|`, then `random`
/// seeded colorings plus the adversarial ones, each searched for a
/// monochromatic `T`.
pub fn verify_theorem3(tree: &Graph, s: usize, random: usize, seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    if !tree.is_tree() || tree.max_degree() < 2 {
        checks.push(Check::new(
            "theorem3-input",
            false,
            "need a tree with maximum degree >= 2",
        ));
        return checks;
    }
    let d = 2 * s * (tree.max_degree() - 1);
    let g = tree.vertex_count() + 1;
    let base = match high_girth_regular(d, g, seed) {
        Ok(base) => base,
        Err(e) => {
            checks.push(Check::new("theorem3-base", false, e.to_string()));
            return checks;
        }
    };
    let host = bipartite_double_cover(&base);
    let host_girth = girth(&host);
    checks.push(Check::new(
        "theorem3-host",
        host.max_degree() == d
            && host.degrees().iter().all(|&x| x == d)
            && check_bipartition(&host).is_some()
            && host_girth.at_least(g),
        format!(
            "{d}-regular bipartite, {} vertices, girth {} (need >= {g})",
            host.vertex_count(),
            show_girth(host_girth)
        ),
    ));
    let mut colorings: Vec<EdgeColoring> = (0..random)
        .map(|i| random_coloring(&host, s, derive_seed(seed, 1 + i as u64)))
        .collect();
    let adversarial = adversarial_colorings(&host, s);
    checks.push(Check::new(
        "theorem3-adversarial-set",
        adversarial.len() == 10,
        format!("{} adversarial colorings", adversarial.len()),
    ));
    colorings.extend(adversarial);
    checks.push(run_colorings(
        "theorem3-embed",
        &host,
        tree,
        &colorings,
        None,
    ));
    checks
}

/// Center with `k` legs of `leg` edges each.
pub fn spider(k: usize, leg: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for _ in 0..k {
        let mut prev = 0;
        for _ in 0..leg {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::new(next, edges).expect("spider edges are in range")
}

fn show_girth(g: Girth) -> String {
    match g {
        Girth::Finite(x) => x.to_string(),
        Girth::Infinite => "inf".to_string(),
    }
}

/// A `(s(k−1)+1)`-regular bipartite host of girth above `|V(T)|` for the
/// spider `T` with `k` legs of length 2, and `colorings` seeded colorings.
/// The base graph only needs girth `|V(T)|`: its double cover is bipartite,
/// so the cover's girth is even and at least the base girth.
pub fn verify_theorem2(k: usize, s: usize, colorings: usize, seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    if k < 2 || s < 1 {
        checks.push(Check::new(
            "theorem2-input",
            false,
            "need k >= 2 and s >= 1",
        ));
        return checks;
    }
    let tree = spider(k, 2);
    let d = s * (k - 1) + 1;
    let need = tree.vertex_count() + 1;
    let base_girth = need - 1 + need % 2;
    let host = match high_girth_regular(d, base_girth, seed) {
        Ok(base) => bipartite_double_cover(&base),
        Err(e) => {
            checks.push(Check::new("theorem2-base", false, e.to_string()));
            return checks;
        }
    };
    let host_girth = girth(&host);
    checks.push(Check::new(
        "theorem2-host",
        host.degrees().iter().all(|&x| x == d)
            && check_bipartition(&host).is_some()
            && host_girth.at_least(need),
        format!(
            "{d}-regular bipartite, {} vertices, girth {} (need >= {need})",
            host.vertex_count(),
            show_girth(host_girth)
        ),
    ));
    let cols: Vec<EdgeColoring> = (0..colorings)
        .map(|i| random_coloring(&host, s, derive_seed(seed, 1 + i as u64)))
        .collect();
    checks.push(run_colorings(
        "theorem2-embed",
        &host,
        &tree,
        &cols,
        Some(k),
    ));
    checks
}

/// The `K_{m,n}` threshold at `(M, N, p)` and `samples` random
/// `N·p`-edge subgraphs of `K_{M,N}`, each searched for `K_{m,n}`.
pub fn verify_lemma6(
    big_m: usize,
    big_n: usize,
    p: usize,
    m: usize,
    n: usize,
    samples: usize,
    seed: u64,
) -> Vec<Check> {
    let threshold = kst_threshold(big_m as u64, big_n as u64, p as u64, m as u64, n as u64);
    let mut checks = vec![Check::new(
        "lemma6-threshold",
        threshold == Ok(true),
        format!("N·C(p,m) > (n-1)·C(M,m): {threshold:?}"),
    )];
    let all: Vec<(usize, usize)> = (0..big_m)
        .flat_map(|i| (0..big_n).map(move |j| (i, big_m + j)))
        .collect();
    let mut found = 0;
    for t in 0..samples {
        let mut rng = seeded(derive_seed(seed, t as u64));
        let mut edges: Vec<(usize, usize)> = sample(&mut rng, all.len(), big_n * p)
            .into_iter()
            .map(|i| all[i])
            .collect();
        edges.sort_unstable();
        let g = Graph::new(big_m + big_n, edges)
            .and_then(|g| g.with_bipartition(big_m))
            .expect("edges run from A to B");
        if let Ok(Some(cert)) = kst_find(&g, m, n) {
            if cert.is_valid(&g, m, n) {
                found += 1;
            }
        }
    }
    checks.push(Check::new(
        "lemma6-search",
        found == samples,
        format!(
            "{found}/{samples} subgraphs with {} edges contain K_({m},{n})",
            big_n * p
        ),
    ));
    checks
}

/// Exact expectation arithmetic and a seeded Monte Carlo run on `K_N`.
pub fn verify_theorem1_mc(
    big_n: u64,
    m: u64,
    n: u64,
    s: u64,
    trials: u64,
    seed: u64,
) -> Vec<Check> {
    let mut checks = Vec::new();
    let (upper, copies) = match (
        kmn_expected_upper(big_n, m, n, s),
        kmn_expected_copies(big_n, m, n, s),
    ) {
        (Ok(u), Ok(c)) => (u, c),
        (Err(e), _) | (_, Err(e)) => {
            checks.push(Check::new("theorem1-input", false, e.to_string()));
            return checks;
        }
    };
    let factor = if m == n { 2 } else { 1 };
    let (u, c) = (
        upper.exact().expect("exact"),
        copies.exact().expect("exact"),
    );
    checks.push(Check::new(
        "theorem1-expectation",
        *u == c * num_rational::BigRational::from_integer(factor.into()),
        format!("labeled bound {u} = {factor} x expected copies {c}"),
    ));
    match monte_carlo_kmn(big_n, m, n, s, trials, seed) {
        Ok(mc) => {
            checks.push(Check::new(
                "theorem1-mc-mean",
                mc.mean_within(3.0),
                format!(
                    "mean {:.5} ± {:.5} vs exact {c} over {trials} trials",
                    mc.mean_count, mc.count_std_error
                ),
            ));
            checks.push(Check::new(
                "theorem1-mc-markov",
                mc.markov_consistent(),
                format!(
                    "existence frequency {:.5} ± {:.5} vs bound {u}",
                    mc.existence_frequency, mc.frequency_std_error
                ),
            ));
        }
        Err(e) => checks.push(Check::new("theorem1-mc", false, e.to_string())),
    }
    if m >= 2 {
        if let Ok(k) = kmn_constant(m, s) {
            let pass = if k.m_over_s_integral {
                k.within_cap == Some(true)
            } else {
                true
            };
            checks.push(Check::new(
                "theorem1-constant",
                pass,
                format!(
                    "C={} with M={}{}, cap s^m e^(s^2-1) = {}",
                    k.c,
                    k.big_m,
                    if k.m_over_s_integral {
                        ""
                    } else {
                        " (non-integral M/s)"
                    },
                    k.cap.to_decimal(12)
                ),
            ));
        }
    }
    checks
}

/// Every NotArrows certificate for a bipartite host also witnesses
/// non-arrowing without the bipartite restriction; checked directly.
pub fn certificate_is_general(h: &Graph, col: &EdgeColoring, pat: &PatternSpec) -> bool {
    verify_coloring(&h.clone().without_bipartition(), col, pat)
}
