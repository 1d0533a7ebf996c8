use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use degree_ramsey::arrowing::{
    brute_force_arrowing, decide_arrowing, verify_coloring, ArrowVerdict, SearchBudget,
};
use degree_ramsey::bounds::{
    kmn_constant, kmn_expected_copies, kmn_expected_upper, kmn_upper_constant, monte_carlo_kmn,
    NON_INTEGRAL,
};
use degree_ramsey::construct::{bipartite_double_cover, one_factorization};
use degree_ramsey::graph::{check_bipartition, degree_stats, girth, Girth, Graph};
use degree_ramsey::pattern::{parse_pattern, PatternSpec};
use degree_ramsey::patterns::peel_dense_core;
use degree_ramsey::pipelines::{
    all_pass, verify_lemma1, verify_lemma6, verify_theorem2, verify_theorem3, Check,
};
use degree_ramsey::rng::{derive_seed, seeded};

const SEED: u64 = 20_240_601;

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_checks(checks: Vec<Check>) -> Outcome {
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.to_string())
        .collect();
    Outcome {
        pass: all_pass(&checks),
        detail: if failed.is_empty() {
            format!("{} checks passed", checks.len())
        } else {
            failed.join(" | ")
        },
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn star_formula() -> Outcome {
    let pairs: Vec<(usize, usize)> = [2, 3]
        .iter()
        .flat_map(|&s| [2, 3, 4].map(move |n| (s, n)))
        .collect();
    from_checks(verify_lemma1(&pairs, 20, SEED))
}

fn random_small_host(rng: &mut impl Rng) -> Graph {
    let n = rng.random_range(2..=7usize);
    let mut all: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    all.shuffle(rng);
    let m = rng.random_range(1..=all.len().min(8));
    let mut edges = all[..m].to_vec();
    edges.sort_unstable();
    Graph::new(n, edges).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let patterns: Vec<PatternSpec> = ["S2", "S3", "P4", "C4", "K{2,2}"]
        .iter()
        .map(|p| parse_pattern(p).unwrap())
        .collect();
    let mut rng = seeded(SEED);
    let mut disagreements = Vec::new();
    let mut bad_certificates = 0;
    let instances = 240;
    for i in 0..instances {
        let h = random_small_host(&mut rng);
        let pat = &patterns[i % patterns.len()];
        let s = rng.random_range(2..=3usize);
        let fast = decide_arrowing(&h, pat, s, SearchBudget::default());
        let slow = brute_force_arrowing(&h, pat, s).unwrap();
        if fast.arrows() != slow.arrows() || fast.arrows().is_none() {
            disagreements.push(format!("#{i} {pat} s={s}"));
        }
        for v in [&fast, &slow] {
            if let ArrowVerdict::NotArrows { certificate } = v {
                let general = h.clone().without_bipartition();
                if !verify_coloring(&h, certificate, pat)
                    || !verify_coloring(&general, certificate, pat)
                {
                    bad_certificates += 1;
                }
            }
        }
    }
    Outcome {
        pass: disagreements.is_empty() && bad_certificates == 0,
        detail: format!(
            "{instances} instances, {} disagreements, {bad_certificates} bad certificates{}",
            disagreements.len(),
            if disagreements.is_empty() {
                String::new()
            } else {
                format!(": {}", disagreements.join(", "))
            }
        ),
    }
}

fn theorem3_pipeline() -> Outcome {
    let p5 = degree_ramsey::pattern::make_pattern_graph(&PatternSpec::Path(5));
    from_checks(verify_theorem3(&p5, 2, 50, SEED))
}

fn theorem2_pipeline() -> Outcome {
    from_checks(verify_theorem2(3, 2, 30, SEED))
}

fn kst_search() -> Outcome {
    from_checks(verify_lemma6(4, 7, 2, 2, 2, 500, SEED))
}

fn theorem1_arithmetic() -> Outcome {
    let mut problems = Vec::new();
    let upper = kmn_expected_upper(6, 2, 2, 2).unwrap();
    if upper.exact() != Some(&rat(45, 4)) {
        problems.push(format!("expected upper {}", upper.value));
    }
    let copies = kmn_expected_copies(6, 2, 2, 2).unwrap();
    if copies.exact() != Some(&rat(45, 8)) {
        problems.push(format!("expected copies {}", copies.value));
    }
    let mc = monte_carlo_kmn(6, 2, 2, 2, 10_000, SEED).unwrap();
    if !mc.mean_within(3.0) {
        problems.push(format!("mean {} ± {}", mc.mean_count, mc.count_std_error));
    }
    let k = kmn_constant(2, 2).unwrap();
    if k.c != rat(5, 1) || k.within_cap != Some(true) || !k.cap.certainly_ge(&rat(5, 1)) {
        problems.push(format!("constant {} cap {}", k.c, k.cap));
    }
    Outcome {
        pass: problems.is_empty(),
        detail: if problems.is_empty() {
            format!(
                "45/4 and 45/8 exact; MC mean {:.4} ± {:.4}; C = 5 <= 4e^3 = {}",
                mc.mean_count,
                mc.count_std_error,
                k.cap.to_decimal(6)
            )
        } else {
            problems.join("; ")
        },
    }
}

fn constant_sweep() -> Outcome {
    let mut checked = 0;
    let mut flagged = 0;
    let mut problems = Vec::new();
    for m in 2..=8u64 {
        for s in 1..=5u64 {
            let k = kmn_constant(m, s).unwrap();
            let report = kmn_upper_constant(m, s).unwrap();
            if k.m_over_s_integral {
                checked += 1;
                if k.within_cap != Some(true) {
                    problems.push(format!("m={m} s={s}: C={} cap={}", k.c, k.cap));
                }
            } else {
                flagged += 1;
                if !report.has_flag(NON_INTEGRAL) {
                    problems.push(format!("m={m} s={s}: missing flag"));
                }
            }
        }
    }
    Outcome {
        pass: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{checked} integral cases within cap, {flagged} flagged non-integral")
        } else {
            problems.join("; ")
        },
    }
}

fn random_regular_bipartite(rng: &mut impl Rng) -> (Graph, usize) {
    let k = rng.random_range(1..=12usize);
    let d = rng.random_range(1..=6usize);
    let mut edges = Vec::new();
    for _ in 0..d {
        let mut perm: Vec<usize> = (0..k).collect();
        perm.shuffle(rng);
        edges.extend(perm.iter().enumerate().map(|(a, &b)| (a, k + b)));
    }
    (
        Graph::new(2 * k, edges)
            .unwrap()
            .with_bipartition(k)
            .unwrap(),
        d,
    )
}

fn random_simple(rng: &mut impl Rng, min_edges: usize) -> Graph {
    loop {
        let n = rng.random_range(1..=14usize);
        let p = rng.random_range(0.05..0.8);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.random_bool(p))
            .collect();
        if edges.len() >= min_edges {
            return Graph::new(n, edges).unwrap();
        }
    }
}

fn girth_le(a: Girth, b: Girth) -> bool {
    match (a, b) {
        (_, Girth::Infinite) => true,
        (Girth::Infinite, Girth::Finite(_)) => false,
        (Girth::Finite(x), Girth::Finite(y)) => x <= y,
    }
}

fn structural_suites() -> Outcome {
    let mut violations = Vec::new();
    let mut rng = seeded(derive_seed(SEED, 8));
    for i in 0..100 {
        let (h, d) = random_regular_bipartite(&mut rng);
        match one_factorization(&h) {
            Ok(f) => {
                if f.factors.len() != d {
                    violations.push(format!(
                        "factorization #{i}: {} factors for d={d}",
                        f.factors.len()
                    ));
                }
                if let Err(e) = f.check(&h) {
                    violations.push(format!("factorization #{i}: {e}"));
                }
            }
            Err(e) => violations.push(format!("factorization #{i}: {e}")),
        }
    }
    for i in 0..100 {
        let g = random_simple(&mut rng, 0);
        let c = bipartite_double_cover(&g);
        let n = g.vertex_count();
        let (dg, dc) = (g.degrees(), c.degrees());
        let preserved = (0..n).all(|v| dc[v] == dg[v] && dc[n + v] == dg[v]);
        if check_bipartition(&c).is_none() || !preserved || !girth_le(girth(&g), girth(&c)) {
            violations.push(format!("double cover #{i}"));
        }
    }
    for i in 0..200 {
        let g = random_simple(&mut rng, 1);
        let before = degree_stats(&g).unwrap();
        let core = peel_dense_core(&g).unwrap();
        let (v, e) = (
            core.core.vertex_count() as u64,
            core.core.edge_count() as u64,
        );
        let min_above_ratio = core.core_stats.min_degree as u64 * v > e;
        let average_kept = core.core_stats.average_degree >= before.average_degree;
        if !min_above_ratio || !average_kept {
            violations.push(format!("peel #{i}"));
        }
    }
    Outcome {
        pass: violations.is_empty(),
        detail: if violations.is_empty() {
            "400 instances, 0 violations".to_string()
        } else {
            violations.join(", ")
        },
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "star formula both directions",
            Duration::from_secs(60),
            star_formula,
        ),
        (
            "oracle equivalence",
            Duration::from_secs(120),
            oracle_equivalence,
        ),
        (
            "tree pipeline via double cover (P5, s=2)",
            Duration::from_secs(120),
            theorem3_pipeline,
        ),
        (
            "spider pipeline (k=3, s=2)",
            Duration::from_secs(300),
            theorem2_pipeline,
        ),
        (
            "K_(2,2) counting threshold and search",
            Duration::from_secs(30),
            kst_search,
        ),
        (
            "K_(m,n) arithmetic and Monte Carlo",
            Duration::from_secs(600),
            theorem1_arithmetic,
        ),
        (
            "constant cap sweep",
            Duration::from_secs(600),
            constant_sweep,
        ),
        (
            "structural property suites",
            Duration::from_secs(600),
            structural_suites,
        ),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let pass = outcome.pass && in_time;
        if !pass {
            failures += 1;
        }
        println!(
            "{} criterion {}: {name} ({:.2}s{}) {}",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64(),
            if in_time {
                String::new()
            } else {
                format!(", limit {}s", limit.as_secs())
            },
            outcome.detail
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
