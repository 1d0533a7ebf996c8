//! Closed-form bounds on degree Ramsey numbers, evaluated exactly where
//! the formula is rational and as certified intervals otherwise.

mod monte_carlo;
pub mod precise;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use thiserror::Error;

pub use monte_carlo::{
    count_monochromatic_kmn, monte_carlo_kmn, MonteCarloError, MonteCarloReport,
};
pub use precise::Interval;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
    Exact,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
            Side::Exact => "exact",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Exact(BigRational),
    /// Certified enclosure; rendered as its lower end to 50 places.
    Approx(Interval),
    /// Sample mean with its standard error.
    Estimate {
        mean: f64,
        std_error: f64,
    },
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(r) => write!(f, "{r}"),
            BoundValue::Approx(iv) => write!(f, "{iv}"),
            BoundValue::Estimate { mean, std_error } => write!(f, "{mean:.6}±{std_error:.6}"),
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    #[serde(serialize_with = "ordered_map")]
    pub inputs: Vec<(String, i64)>,
    pub value: BoundValue,
    pub side: Side,
    pub source: String,
    pub flags: Vec<String>,
}

fn ordered_map<S: Serializer>(pairs: &[(String, i64)], s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(pairs.len()))?;
    for (k, v) in pairs {
        map.serialize_entry(k, v)?;
    }
    map.end()
}

impl BoundReport {
    fn new(
        name: &str,
        inputs: &[(&str, i64)],
        value: BoundValue,
        side: Side,
        source: &str,
    ) -> Self {
        BoundReport {
            name: name.to_string(),
            inputs: inputs.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            value,
            side,
            source: source.to_string(),
            flags: Vec::new(),
        }
    }

    fn flag(mut self, flag: impl Into<String>) -> Self {
        self.flags.push(flag.into());
        self
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match &self.value {
            BoundValue::Exact(r) => Some(r),
            _ => None,
        }
    }

    /// `name<TAB>inputs<TAB>value<TAB>side<TAB>source`, plus a sixth
    /// comma-separated flags column when any flag is set.
    pub fn to_tsv(&self) -> String {
        let inputs: Vec<String> = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let mut line = format!(
            "{}\t{}\t{}\t{}\t{}",
            self.name,
            inputs.join(" "),
            self.value,
            self.side,
            self.source
        );
        if !self.flags.is_empty() {
            line.push('\t');
            line.push_str(&self.flags.join(","));
        }
        line
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn big(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn signed(v: u64) -> i64 {
    i64::try_from(v).expect("parameter fits in i64")
}

/// Binomial coefficient `C(n, k)`, zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1 at every step
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Generalized binomial `x(x−1)…(x−k+1)/k!` for rational `x`.
pub fn binomial_rational(x: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc *= x - int(signed(i));
        acc /= int(signed(i + 1));
    }
    acc
}

pub const OUT_OF_HYPOTHESIS: &str = "out-of-hypothesis";
pub const NON_INTEGRAL: &str = "non-integral-M/s";

/// The star formula `s(n−1)+1`, exact for `n ≥ 2`, `s ≥ 2`.
pub fn bound_star(n: u64, s: u64) -> BoundReport {
    let value = int(signed(s) * (signed(n) - 1) + 1);
    let r = BoundReport::new(
        "star",
        &[("n", signed(n)), ("s", signed(s))],
        BoundValue::Exact(value),
        Side::Exact,
        "Lemma1",
    );
    if n < 2 || s < 2 {
        r.flag(OUT_OF_HYPOTHESIS)
    } else {
        r
    }
}

/// `s(k−1)+1` for trees with one vertex of degree `k` and all others of
/// degree at most `⌈k/2⌉`.
pub fn bound_tree_spider(k: u64, s: u64) -> Result<BoundReport, BoundError> {
    if k == 0 {
        return Err(BoundError::Precondition("k must be at least 1".into()));
    }
    let r = BoundReport::new(
        "tree-spider",
        &[("k", signed(k)), ("s", signed(s))],
        BoundValue::Exact(int(signed(s) * (signed(k) - 1) + 1)),
        Side::Exact,
        "Theorem2",
    );
    Ok(if k == 1 { r.flag("k=1-single-edge") } else { r })
}

/// `2s(Δ(T)−1)` for any tree.
pub fn bound_tree_upper(delta_t: u64, s: u64) -> Result<BoundReport, BoundError> {
    if delta_t == 0 {
        return Err(BoundError::Precondition(
            "delta_T must be at least 1".into(),
        ));
    }
    let r = BoundReport::new(
        "tree-upper",
        &[("delta_T", signed(delta_t)), ("s", signed(s))],
        BoundValue::Exact(int(2 * signed(s) * (signed(delta_t) - 1))),
        Side::Upper,
        "Theorem3",
    );
    Ok(if delta_t == 1 {
        r.flag("degenerate-tree")
    } else {
        r
    })
}

fn kmn_params(big_n: u64, m: u64, n: u64) -> Result<(), BoundError> {
    if m < 2 || n < 1 || m + n > big_n {
        return Err(BoundError::Precondition(format!(
            "need m >= 2, n >= 1, m + n <= N (N={big_n} m={m} n={n})"
        )));
    }
    Ok(())
}

/// `s·C(N, m+n)·C(m+n, m)/s^{mn}`: an upper bound on the probability that a
/// uniformly random `s`-coloring of `K_N` has a monochromatic `K_{m,n}`.
/// It counts ordered (left, right) choices, so for `m = n` every copy is
/// counted twice; [`kmn_expected_copies`] gives the unordered count.
pub fn kmn_expected_upper(big_n: u64, m: u64, n: u64, s: u64) -> Result<BoundReport, BoundError> {
    kmn_params(big_n, m, n)?;
    if s == 0 {
        return Err(BoundError::Precondition("s must be positive".into()));
    }
    let value = big(BigUint::from(s) * binomial(big_n, m + n) * binomial(m + n, m))
        / big(BigUint::from(s).pow((m * n) as u32));
    let vacuous = value >= BigRational::one();
    let mut r = BoundReport::new(
        "kmn-expected-upper",
        &[
            ("N", signed(big_n)),
            ("m", signed(m)),
            ("n", signed(n)),
            ("s", signed(s)),
        ],
        BoundValue::Exact(value),
        Side::Upper,
        "Theorem1",
    );
    if m == n {
        r = r.flag("double-count-factor=2");
    }
    if vacuous {
        r = r.flag("vacuous");
    }
    Ok(r)
}

/// Number of `K_{m,n}` subgraphs of `K_N`.
pub fn kmn_copy_count(big_n: u64, m: u64, n: u64) -> BigUint {
    let ordered = binomial(big_n, m) * binomial(big_n.saturating_sub(m), n);
    if m == n {
        ordered / 2u32
    } else {
        ordered
    }
}

/// Expected number of monochromatic `K_{m,n}` copies in a uniformly random
/// `s`-coloring of `K_N`: copies · s · s^{−mn}.
pub fn kmn_expected_copies(big_n: u64, m: u64, n: u64, s: u64) -> Result<BoundReport, BoundError> {
    kmn_params(big_n, m, n)?;
    if s == 0 {
        return Err(BoundError::Precondition("s must be positive".into()));
    }
    let value = big(kmn_copy_count(big_n, m, n) * s) / big(BigUint::from(s).pow((m * n) as u32));
    Ok(BoundReport::new(
        "kmn-expected-copies",
        &[
            ("N", signed(big_n)),
            ("m", signed(m)),
            ("n", signed(n)),
            ("s", signed(s)),
        ],
        BoundValue::Exact(value),
        Side::Exact,
        "Theorem1",
    ))
}

/// `e^{−2}·s^{(mn−1)/(m+n)}·n`; only a valid lower bound for large `n`.
pub fn kmn_lower_bound(n: u64, m: u64, s: u64) -> Result<BoundReport, BoundError> {
    if m < 2 || n < 1 || s < 1 {
        return Err(BoundError::Precondition(format!(
            "need m >= 2, n >= 1, s >= 1 (m={m} n={n} s={s})"
        )));
    }
    let value = precise::exp_int(-2)
        .mul_nonneg(&precise::rational_power(s, m * n - 1, m + n))
        .scale(&int(signed(n)));
    Ok(BoundReport::new(
        "kmn-lower",
        &[("n", signed(n)), ("m", signed(m)), ("s", signed(s))],
        BoundValue::Approx(value),
        Side::Lower,
        "Theorem1",
    )
    .flag("asymptotic-large-n"))
}

/// The constant `C = C(M, m)/C(M/s, m)` with the prescribed `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct KmnConstant {
    pub m: u64,
    pub s: u64,
    pub big_m: u64,
    pub m_over_s_integral: bool,
    pub c: BigRational,
    /// `s^m·e^{s²−1}`.
    pub cap: Interval,
    /// `Some(true)` if `C ≤ cap` is certain, `Some(false)` if `C > cap` is
    /// certain, `None` if the enclosure straddles `C`.
    pub within_cap: Option<bool>,
}

/// `M = (s+1)m` for `m ≤ s+1` and `M = (m−1)²` otherwise.
pub fn kmn_constant(m: u64, s: u64) -> Result<KmnConstant, BoundError> {
    if m < 2 || s < 1 {
        return Err(BoundError::Precondition(format!(
            "need m >= 2, s >= 1 (m={m} s={s})"
        )));
    }
    let big_m = if m <= s + 1 {
        (s + 1) * m
    } else {
        (m - 1) * (m - 1)
    };
    let ratio = BigRational::new(BigInt::from(big_m), BigInt::from(s));
    let c = big(binomial(big_m, m)) / binomial_rational(&ratio, m);
    let cap = precise::exp_int(signed(s * s) - 1).scale(&big(BigUint::from(s).pow(m as u32)));
    let within_cap = if cap.certainly_ge(&c) {
        Some(true)
    } else if cap.certainly_le(&c) && cap.hi != c {
        Some(false)
    } else {
        None
    };
    Ok(KmnConstant {
        m,
        s,
        big_m,
        m_over_s_integral: ratio.is_integer(),
        c,
        cap,
        within_cap,
    })
}

pub fn kmn_upper_constant(m: u64, s: u64) -> Result<BoundReport, BoundError> {
    let k = kmn_constant(m, s)?;
    let mut r = BoundReport::new(
        "kmn-constant",
        &[("m", signed(m)), ("s", signed(s)), ("M", signed(k.big_m))],
        BoundValue::Exact(k.c.clone()),
        Side::Upper,
        "Theorem1",
    );
    if !k.m_over_s_integral {
        r = r.flag(NON_INTEGRAL);
    }
    r = r.flag(match k.within_cap {
        Some(true) => "cap-holds",
        Some(false) => "cap-violated",
        None => "cap-undecided",
    });
    Ok(r)
}

/// The exponent `1 + 1/(m−1)` of the `C_{2m}` growth rate and, for a given
/// `n`, the pigeonhole count `⌈n²/s⌉` of monochromatic edges in an
/// `s`-colored `K_{n,n}`.
pub fn cycle_bounds(m: u64, s: u64, n: Option<u64>) -> Result<Vec<BoundReport>, BoundError> {
    if m < 2 || s < 1 {
        return Err(BoundError::Precondition(format!(
            "need m >= 2, s >= 1 (m={m} s={s})"
        )));
    }
    let exponent = int(1) + BigRational::new(BigInt::one(), BigInt::from(m - 1));
    let mut r = BoundReport::new(
        "cycle-exponent",
        &[("m", signed(m)), ("s", signed(s))],
        BoundValue::Exact(exponent),
        Side::Exact,
        "Intro",
    )
    .flag("theta-only");
    if ![2, 3, 5].contains(&m) {
        r = r.flag("tightness-unknown");
    }
    let mut out = vec![r];
    if let Some(n) = n {
        let count = (n * n).div_ceil(s);
        out.push(BoundReport::new(
            "cycle-pigeonhole",
            &[("n", signed(n)), ("s", signed(s))],
            BoundValue::Exact(int(signed(count))),
            Side::Lower,
            "Intro",
        ));
    }
    Ok(out)
}

/// `f64` view of an exact value, for display and statistics only.
pub fn approx_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Independent oracle: factorials multiplied out in full.
    fn factorial(n: u64) -> BigUint {
        (1..=n).fold(BigUint::one(), |acc, i| acc * i)
    }

    fn binomial_by_factorials(n: u64, k: u64) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        factorial(n) / (factorial(k) * factorial(n - k))
    }

    proptest! {
        #[test]
        fn binomial_matches_factorials(n in 0u64..80, k in 0u64..90) {
            prop_assert_eq!(binomial(n, k), binomial_by_factorials(n, k));
        }

        #[test]
        fn rational_binomial_extends_integers(n in 0u64..40, k in 0u64..12) {
            prop_assert_eq!(binomial_rational(&int(n as i64), k), big(binomial(n, k)));
        }

        #[test]
        fn constants_respect_the_cap(m in 2u64..9, s in 1u64..6) {
            let k = kmn_constant(m, s).unwrap();
            if k.m_over_s_integral {
                prop_assert_eq!(k.within_cap, Some(true));
            }
        }
    }

    #[test]
    fn star_values() {
        assert_eq!(bound_star(3, 2).to_tsv(), "star\tn=3 s=2\t5\texact\tLemma1");
        assert_eq!(bound_star(2, 2).exact(), Some(&int(3)));
        let one = bound_star(4, 1);
        assert_eq!(one.exact(), Some(&int(4)));
        assert!(one.has_flag(OUT_OF_HYPOTHESIS));
    }

    #[test]
    fn tree_values() {
        assert_eq!(bound_tree_spider(3, 2).unwrap().exact(), Some(&int(5)));
        assert_eq!(bound_tree_spider(5, 3).unwrap().exact(), Some(&int(13)));
        let k1 = bound_tree_spider(1, 4).unwrap();
        assert_eq!(k1.exact(), Some(&int(1)));
        assert!(!k1.flags.is_empty());
        assert!(bound_tree_spider(0, 2).is_err());

        for s in 1..6 {
            assert_eq!(
                bound_tree_upper(2, s).unwrap().exact(),
                Some(&int(2 * s as i64))
            );
        }
        assert_eq!(bound_tree_upper(1, 3).unwrap().exact(), Some(&int(0)));
        assert_eq!(bound_tree_upper(4, 2).unwrap().exact(), Some(&int(12)));
        assert_eq!(bound_tree_upper(4, 2).unwrap().side, Side::Upper);
    }

    #[test]
    fn expected_upper_values() {
        let r = kmn_expected_upper(6, 2, 2, 2).unwrap();
        assert_eq!(r.exact(), Some(&rat(45, 4)));
        assert!(r.has_flag("double-count-factor=2"));
        assert_eq!(
            kmn_expected_copies(6, 2, 2, 2).unwrap().exact(),
            Some(&rat(45, 8))
        );
        assert_eq!(kmn_copy_count(6, 2, 2), BigUint::from(45u32));

        // m + n = N and one color: C(m+n, m)
        let r = kmn_expected_upper(5, 2, 3, 1).unwrap();
        assert_eq!(r.exact(), Some(&int(10)));
        assert!(r.has_flag("vacuous"));

        // oracle: 2·C(20,5)·C(5,2)/2^6 with factorials
        let want = big(binomial_by_factorials(20, 5) * binomial_by_factorials(5, 2) * 2u32)
            / big(BigUint::from(64u32));
        assert_eq!(
            kmn_expected_upper(20, 2, 3, 2).unwrap().exact(),
            Some(&want)
        );
        assert_eq!(want, rat(15504 * 10 * 2, 64));

        assert!(kmn_expected_upper(3, 2, 2, 2).is_err());
        assert!(kmn_expected_upper(6, 1, 2, 2).is_err());
    }

    #[test]
    fn lower_bound_values() {
        let r = kmn_lower_bound(3, 2, 2).unwrap();
        assert_eq!(
            r.value.to_string(),
            "0.81201169941967615136399696983490642044578927545745"
        );
        assert!(r.has_flag("asymptotic-large-n"));

        let BoundValue::Approx(iv) = kmn_lower_bound(7, 3, 1).unwrap().value else {
            panic!()
        };
        let want = precise::exp_int(-2).scale(&int(7));
        assert!(iv.lo <= want.hi && want.lo <= iv.hi);

        // exponent (2·100 − 1)/(2 + 100) = 199/102
        let r = kmn_lower_bound(100, 2, 4).unwrap();
        assert_eq!(
            r.value.to_string(),
            "202.31043047593911880782774741928635220034037505645183"
        );
    }

    #[test]
    fn constant_values() {
        let k = kmn_constant(2, 2).unwrap();
        assert_eq!(
            (k.big_m, k.c.clone(), k.within_cap),
            (6, int(5), Some(true))
        );
        assert_eq!(k.cap.to_decimal(10), "80.3421476927");

        for m in 2..9 {
            assert_eq!(kmn_constant(m, 1).unwrap().c, int(1));
        }

        let r = kmn_upper_constant(4, 2).unwrap();
        assert!(r.has_flag(NON_INTEGRAL));
        // C(9,4) / C(9/2,4) = 126 / (315/128)
        assert_eq!(r.exact(), Some(&rat(256, 5)));
        assert!(kmn_upper_constant(1, 2).is_err());
    }

    #[test]
    fn generalized_binomial_matches_gamma() {
        use statrs::function::gamma::gamma;
        for (num, den, k) in [(9i64, 2i64, 4u64), (16, 3, 5), (25, 4, 6), (7, 2, 3)] {
            let x = num as f64 / den as f64;
            let via_gamma = gamma(x + 1.0) / (gamma(k as f64 + 1.0) * gamma(x - k as f64 + 1.0));
            let exact = approx_f64(&binomial_rational(&rat(num, den), k));
            assert!(
                (via_gamma - exact).abs() <= 1e-10 * exact.abs(),
                "{num}/{den} {k}"
            );
        }
        assert_eq!(binomial_rational(&rat(9, 2), 4), rat(315, 128));
    }

    #[test]
    fn cycle_values() {
        let r = cycle_bounds(2, 4, None).unwrap();
        assert_eq!(r[0].exact(), Some(&int(2)));
        assert_eq!(
            cycle_bounds(3, 2, None).unwrap()[0].exact(),
            Some(&rat(3, 2))
        );
        assert!(cycle_bounds(4, 2, None).unwrap()[0].has_flag("tightness-unknown"));
        let r = cycle_bounds(2, 2, Some(3)).unwrap();
        assert_eq!(r[1].exact(), Some(&int(5)));
        assert!(cycle_bounds(1, 2, None).is_err());
    }
}
