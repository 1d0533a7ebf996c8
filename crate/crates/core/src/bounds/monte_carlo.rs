use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use super::{
    approx_f64, binomial, kmn_expected_copies, kmn_expected_upper, BoundError, BoundReport,
    BoundValue, Side,
};
use crate::rng::{derive_seed, seeded};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonteCarloError {
    #[error("at least one trial is required")]
    NoTrials,
    #[error("N = {0} exceeds the 64-vertex limit")]
    TooLarge(u64),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloReport {
    pub big_n: u64,
    pub m: u64,
    pub n: u64,
    pub s: u64,
    pub trials: u64,
    pub seed: u64,
    /// Trials whose coloring had a monochromatic `K_{m,n}`.
    pub hits: u64,
    pub existence_frequency: f64,
    /// Standard error of the existence frequency.
    pub frequency_std_error: f64,
    pub mean_count: f64,
    pub count_std_error: f64,
    pub exact_expected_count: BigRational,
    /// The ordered-choice probability bound; twice the copy count when `m = n`.
    pub labeled_bound: BigRational,
}

impl MonteCarloReport {
    pub fn to_reports(&self) -> Vec<BoundReport> {
        let inputs = [
            ("N", self.big_n as i64),
            ("m", self.m as i64),
            ("n", self.n as i64),
            ("s", self.s as i64),
            ("trials", self.trials as i64),
        ];
        vec![
            BoundReport::new(
                "mc-existence",
                &inputs,
                BoundValue::Estimate {
                    mean: self.existence_frequency,
                    std_error: self.frequency_std_error,
                },
                Side::Exact,
                "Theorem1",
            ),
            BoundReport::new(
                "mc-mean-count",
                &inputs,
                BoundValue::Estimate {
                    mean: self.mean_count,
                    std_error: self.count_std_error,
                },
                Side::Exact,
                "Theorem1",
            ),
            BoundReport::new(
                "expected-count",
                &inputs[..4],
                BoundValue::Exact(self.exact_expected_count.clone()),
                Side::Exact,
                "Theorem1",
            ),
            BoundReport::new(
                "kmn-expected-upper",
                &inputs[..4],
                BoundValue::Exact(self.labeled_bound.clone()),
                Side::Upper,
                "Theorem1",
            ),
        ]
    }

    /// The Markov check: frequency ≤ min(1, bound) + 3 standard errors.
    pub fn markov_consistent(&self) -> bool {
        let bound = approx_f64(&self.labeled_bound).min(1.0);
        self.existence_frequency <= bound + 3.0 * self.frequency_std_error + 1e-12
    }

    /// Whether the sample mean lies within `k` standard errors of the exact
    /// expectation.
    pub fn mean_within(&self, k: f64) -> bool {
        (self.mean_count - approx_f64(&self.exact_expected_count)).abs() <= k * self.count_std_error
    }
}

/// Monochromatic `K_{m,n}` subgraphs of `K_N` under `color(i, j)`, given as
/// one neighbourhood bitmask per vertex per color.
pub fn count_monochromatic_kmn(masks: &[Vec<u64>], m: usize, n: usize) -> u64 {
    let big_n = masks.first().map_or(0, Vec::len);
    let mut total = 0u64;
    let mut subset: Vec<usize> = (0..m).collect();
    if m > big_n {
        return 0;
    }
    loop {
        for class in masks {
            let common = subset.iter().fold(u64::MAX, |acc, &v| acc & class[v]);
            let k = common.count_ones() as u64;
            total += u64::try_from(binomial(k, n as u64)).expect("count fits in u64");
        }
        // next m-subset in lexicographic order
        let Some(i) = (0..m).rev().find(|&i| subset[i] < big_n - m + i) else {
            break;
        };
        subset[i] += 1;
        for j in i + 1..m {
            subset[j] = subset[j - 1] + 1;
        }
    }
    if m == n {
        total / 2
    } else {
        total
    }
}

fn trial(big_n: usize, s: u64, m: usize, n: usize, seed: u64) -> u64 {
    let mut rng = seeded(seed);
    let mut masks = vec![vec![0u64; big_n]; s as usize];
    for i in 0..big_n {
        for j in i + 1..big_n {
            let c = rng.random_range(0..s as usize);
            masks[c][i] |= 1 << j;
            masks[c][j] |= 1 << i;
        }
    }
    count_monochromatic_kmn(&masks, m, n)
}

fn mean_and_error(xs: impl Iterator<Item = f64> + Clone, count: u64) -> (f64, f64) {
    let k = count as f64;
    let mean = xs.clone().sum::<f64>() / k;
    if count < 2 {
        return (mean, 0.0);
    }
    let var = xs.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

/// Colors `K_N` uniformly at random `trials` times. Trial `i` uses the
/// stream `derive_seed(seed, i)`, so the result does not depend on how
/// trials are spread across threads.
pub fn monte_carlo_kmn(
    big_n: u64,
    m: u64,
    n: u64,
    s: u64,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloReport, MonteCarloError> {
    if trials == 0 {
        return Err(MonteCarloError::NoTrials);
    }
    if big_n > 64 {
        return Err(MonteCarloError::TooLarge(big_n));
    }
    let labeled = kmn_expected_upper(big_n, m, n, s)?;
    let exact = kmn_expected_copies(big_n, m, n, s)?;
    let counts: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            trial(
                big_n as usize,
                s,
                m as usize,
                n as usize,
                derive_seed(seed, t),
            )
        })
        .collect();
    let hits = counts.iter().filter(|&&c| c > 0).count() as u64;
    let (freq, freq_err) =
        mean_and_error(counts.iter().map(|&c| f64::from(u8::from(c > 0))), trials);
    let (mean, err) = mean_and_error(counts.iter().map(|&c| c as f64), trials);
    Ok(MonteCarloReport {
        big_n,
        m,
        n,
        s,
        trials,
        seed,
        hits,
        existence_frequency: freq,
        frequency_std_error: freq_err,
        mean_count: mean,
        count_std_error: err,
        exact_expected_count: exact.exact().expect("exact report").clone(),
        labeled_bound: labeled.exact().expect("exact report").clone(),
    })
}
