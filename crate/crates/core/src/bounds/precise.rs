//! Rational enclosures of irrational quantities.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

/// Decimal places shown for approximate values.
pub const DISPLAY_DIGITS: usize = 50;
/// Decimal places kept internally; the extra digits absorb rounding.
const WORK_DIGITS: usize = 70;

/// A closed interval `[lo, hi]` with rational endpoints known to contain
/// the true value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn pow10(k: usize) -> BigInt {
    BigInt::from(10u32).pow(k as u32)
}

fn floor_scaled(x: &BigRational, k: usize) -> BigInt {
    (x * BigRational::from_integer(pow10(k)))
        .floor()
        .to_integer()
}

fn ceil_scaled(x: &BigRational, k: usize) -> BigInt {
    (x * BigRational::from_integer(pow10(k)))
        .ceil()
        .to_integer()
}

impl Interval {
    pub fn exact(x: BigRational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Interval::exact(BigRational::from_integer(n.into()))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Outward rounding to `WORK_DIGITS` decimal places.
    fn rounded(self) -> Self {
        let scale = BigRational::from_integer(pow10(WORK_DIGITS));
        Interval {
            lo: BigRational::from_integer(floor_scaled(&self.lo, WORK_DIGITS)) / &scale,
            hi: BigRational::from_integer(ceil_scaled(&self.hi, WORK_DIGITS)) / &scale,
        }
    }

    /// Product of intervals with non-negative endpoints.
    pub fn mul_nonneg(&self, other: &Interval) -> Interval {
        assert!(!self.lo.is_negative() && !other.lo.is_negative());
        Interval {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
        .rounded()
    }

    /// Reciprocal of a strictly positive interval.
    pub fn recip(&self) -> Interval {
        assert!(
            self.lo.is_positive(),
            "reciprocal of an interval touching zero"
        );
        Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
        .rounded()
    }

    pub fn scale(&self, k: &BigRational) -> Interval {
        assert!(!k.is_negative());
        Interval {
            lo: &self.lo * k,
            hi: &self.hi * k,
        }
        .rounded()
    }

    /// Integer power of a non-negative interval; negative exponents go
    /// through the reciprocal.
    pub fn powi(&self, exp: i64) -> Interval {
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let mut acc = Interval::from_integer(1);
        let mut sq = base;
        let mut k = exp.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_nonneg(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul_nonneg(&sq);
            }
        }
        acc
    }

    /// True when every point of the interval is at most `x`.
    pub fn certainly_le(&self, x: &BigRational) -> bool {
        &self.hi <= x
    }

    /// True when every point of the interval is at least `x`.
    pub fn certainly_ge(&self, x: &BigRational) -> bool {
        &self.lo >= x
    }

    /// The lower endpoint truncated to `places` decimal places.
    pub fn to_decimal(&self, places: usize) -> String {
        decimal(&self.lo, places)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(DISPLAY_DIGITS))
    }
}

/// `x` truncated toward negative infinity to `places` decimal places.
pub fn decimal(x: &BigRational, places: usize) -> String {
    let scaled = floor_scaled(x, places);
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Euler's number. The Taylor series is cut at 1/K!; the tail is below
/// 2/(K+1)!.
pub fn e() -> Interval {
    let terms = 70u32;
    let mut sum = BigRational::zero();
    let mut fact = BigInt::one();
    for k in 0..=terms {
        if k > 0 {
            fact *= k;
        }
        sum += BigRational::new(BigInt::one(), fact.clone());
    }
    let tail = BigRational::new(BigInt::from(2), fact * (terms + 1));
    Interval {
        lo: sum.clone(),
        hi: sum + tail,
    }
    .rounded()
}

/// `e^k` for an integer `k`.
pub fn exp_int(k: i64) -> Interval {
    e().powi(k)
}

/// `s^(a/b)` for `s ≥ 1`, `a ≥ 0`, `b ≥ 1`.
pub fn rational_power(s: u64, a: u64, b: u64) -> Interval {
    assert!(s >= 1 && b >= 1);
    let g = a.gcd(&b);
    let (a, b) = (a / g, b / g);
    let radicand =
        BigUint::from(s).pow(a as u32) * BigUint::from(10u32).pow((WORK_DIGITS as u64 * b) as u32);
    let root = radicand.nth_root(b as u32);
    let denom = BigInt::from(10u32).pow(WORK_DIGITS as u32);
    let lo = BigRational::new(BigInt::from(root.clone()), denom.clone());
    if Pow::pow(&root, b as u32) == radicand {
        Interval::exact(lo)
    } else {
        let hi = BigRational::new(BigInt::from(root + 1u32), denom);
        Interval { lo, hi }
    }
}
