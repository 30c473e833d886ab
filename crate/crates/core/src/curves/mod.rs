//! Generalized Legendre curves `y^N = x^i (1-x)^j (1-λx)^k`.

mod comparisons;
mod counting;
mod lpoly;

pub use lpoly::{l_polynomial, l_polynomial_with_bound, weil_deviation, LPolynomial, WeilReport};
pub use comparisons::{
    check_sextic_trace_identity, check_p1_coefficients, check_p1_coefficients_symbolic, elliptic_trace, elliptic_factor_check,
    CoefficientCheck, EllipticFactorOutcome,
};
pub use counting::{
    charsum_new, count_points_brute, count_points_hgf, frobenius_trace_new, charsum_new_hypergeometric, reduce_lambda,
    resolved_counts, CountResult, ResolvedCounts,
};

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{gcd, gcd_i64};
use crate::error::{Error, Result};

/// Parameters `[N; i, j, k]` with `1 <= i, j, k < N` and `gcd(i, j, k, N) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CurveFamily {
    n: u64,
    i: u64,
    j: u64,
    k: u64,
}

impl CurveFamily {
    pub fn new(n: u64, i: u64, j: u64, k: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::pre(format!("N = {n} must be at least 2")));
        }
        for (name, v) in [("i", i), ("j", j), ("k", k)] {
            if v == 0 || v >= n {
                return Err(Error::pre(format!("{name} = {v} must lie in [1, {n})")));
            }
        }
        if gcd(gcd(gcd(i, j), k), n) != 1 {
            return Err(Error::pre(format!("gcd(i, j, k) must be coprime to N in [{n};{i},{j},{k}]")));
        }
        Ok(CurveFamily { n, i, j, k })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn i(&self) -> u64 {
        self.i
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `N | i + j + k`, the excluded CM case.
    pub fn divides_ijk(&self) -> bool {
        (self.i + self.j + self.k) % self.n == 0
    }

    pub fn divides_ij(&self) -> bool {
        (self.i + self.j) % self.n == 0
    }

    pub fn genus(&self) -> u64 {
        let n = self.n;
        let s = gcd(n, self.i + self.j + self.k) + gcd(n, self.i) + gcd(n, self.j) + gcd(n, self.k);
        1 + n - s / 2
    }

    /// `{ni/N} + {nj/N} + {nk/N} - {n(i+j+k)/N}` for `n` coprime to `N`.
    pub fn dim_vn(&self, n: i64) -> Result<u64> {
        let big_n = self.n as i64;
        if gcd_i64(n, big_n) != 1 {
            return Err(Error::NotCoprime { n, modulus: self.n });
        }
        let frac = |x: u64| (n * x as i64).rem_euclid(big_n);
        let total = frac(self.i) + frac(self.j) + frac(self.k) - frac(self.i + self.j + self.k);
        Ok((total / big_n) as u64)
    }

    /// Classical parameters `(a, b, c) = (k/N, (N-i)/N, (2N-i-j)/N)`.
    pub fn hypergeometric_params(&self) -> (Rational64, Rational64, Rational64) {
        let n = self.n as i64;
        let (i, j, k) = (self.i as i64, self.j as i64, self.k as i64);
        (Rational64::new(k, n), Rational64::new(n - i, n), Rational64::new(2 * n - i - j, n))
    }

    /// Inverse of [`Self::hypergeometric_params`] for a chosen `N`.
    pub fn from_hypergeometric(n: u64, a: Rational64, b: Rational64, c: Rational64) -> Result<Self> {
        let nn = Rational64::from_integer(n as i64);
        let conv = |r: Rational64, what: &str| -> Result<u64> {
            let v = r * nn;
            if !v.is_integer() || v.is_negative() {
                return Err(Error::pre(format!("{what} is not a multiple of 1/{n}")));
            }
            Ok(v.to_integer() as u64)
        };
        let i = conv(Rational64::one() - b, "1 - b")?;
        let j = conv(Rational64::one() + b - c, "1 + b - c")?;
        let k = conv(a, "a")?;
        Self::new(n, i, j, k)
    }
}

impl fmt::Display for CurveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{},{},{}]", self.n, self.i, self.j, self.k)
    }
}

/// A family together with a rational parameter `λ ∉ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveInstance {
    family: CurveFamily,
    lambda: Rational64,
}

impl CurveInstance {
    pub fn new(family: CurveFamily, lambda: Rational64) -> Result<Self> {
        if lambda.is_zero() || lambda.is_one() {
            return Err(Error::pre(format!("λ = {lambda} must avoid 0 and 1")));
        }
        Ok(CurveInstance { family, lambda })
    }

    pub fn family(&self) -> &CurveFamily {
        &self.family
    }

    pub fn lambda(&self) -> Rational64 {
        self.lambda
    }

    /// Why `p` is a bad prime for this instance, if it is one.
    pub fn bad_reduction(&self, p: u64) -> Option<String> {
        let (u, v) = (*self.lambda.numer(), *self.lambda.denom());
        let divides = |x: i64| x.rem_euclid(p as i64) == 0;
        if p <= 3 {
            Some(format!("p = {p} is too small"))
        } else if self.family.n % p == 0 {
            Some(format!("p divides N = {}", self.family.n))
        } else if divides(u) {
            Some("λ reduces to 0".into())
        } else if divides(v) {
            Some("p divides the denominator of λ".into())
        } else if divides(u - v) {
            Some("λ reduces to 1".into())
        } else {
            None
        }
    }
}

/// Schwarz triangle angles `(|1-c|, |c-a-b|, |a-b|)` and their denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchwarzData {
    pub angles: [Rational64; 3],
    pub denominators: [i64; 3],
}

pub fn schwarz_angles(a: Rational64, b: Rational64, c: Rational64) -> SchwarzData {
    let one = Rational64::one();
    let angles = [(one - c).abs(), (c - a - b).abs(), (a - b).abs()];
    SchwarzData { angles, denominators: angles.map(|x| *x.denom()) }
}
