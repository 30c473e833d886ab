//! Guessing small algebraic numbers from high-precision approximations.
//!
//! A guess is never reported unless it survives re-evaluation at twice the working precision.
//! `Unrecognized` only means nothing was found within the bounds.

use std::fmt;

use astro_float::{BigFloat, Sign};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::hp::{HPComplex, Precision};
use crate::error::{Error, Result};

/// Search bounds for [`recognize_algebraic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RecognitionBounds {
    pub max_degree: u32,
    pub max_height: u64,
}

impl Default for RecognitionBounds {
    fn default() -> Self {
        RecognitionBounds { max_degree: 60, max_height: 1_000_000 }
    }
}

fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraicForm {
    /// `x^degree = value`.
    PowerRational {
        degree: u32,
        #[serde(serialize_with = "ser_ratio")]
        value: BigRational,
    },
    /// `y² + b y + c = 0` with `y = x^degree`.
    QuadraticInPower {
        degree: u32,
        #[serde(serialize_with = "ser_ratio")]
        b: BigRational,
        #[serde(serialize_with = "ser_ratio")]
        c: BigRational,
    },
    Unrecognized,
}

impl fmt::Display for AlgebraicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicForm::PowerRational { degree, value } => write!(f, "x^{degree} = {value}"),
            AlgebraicForm::QuadraticInPower { degree, b, c } => {
                write!(f, "y^2 + ({b})y + ({c}) = 0, y = x^{degree}")
            }
            AlgebraicForm::Unrecognized => write!(f, "unrecognized"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraicGuess {
    pub form: AlgebraicForm,
    /// Precision at which the guess was confirmed (twice the search precision).
    pub confirmed_at: Option<Precision>,
    /// `log10` of the relation residual at the confirming precision.
    pub residual_log10: Option<f64>,
}

impl AlgebraicGuess {
    pub fn is_recognized(&self) -> bool {
        !matches!(self.form, AlgebraicForm::Unrecognized)
    }

    fn unrecognized() -> Self {
        AlgebraicGuess { form: AlgebraicForm::Unrecognized, confirmed_at: None, residual_log10: None }
    }
}

/// Exact value of a finite float.
pub(crate) fn to_rational(x: &BigFloat) -> BigRational {
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return BigRational::zero();
    };
    if words.iter().all(|w| *w == 0) {
        return BigRational::zero();
    }
    let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
    let m = BigInt::from(BigUint::from_bytes_le(&bytes));
    // 0.m × 2^e with a 64·len-bit mantissa
    let shift = e as i64 - 64 * words.len() as i64;
    let two = BigInt::from(2);
    let v = if shift >= 0 {
        BigRational::from_integer(m * two.pow(shift as u32))
    } else {
        BigRational::new(m, two.pow((-shift) as u32))
    };
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

fn height(r: &BigRational) -> BigInt {
    r.numer().abs().max(r.denom().abs())
}

/// `10^{-k}` as an exact rational.
fn ten_pow_neg(k: i64) -> BigRational {
    let t = BigInt::from(10).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        BigRational::new(BigInt::one(), t)
    } else {
        BigRational::from_integer(t)
    }
}

fn log10_rat(r: &BigRational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (n, d) = (r.numer().abs(), r.denom().clone());
    // ratio of the leading 53 bits plus the bit-length difference
    let shift = |v: &BigInt| {
        let b = v.bits().saturating_sub(53);
        ((v >> b).to_f64().unwrap_or(1.0), b as f64)
    };
    let (nf, nb) = shift(&n);
    let (df, db) = shift(&d);
    (nf / df).log10() + (nb - db) * std::f64::consts::LOG10_2
}

/// Best convergent of `y` with height at most `h` that matches to relative `tol`.
fn rational_fit(y: &BigRational, h: &BigInt, tol: &BigRational) -> Option<BigRational> {
    let scale = y.abs().max(BigRational::one());
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rest = y.clone();
    for _ in 0..200 {
        let a = rest.floor().to_integer();
        let (p2, q2) = (&a * &p1 + &p0, &a * &q1 + &q0);
        if q2 > *h || p2.abs() > *h {
            return None;
        }
        let conv = BigRational::new(p2.clone(), q2.clone());
        if (y - &conv).abs() <= tol * &scale {
            return Some(conv);
        }
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            return None;
        }
        rest = frac.recip();
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    None
}

/// LLL with `δ = 3/4` on integer row vectors, in exact rational arithmetic.
fn lll(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = b.len();
    let dot = |u: &[BigRational], v: &[BigRational]| u.iter().zip(v).fold(BigRational::zero(), |a, (x, y)| a + x * y);
    let to_q = |v: &[BigInt]| v.iter().cloned().map(BigRational::from_integer).collect::<Vec<_>>();
    let gso = |b: &[Vec<BigInt>]| {
        let mut bs: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            let bi = to_q(&b[i]);
            let mut v = bi.clone();
            for j in 0..i {
                let denom = dot(&bs[j], &bs[j]);
                mu[i][j] = if denom.is_zero() { BigRational::zero() } else { dot(&bi, &bs[j]) / denom };
                for (x, y) in v.iter_mut().zip(&bs[j]) {
                    *x -= &mu[i][j] * y;
                }
            }
            bs.push(v);
        }
        (bs, mu)
    };
    let delta = BigRational::new(3.into(), 4.into());
    let half = BigRational::new(1.into(), 2.into());
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 10_000 {
        guard += 1;
        for j in (0..k).rev() {
            let (_, mu) = gso(&b);
            if mu[k][j].abs() > half {
                let q = mu[k][j].round().to_integer();
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
            }
        }
        let (bs, mu) = gso(&b);
        let lhs = dot(&bs[k], &bs[k]);
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * dot(&bs[k - 1], &bs[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

/// Small `(b, c)` with `y² + b y + c ≈ 0`, found as an integer relation among `y², y, 1`.
fn quadratic_fit(y: &BigRational, digits: u32, h: &BigInt, tol: &BigRational) -> Option<(BigRational, BigRational)> {
    let mag = y.abs().max(BigRational::one());
    let mag2 = &mag * &mag;
    // scale so that the known digits of y² land just above the integer part
    let s = BigRational::from_integer(BigInt::from(10).pow(digits.saturating_sub(10))) / &mag2;
    if s < BigRational::from_integer(BigInt::from(10).pow(10)) {
        return None;
    }
    let col = |v: BigRational| (v * &s).round().to_integer();
    let row = |i: usize, v: BigRational| {
        let mut r = vec![BigInt::zero(); 4];
        r[i] = BigInt::one();
        r[3] = col(v);
        r
    };
    let basis = vec![row(0, y * y), row(1, y.clone()), row(2, BigRational::one())];
    let reduced = lll(basis);
    let v = &reduced[0];
    let (q0, q1, q2) = (&v[0], &v[1], &v[2]);
    if q0.is_zero() {
        return None;
    }
    let b = BigRational::new(q1.clone(), q0.clone());
    let c = BigRational::new(q2.clone(), q0.clone());
    if height(&b) > *h || height(&c) > *h {
        return None;
    }
    let resid = (y * y + &b * y + &c).abs();
    (resid <= tol * &mag2).then_some((b, c))
}

fn real_part(x: &HPComplex, digits: u32) -> Result<BigRational> {
    let re = to_rational(x.re());
    let im = to_rational(x.im());
    let bound = ten_pow_neg(digits as i64 - 8) * re.abs().max(BigRational::one());
    if im.abs() > bound {
        return Err(Error::pre("only real numbers can be recognized"));
    }
    Ok(re)
}

/// Searches for `x^d ∈ ℚ` and then for a rational quadratic satisfied by `x^d`, `d ≤ D`.
///
/// `eval` must return `x` at the requested precision; it is called at `prec` for the search
/// and at `2·prec` to confirm.
pub fn recognize_algebraic<F>(eval: F, prec: Precision, bounds: RecognitionBounds) -> Result<AlgebraicGuess>
where
    F: Fn(Precision) -> Result<HPComplex>,
{
    let x = eval(prec)?;
    let digits = prec.digits();
    let xr = real_part(&x, digits)?;
    if xr.is_zero() {
        return Ok(AlgebraicGuess::unrecognized());
    }
    let h = BigInt::from(bounds.max_height);
    let tol = ten_pow_neg(digits as i64 - 8);
    // x^d is only known to about P digits, so powers are taken from the float and converted afterwards
    let powers: Vec<BigRational> = (1..=bounds.max_degree as i64).map(|d| to_rational(x.powi(d).re())).collect();
    let mut candidates = Vec::new();
    for (d, y) in (1u32..).zip(&powers) {
        if let Some(v) = rational_fit(y, &h, &tol) {
            candidates.push(AlgebraicForm::PowerRational { degree: d, value: v });
            break;
        }
    }
    if candidates.is_empty() {
        for (d, y) in (1u32..).zip(&powers) {
            if let Some((b, c)) = quadratic_fit(y, digits, &h, &tol) {
                candidates.push(AlgebraicForm::QuadraticInPower { degree: d, b, c });
                break;
            }
        }
    }
    let Some(form) = candidates.pop() else {
        return Ok(AlgebraicGuess::unrecognized());
    };
    let hi = prec.doubled();
    let x2 = eval(hi)?;
    real_part(&x2, hi.digits())?;
    let (residual, scale) = match &form {
        AlgebraicForm::PowerRational { degree, value } => {
            let y = to_rational(x2.powi(*degree as i64).re());
            ((y - value).abs(), value.abs().max(BigRational::one()))
        }
        AlgebraicForm::QuadraticInPower { degree, b, c } => {
            let y = to_rational(x2.powi(*degree as i64).re());
            let m = y.abs().max(BigRational::one());
            ((&y * &y + b * &y + c).abs(), &m * &m)
        }
        AlgebraicForm::Unrecognized => unreachable!("only candidates reach confirmation"),
    };
    let rel = residual / scale;
    let residual_log10 = log10_rat(&rel);
    if rel > ten_pow_neg(hi.digits() as i64 - 8) {
        return Ok(AlgebraicGuess::unrecognized());
    }
    Ok(AlgebraicGuess { form, confirmed_at: Some(hi), residual_log10: Some(residual_log10) })
}

#[cfg(test)]
mod tests {
    use super::super::hp::Ctx;
    use super::*;
    use num_rational::Rational64;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn float_to_rational_is_exact() {
        let ctx = Ctx::new(Precision::DEFAULT);
        assert_eq!(to_rational(&ctx.rat(Rational64::new(-3, 8))), q(-3, 8));
        assert_eq!(to_rational(&ctx.int(1 << 40)), q(1 << 40, 1));
        assert!(to_rational(&ctx.int(0)).is_zero());
    }

    #[test]
    fn fifth_root_of_sixteen() {
        let eval = |p: Precision| {
            let mut ctx = Ctx::new(p);
            let two = ctx.int(2);
            let v = ctx.powr(&two, Rational64::new(4, 5));
            Ok(ctx.real(v))
        };
        let g = recognize_algebraic(eval, Precision::DEFAULT, RecognitionBounds::default()).unwrap();
        assert_eq!(g.form, AlgebraicForm::PowerRational { degree: 5, value: q(16, 1) });
        assert_eq!(g.confirmed_at, Some(Precision::DEFAULT.doubled()));
    }

    #[test]
    fn nested_square_root() {
        // √(2√3/3 - 1)
        let eval = |p: Precision| {
            let ctx = Ctx::new(p);
            let s3 = ctx.sqrt(&ctx.int(3));
            let inner = ctx.real(s3).scale(&ctx.rat(Rational64::new(2, 3))).sub(&ctx.one());
            Ok(ctx.real(ctx.sqrt(inner.re())))
        };
        let g = recognize_algebraic(eval, Precision::DEFAULT, RecognitionBounds::default()).unwrap();
        assert_eq!(g.form, AlgebraicForm::QuadraticInPower { degree: 2, b: q(2, 1), c: q(-1, 3) });
    }

    #[test]
    fn pi_is_not_recognized() {
        let eval = |p: Precision| {
            let ctx = Ctx::new(p);
            Ok(ctx.real(ctx.pi()))
        };
        let g = recognize_algebraic(eval, Precision::DEFAULT, RecognitionBounds::default()).unwrap();
        assert!(!g.is_recognized());
    }

    #[test]
    fn rationals_and_quadratic_irrationals() {
        let bounds = RecognitionBounds { max_degree: 4, max_height: 1000 };
        let eval = |p: Precision| Ok(Ctx::new(p).from_rational(Rational64::new(-7, 3)));
        let g = recognize_algebraic(eval, Precision::DEFAULT, bounds).unwrap();
        assert_eq!(g.form, AlgebraicForm::PowerRational { degree: 1, value: q(-7, 3) });
        // golden ratio: y² - y - 1 = 0
        let eval = |p: Precision| {
            let ctx = Ctx::new(p);
            let s5 = ctx.real(ctx.sqrt(&ctx.int(5)));
            Ok(s5.add(&ctx.one()).div(&ctx.from_int(2)))
        };
        let g = recognize_algebraic(eval, Precision::DEFAULT, bounds).unwrap();
        assert_eq!(g.form, AlgebraicForm::QuadraticInPower { degree: 1, b: q(-1, 1), c: q(-1, 1) });
    }

    #[test]
    fn complex_input_is_rejected() {
        let eval = |p: Precision| Ok(Ctx::new(p).cis_pi(Rational64::new(1, 3)));
        assert!(recognize_algebraic(eval, Precision::DEFAULT, RecognitionBounds::default()).is_err());
    }
}
