use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::counting::count_points_brute;
use super::CurveInstance;
use crate::error::{Error, Result};
use crate::ffield::{FieldSpec, DEFAULT_FIELD_BOUND};

/// Numerator of the zeta function, `1 + c_1 T + ... + c_{2g} T^{2g}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LPolynomial {
    pub p: u64,
    pub genus: u64,
    pub coeffs: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeilReport {
    /// Largest `| |root| sqrt(p) - 1 |` over the distinct roots.
    pub max_deviation: f64,
    pub distinct_roots: usize,
}

const ROOT_TOLERANCE: f64 = 1e-6;

impl LPolynomial {
    /// Leading coefficient, functional equation and root moduli.
    pub fn check(&self) -> Result<WeilReport> {
        let g = self.genus as usize;
        let fail = |msg: String| Err(Error::LPolynomialInvariant(msg));
        if self.coeffs.len() != 2 * g + 1 {
            return fail(format!("degree {} differs from 2g = {}", self.coeffs.len() - 1, 2 * g));
        }
        if self.coeffs[0] != 1 {
            return fail(format!("constant term is {}", self.coeffs[0]));
        }
        for i in 0..=g {
            let expected = BigInt::from(self.p).pow((g - i) as u32) * self.coeffs[i];
            if BigInt::from(self.coeffs[2 * g - i]) != expected {
                return fail(format!("c_{} != p^{} c_{i}", 2 * g - i, g - i));
            }
        }
        let report = weil_deviation(&self.coeffs, self.p);
        if report.max_deviation > ROOT_TOLERANCE {
            return fail(format!("a root is off the circle |T| = p^(-1/2) by {:.3e}", report.max_deviation));
        }
        Ok(report)
    }

    pub fn eval(&self, t: i64) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, &c| acc * t + c)
    }
}

/// Counts over `F_{p^s}` for `s = 1..g`, Newton's identities, then the functional equation.
pub fn l_polynomial(inst: &CurveInstance, p: u64) -> Result<LPolynomial> {
    l_polynomial_with_bound(inst, p, DEFAULT_FIELD_BOUND)
}

pub fn l_polynomial_with_bound(inst: &CurveInstance, p: u64, bound: u64) -> Result<LPolynomial> {
    if let Some(reason) = inst.bad_reduction(p) {
        return Err(Error::BadReduction { p, reason });
    }
    let g = inst.family().genus() as usize;
    // fail fast before the large sweeps
    if g > 0 {
        let q = p.checked_pow(g as u32).filter(|&q| q <= bound);
        if q.is_none() {
            return Err(Error::FieldTooLarge { p, s: g as u32, bound });
        }
    }
    let mut power_sums = Vec::with_capacity(g);
    for s in 1..=g {
        let f = FieldSpec::build_with_bound(p, s as u32, bound)?;
        let count = count_points_brute(inst, &f)?;
        power_sums.push(BigInt::from(count.trace()));
    }
    let coeffs = from_power_sums(&power_sums, p, g)?;
    let l = LPolynomial { p, genus: g as u64, coeffs };
    l.check()?;
    Ok(l)
}

/// `c_i = -(1/i) Σ_{r=1}^{i} S_r c_{i-r}` for `i <= g`, then `c_{2g-i} = p^{g-i} c_i`.
fn from_power_sums(s: &[BigInt], p: u64, g: usize) -> Result<Vec<i64>> {
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for i in 1..=g {
        let acc: BigInt = (1..=i).map(|r| &s[r - 1] * &c[i - r]).sum();
        let (q, rem) = (-&acc / i as i64, -&acc % i as i64);
        if !rem.is_zero() {
            return Err(Error::LPolynomialInvariant(format!("Newton step {i} is not integral")));
        }
        c.push(q);
    }
    for i in (0..g).rev() {
        let v = BigInt::from(p).pow((g - i) as u32) * &c[i];
        c.push(v);
    }
    c.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::LPolynomialInvariant("coefficient overflows i64".into())))
        .collect()
}

type Poly = Vec<BigRational>;

fn trim(a: &mut Poly) {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let f = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &f * bi;
        }
        trim(&mut r);
    }
    r
}

fn div(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let f = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &f * bi;
        }
        q[shift] = f;
        trim(&mut r);
    }
    q
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn derivative(a: &Poly) -> Poly {
    a.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect()
}

/// Squarefree part of an integer polynomial, exactly.
fn squarefree(coeffs: &[i64]) -> Poly {
    let f: Poly = coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
    let g = gcd(&f, &derivative(&f));
    if g.len() <= 1 {
        return f;
    }
    div(&f, &g)
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, &x| acc * z + x)
}

/// Aberth iteration for all roots of a polynomial given low to high.
fn roots(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|&x| x / lead).collect();
    let deriv: Vec<Complex64> = monic.iter().enumerate().skip(1).map(|(i, &x)| x * i as f64).collect();
    let radius = 1.0 + monic[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let pz = horner(&monic, z[k]);
            let dz = horner(&deriv, z[k]);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / dz;
            let repulsion: Complex64 = (0..n).filter(|&m| m != k).map(|m| (z[k] - z[m]).inv()).sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            z[k] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Deviation of the roots of `Σ c_i T^i` from the circle `|T| = p^{-1/2}`.
///
/// Works on the squarefree part after the substitution `T = u / sqrt(p)`, which puts the
/// expected roots on the unit circle.
pub fn weil_deviation(coeffs: &[i64], p: u64) -> WeilReport {
    let sf = squarefree(coeffs);
    let sp = (p as f64).sqrt();
    let scaled: Vec<Complex64> = sf
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let v = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
            Complex64::new(v / sp.powi(i as i32), 0.0)
        })
        .collect();
    let rs = roots(&scaled);
    let max_deviation = rs.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    WeilReport { max_deviation, distinct_roots: rs.len() }
}

#[cfg(test)]
mod tests {
    use super::super::CurveFamily;
    use super::*;
    use num_rational::Rational64;

    fn inst541() -> CurveInstance {
        CurveInstance::new(CurveFamily::new(5, 1, 4, 1).unwrap(), Rational64::new(2, 1)).unwrap()
    }

    fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn table_rows_seven_and_eleven() {
        let l7 = l_polynomial(&inst541(), 7).unwrap();
        assert_eq!(l7.coeffs, mul(&[1, 0, 10, 0, 49], &[1, 0, -10, 0, 49]));
        let q = [1, -2, 11];
        let l11 = l_polynomial(&inst541(), 11).unwrap();
        assert_eq!(l11.coeffs, mul(&mul(&q, &q), &mul(&q, &q)));
    }

    #[test]
    fn newton_round_trip() {
        // (1 - 2T + 11T^2)^2 has inverse roots α, ᾱ twice
        let s: Vec<BigInt> = [4i64, -36].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(from_power_sums(&s, 11, 2).unwrap(), vec![1, -4, 26, -44, 121]);
    }

    #[test]
    fn invariant_failures_are_reported() {
        let bad = LPolynomial { p: 7, genus: 1, coeffs: vec![1, 3, 8] };
        assert!(matches!(bad.check(), Err(Error::LPolynomialInvariant(_))));
        let off_circle = LPolynomial { p: 7, genus: 1, coeffs: vec![1, 8, 7] };
        assert!(matches!(off_circle.check(), Err(Error::LPolynomialInvariant(_))));
        let ok = LPolynomial { p: 7, genus: 1, coeffs: vec![1, -4, 7] };
        assert_eq!(ok.check().unwrap().distinct_roots, 2);
    }

    #[test]
    fn repeated_roots_are_handled() {
        let q = [1i64, -2, 11];
        let c = mul(&mul(&q, &q), &mul(&q, &q));
        let r = weil_deviation(&c, 11);
        assert_eq!(r.distinct_roots, 2);
        assert!(r.max_deviation < 1e-12);
    }

    #[test]
    fn genus_two_matches_extension_counts() {
        let x = CurveInstance::new(CurveFamily::new(3, 1, 2, 1).unwrap(), Rational64::new(2, 1)).unwrap();
        let l = l_polynomial(&x, 13).unwrap();
        // #X(F_{13^3}) from the L-polynomial: q + 1 - S_3
        let c = &l.coeffs;
        let s1 = -c[1];
        let s2 = s1 * s1 - 2 * c[2];
        let s3 = -(c[1] * s2 + c[2] * s1 + 3 * c[3]);
        let f = FieldSpec::build(13, 3).unwrap();
        let n3 = count_points_brute(&x, &f).unwrap().total as i64;
        assert_eq!(n3, 13i64.pow(3) + 1 - s3);
    }

    #[test]
    fn refuses_oversized_fields() {
        assert!(matches!(l_polynomial(&inst541(), 4099), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(l_polynomial(&inst541(), 5), Err(Error::BadReduction { .. })));
    }
}
