//! Exact arithmetic in `Z[ζ_M]` and `Z[ζ_M, ζ_p]`.
//!
//! A value is stored as a coefficient grid over the basis `ζ_M^a ζ_p^b` with
//! `0 <= a < φ(M)` and `0 <= b < p - 1` (a single column when there is no `ζ_p` part).
//! The `ζ_M` part is reduced modulo the cyclotomic polynomial `Φ_M` and the `ζ_p` part modulo
//! `1 + ζ_p + ... + ζ_p^{p-1}`, so equal values have equal grids.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{divisors, euler_phi};
use crate::error::{Error, Result};

/// Coefficients of `Φ_n`, low to high.
pub fn cyclotomic_poly(n: u64) -> Arc<[i64]> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<[i64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    // Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d
    let mut num: Vec<i64> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        num = div_monic(&num, &cyclotomic_poly(d));
    }
    let v: Arc<[i64]> = num.into();
    cache.lock().unwrap().insert(n, v.clone());
    v
}

fn div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let mut rem = a.to_vec();
    let mut quot = vec![0i64; da - db + 1];
    for d in (db..=da).rev() {
        let c = rem[d];
        quot[d - db] = c;
        for (t, &bt) in b.iter().enumerate() {
            rem[d - db + t] -= c * bt;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    m: u64,
    p: Option<u64>,
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc(M={}", self.m)?;
        if let Some(p) = self.p {
            write!(f, ", p={p}")?;
        }
        write!(f, ", {:?})", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.width();
        let mut terms = Vec::new();
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = (idx / w, idx % w);
            let mut mono = String::new();
            if a > 0 {
                mono.push_str(&format!("z{}^{}", self.m, a));
            }
            if b > 0 {
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(&format!("zp^{b}"));
            }
            terms.push(if mono.is_empty() { c.to_string() } else { format!("{c}*{mono}") });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Raw sums of roots of unity, accumulated as exponent counts before canonicalization.
#[derive(Clone, Debug)]
pub struct CycAccumulator {
    m: u64,
    p: Option<u64>,
    raw: Vec<i64>,
}

impl CycAccumulator {
    pub fn new(m: u64, p: Option<u64>) -> Self {
        let cols = p.unwrap_or(1);
        CycAccumulator { m, p, raw: vec![0; (m * cols) as usize] }
    }

    /// Adds `coeff * ζ_M^a * ζ_p^b`.
    pub fn add_term(&mut self, a: u64, b: u64, coeff: i64) {
        let cols = self.p.unwrap_or(1);
        self.raw[((a % self.m) * cols + b % cols) as usize] += coeff;
    }

    pub fn finish(&self) -> CycNumber {
        let raw: Vec<BigInt> = self.raw.iter().map(|&c| BigInt::from(c)).collect();
        CycNumber::from_raw(self.m, self.p, raw)
    }
}

impl CycNumber {
    fn width(&self) -> usize {
        self.p.map_or(1, |p| p as usize - 1)
    }

    pub fn zero(m: u64, p: Option<u64>) -> Self {
        assert!(m >= 1, "root-of-unity order must be positive");
        if let Some(p) = p {
            assert!(p >= 2, "ζ_p part needs p >= 2");
        }
        let len = euler_phi(m) as usize * p.map_or(1, |p| p as usize - 1);
        CycNumber { m, p, coeffs: vec![BigInt::zero(); len] }
    }

    pub fn from_int(m: u64, p: Option<u64>, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(m, p);
        z.coeffs[0] = n.into();
        z
    }

    pub fn one(m: u64, p: Option<u64>) -> Self {
        Self::from_int(m, p, 1)
    }

    /// `ζ_M^a`.
    pub fn zeta(m: u64, p: Option<u64>, a: i64) -> Self {
        let mut acc = CycAccumulator::new(m, p);
        acc.add_term(a.rem_euclid(m as i64) as u64, 0, 1);
        acc.finish()
    }

    /// `ζ_M^a ζ_p^b`; requires a `ζ_p` part.
    pub fn zeta_mixed(m: u64, p: u64, a: i64, b: i64) -> Self {
        let mut acc = CycAccumulator::new(m, Some(p));
        acc.add_term(a.rem_euclid(m as i64) as u64, b.rem_euclid(p as i64) as u64, 1);
        acc.finish()
    }

    fn from_raw(m: u64, p: Option<u64>, mut raw: Vec<BigInt>) -> Self {
        let cols = p.unwrap_or(1) as usize;
        let mu = m as usize;
        if let Some(p) = p {
            let last = p as usize - 1;
            for a in 0..mu {
                let c = std::mem::take(&mut raw[a * cols + last]);
                if !c.is_zero() {
                    for b in 0..last {
                        raw[a * cols + b] -= &c;
                    }
                }
            }
        }
        let phi_poly = cyclotomic_poly(m);
        let deg = phi_poly.len() - 1;
        for b in 0..cols {
            for d in (deg..mu).rev() {
                let c = std::mem::take(&mut raw[d * cols + b]);
                if c.is_zero() {
                    continue;
                }
                for (t, &ft) in phi_poly.iter().enumerate().take(deg) {
                    if ft != 0 {
                        raw[(d - deg + t) * cols + b] -= &c * ft;
                    }
                }
            }
        }
        let w = p.map_or(1, |p| p as usize - 1);
        let mut coeffs = Vec::with_capacity(deg * w);
        for a in 0..deg {
            for b in 0..w {
                coeffs.push(std::mem::take(&mut raw[a * cols + b]));
            }
        }
        CycNumber { m, p, coeffs }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn p(&self) -> Option<u64> {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        self.m == other.m && self.p == other.p
    }

    /// The rational integer this value equals, if any.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    fn terms(&self) -> impl Iterator<Item = (u64, u64, &BigInt)> + '_ {
        let w = self.width();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| ((i / w) as u64, (i % w) as u64, c))
    }

    /// Re-expresses the value in `Z[ζ_{m2}]` (and `ζ_p` when `p` is given), where `M | m2`.
    pub fn lift(&self, m2: u64, p: Option<u64>) -> Self {
        assert!(m2 % self.m == 0, "cannot lift Z[ζ_{}] into Z[ζ_{m2}]", self.m);
        assert!(self.p.is_none() || self.p == p, "cannot drop or change the ζ_p part");
        let scale = m2 / self.m;
        let cols = p.unwrap_or(1) as usize;
        let mut raw = vec![BigInt::zero(); m2 as usize * cols];
        for (a, b, c) in self.terms() {
            raw[(a * scale) as usize * cols + b as usize] += c;
        }
        Self::from_raw(m2, p, raw)
    }

    /// Complex conjugation, `ζ -> ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let cols = self.p.unwrap_or(1);
        let mut raw = vec![BigInt::zero(); (self.m * cols) as usize];
        for (a, b, c) in self.terms() {
            let a2 = (self.m - a) % self.m;
            let b2 = (cols - b) % cols;
            raw[(a2 * cols + b2) as usize] += c;
        }
        Self::from_raw(self.m, self.p, raw)
    }

    /// Galois action `ζ_M -> ζ_M^s` for `s` coprime to `M`, leaving `ζ_p` fixed.
    pub fn galois(&self, s: u64) -> Self {
        let cols = self.p.unwrap_or(1);
        let mut raw = vec![BigInt::zero(); (self.m * cols) as usize];
        for (a, b, c) in self.terms() {
            raw[((a * s % self.m) * cols + b) as usize] += c;
        }
        Self::from_raw(self.m, self.p, raw)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycNumber { m: self.m, p: self.p, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    fn mul_small(&self, other: &Self) -> Option<Self> {
        let cols = self.p.unwrap_or(1);
        let lhs: Vec<(u64, u64, i128)> =
            self.terms().map(|(a, b, c)| c.to_i64().map(|c| (a, b, c as i128))).collect::<Option<_>>()?;
        let rhs: Vec<(u64, u64, i128)> =
            other.terms().map(|(a, b, c)| c.to_i64().map(|c| (a, b, c as i128))).collect::<Option<_>>()?;
        let mut raw = vec![0i128; (self.m * cols) as usize];
        for &(a1, b1, c1) in &lhs {
            for &(a2, b2, c2) in &rhs {
                let idx = ((a1 + a2) % self.m * cols + (b1 + b2) % cols) as usize;
                raw[idx] = raw[idx].checked_add(c1.checked_mul(c2)?)?;
            }
        }
        Some(Self::from_raw(self.m, self.p, raw.into_iter().map(BigInt::from).collect()))
    }

    fn mul_big(&self, other: &Self) -> Self {
        let cols = self.p.unwrap_or(1);
        let mut raw = vec![BigInt::zero(); (self.m * cols) as usize];
        for (a1, b1, c1) in self.terms() {
            for (a2, b2, c2) in other.terms() {
                raw[((a1 + a2) % self.m * cols + (b1 + b2) % cols) as usize] += c1 * c2;
            }
        }
        Self::from_raw(self.m, self.p, raw)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.m, self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Gcd of all coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides every coefficient by `k`, or `None` when `k` does not divide all of them.
    pub fn div_int_exact(&self, k: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(CycNumber { m: self.m, p: self.p, coeffs: out })
    }

    /// If the value is `± ζ_M^a`, returns the exponent of it as a `2M`-th root of unity.
    pub fn root_of_unity_exponent(&self) -> Option<u64> {
        (0..self.m as i64).find_map(|a| {
            let z = Self::zeta(self.m, self.p, a);
            if *self == z {
                Some(2 * a as u64)
            } else if *self == -&z {
                Some((2 * a as u64 + self.m) % (2 * self.m))
            } else {
                None
            }
        })
    }

    /// The unique `F` with `F * divisor = self`.
    ///
    /// Tries `± ζ_M^a` first and falls back to solving the linear system over `Q`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if !self.same_ring(divisor) {
            return Err(Error::FieldMismatch);
        }
        if divisor.is_zero() {
            return Err(Error::NonUnitQuotient);
        }
        for a in 0..self.m as i64 {
            let z = Self::zeta(self.m, self.p, a);
            let prod = &z * divisor;
            if prod == *self {
                return Ok(z);
            }
            if -&prod == *self {
                return Ok(-&z);
            }
        }
        self.solve_division(divisor)
    }

    fn solve_division(&self, divisor: &Self) -> Result<Self> {
        let n = self.coeffs.len();
        // column e of the matrix is divisor * (basis vector e)
        let w = self.width();
        let mut rows: Vec<Vec<BigRational>> = vec![Vec::with_capacity(n + 1); n];
        for e in 0..n {
            let (a, b) = (e / w, e % w);
            let basis = match self.p {
                None => Self::zeta(self.m, None, a as i64),
                Some(p) => Self::zeta_mixed(self.m, p, a as i64, b as i64),
            };
            let col = &basis * divisor;
            for (r, c) in col.coeffs.iter().enumerate() {
                rows[r].push(BigRational::from_integer(c.clone()));
            }
        }
        for (r, c) in self.coeffs.iter().enumerate() {
            rows[r].push(BigRational::from_integer(c.clone()));
        }
        let sol = solve_rational(rows, n).ok_or(Error::NonUnitQuotient)?;
        let mut coeffs = Vec::with_capacity(n);
        for x in sol {
            if !x.is_integer() {
                return Err(Error::NonUnitQuotient);
            }
            coeffs.push(x.to_integer());
        }
        let f = CycNumber { m: self.m, p: self.p, coeffs };
        if &f * divisor == *self {
            Ok(f)
        } else {
            Err(Error::NonUnitQuotient)
        }
    }

    /// Value under `ζ_M = e^{2πi/M}`, `ζ_p = e^{2πi/p}`.
    pub fn embed(&self) -> Complex64 {
        let w = self.width();
        let tau = std::f64::consts::TAU;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| {
                let (a, b) = ((idx / w) as f64, (idx % w) as f64);
                let mut angle = a / self.m as f64;
                if let Some(p) = self.p {
                    angle += b / p as f64;
                }
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), tau * angle)
            })
            .sum()
    }

    pub fn to_json(&self) -> Value {
        let num = |c: &BigInt| match c.to_i64() {
            Some(v) => json!(v),
            None => json!(c.to_string()),
        };
        match self.p {
            None => json!({ "M": self.m, "coeffs": self.coeffs.iter().map(num).collect::<Vec<_>>() }),
            Some(p) => {
                let grid: Vec<Vec<Value>> =
                    self.coeffs.chunks(self.width()).map(|row| row.iter().map(num).collect()).collect();
                json!({ "M": self.m, "p": p, "p_part": grid })
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("cyclotomic value: {msg}"));
        let m = v.get("M").and_then(Value::as_u64).ok_or_else(|| bad("missing M"))?;
        if m == 0 || m > 1 << 16 {
            return Err(bad("M out of range"));
        }
        let int = |c: &Value| -> Result<BigInt> {
            if let Some(i) = c.as_i64() {
                return Ok(BigInt::from(i));
            }
            c.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("coefficient is not an integer"))
        };
        let phi = euler_phi(m) as usize;
        let coeffs: Vec<BigInt>;
        let p = match v.get("p") {
            None | Some(Value::Null) => {
                let arr = v.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("missing coeffs"))?;
                coeffs = arr.iter().map(int).collect::<Result<_>>()?;
                if coeffs.len() != phi {
                    return Err(bad("coefficient count differs from φ(M)"));
                }
                None
            }
            Some(pv) => {
                let p = pv.as_u64().filter(|&p| (2..=1 << 16).contains(&p)).ok_or_else(|| bad("bad p"))?;
                let grid = v.get("p_part").and_then(Value::as_array).ok_or_else(|| bad("missing p_part"))?;
                if grid.len() != phi {
                    return Err(bad("grid row count differs from φ(M)"));
                }
                let mut flat = Vec::with_capacity(phi * (p as usize - 1));
                for row in grid {
                    let row = row.as_array().ok_or_else(|| bad("grid row is not an array"))?;
                    if row.len() != p as usize - 1 {
                        return Err(bad("grid row length differs from p - 1"));
                    }
                    for c in row {
                        flat.push(int(c)?);
                    }
                }
                coeffs = flat;
                Some(p)
            }
        };
        Ok(CycNumber { m, p, coeffs })
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        assert!(self.same_ring(rhs), "ring mismatch");
        CycNumber {
            m: self.m,
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        assert!(self.same_ring(rhs), "ring mismatch");
        CycNumber {
            m: self.m,
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber { m: self.m, p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        assert!(self.same_ring(rhs), "ring mismatch");
        self.mul_small(rhs).unwrap_or_else(|| self.mul_big(rhs))
    }
}

/// Gauss-Jordan elimination on an augmented `n x (n+1)` system; `None` if singular.
fn solve_rational(mut rows: Vec<Vec<BigRational>>, n: usize) -> Option<Vec<BigRational>> {
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    Some(rows.into_iter().map(|r| r[n].clone()).collect())
}

/// `num / den` with `num` in a cyclotomic ring and `den` a positive integer, kept reduced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycRational {
    num: CycNumber,
    den: BigInt,
}

impl CycRational {
    pub fn new(num: CycNumber, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() { (-&num, -den) } else { (num, den) };
        let g = num.content().gcd(&den);
        if num.is_zero() {
            let m = num.m();
            let p = num.p();
            return CycRational { num: CycNumber::zero(m, p), den: BigInt::one() };
        }
        if g.is_one() {
            return CycRational { num, den };
        }
        CycRational { num: num.div_int_exact(&g).expect("g divides the content"), den: den / g }
    }

    pub fn from_cyc(num: CycNumber) -> Self {
        CycRational { num, den: BigInt::one() }
    }

    pub fn numerator(&self) -> &CycNumber {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = &self.num.scale(&other.den) + &other.num.scale(&self.den);
        Self::new(n, &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycRational { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn mul_cyc(&self, c: &CycNumber) -> Self {
        Self::new(&self.num * c, self.den.clone())
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        Self::new(self.num.scale(&k.into()), self.den.clone())
    }

    pub fn div_int(&self, k: impl Into<BigInt>) -> Self {
        Self::new(self.num.clone(), &self.den * k.into())
    }

    pub fn conj(&self) -> Self {
        CycRational { num: self.num.conj(), den: self.den.clone() }
    }

    pub fn lift(&self, m2: u64) -> Self {
        CycRational { num: self.num.lift(m2, self.num.p()), den: self.den.clone() }
    }

    pub fn as_cyc(&self) -> Option<&CycNumber> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn embed(&self) -> Complex64 {
        self.num.embed() / self.den.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_json(&self) -> Value {
        json!({ "numerator": self.num.to_json(), "denominator": self.den.to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(&*cyclotomic_poly(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_poly(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_poly(6), &[1, -1, 1]);
        assert_eq!(&*cyclotomic_poly(12), &[1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(105).iter().filter(|&&c| c == -2).count(), 2);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for m in [3u64, 4, 5, 6, 10, 12] {
            let mut acc = CycAccumulator::new(m, None);
            for a in 0..m {
                acc.add_term(a, 0, 1);
            }
            assert!(acc.finish().is_zero());
        }
        let mut acc = CycAccumulator::new(4, Some(7));
        for b in 0..7 {
            acc.add_term(1, b, 3);
        }
        assert!(acc.finish().is_zero());
    }

    #[test]
    fn zeta_powers_cycle() {
        let z = CycNumber::zeta(12, None, 1);
        assert_eq!(z.pow(12), CycNumber::one(12, None));
        assert_eq!(z.pow(6), CycNumber::from_int(12, None, -1));
        assert_eq!(z.root_of_unity_exponent(), Some(2));
        assert_eq!((-&z).root_of_unity_exponent(), Some(14));
    }

    #[test]
    fn conjugate_is_inverse_on_roots() {
        let z = CycNumber::zeta_mixed(6, 7, 1, 3);
        assert_eq!(&z * &z.conj(), CycNumber::one(6, Some(7)));
    }

    #[test]
    fn lift_preserves_embedding() {
        let x = &CycNumber::zeta(4, None, 1) + &CycNumber::from_int(4, None, 3);
        let y = x.lift(12, None);
        assert!((x.embed() - y.embed()).norm() < 1e-12);
        assert_eq!(y.lift(24, Some(5)).embed().re, x.embed().re);
    }

    #[test]
    fn exact_division() {
        let a = &CycNumber::zeta(6, None, 1) + &CycNumber::from_int(6, None, 2);
        let f = &CycNumber::zeta(6, None, 2) - &CycNumber::one(6, None);
        assert_eq!((&a * &f).div_exact(&a).unwrap(), f);
        let u = -&CycNumber::zeta(6, None, 5);
        assert_eq!((&a * &u).div_exact(&a).unwrap(), u);
        assert_eq!(CycNumber::one(6, None).div_exact(&a), Err(Error::NonUnitQuotient));
    }

    #[test]
    fn json_round_trip() {
        let x = &CycNumber::zeta_mixed(4, 5, 1, 2) - &CycNumber::from_int(4, Some(5), 7);
        assert_eq!(CycNumber::from_json(&x.to_json()).unwrap(), x);
        let y = CycNumber::zeta(10, None, 3).scale(&BigInt::from(10).pow(30));
        assert_eq!(CycNumber::from_json(&y.to_json()).unwrap(), y);
        assert!(CycNumber::from_json(&json!({"M": 4, "coeffs": [1]})).is_err());
    }

    #[test]
    fn rationals_reduce() {
        let n = CycNumber::from_int(6, None, 6);
        let r = CycRational::new(n, -4);
        assert_eq!(r.denominator(), &BigInt::from(2));
        assert_eq!(r.numerator().as_integer(), Some(BigInt::from(-3)));
        let z = CycRational::new(CycNumber::zero(6, None), 9);
        assert_eq!(z.denominator(), &BigInt::one());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cyc(m: u64, p: Option<u64>) -> impl Strategy<Value = CycNumber> {
            let cols = p.unwrap_or(1);
            prop::collection::vec(-20i64..20, (m * cols) as usize).prop_map(move |raw| {
                let mut acc = CycAccumulator::new(m, p);
                for (idx, c) in raw.into_iter().enumerate() {
                    acc.add_term(idx as u64 / cols, idx as u64 % cols, c);
                }
                acc.finish()
            })
        }

        proptest! {
            #[test]
            fn ring_laws(a in cyc(12, Some(5)), b in cyc(12, Some(5)), c in cyc(12, Some(5))) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
            }

            #[test]
            fn embedding_is_a_homomorphism(a in cyc(10, None), b in cyc(10, None)) {
                let lhs = (&a * &b).embed();
                let rhs = a.embed() * b.embed();
                prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
            }

            #[test]
            fn conjugation_respects_products(a in cyc(9, Some(7)), b in cyc(9, Some(7))) {
                prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            }
        }
    }
}
