//! Complex numbers on top of `astro-float`.

use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_complex::Complex64;
use num_rational::Rational64;
use serde::ser::SerializeStruct;
use serde::Serialize;

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 64;

/// Working precision in significant decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT: Precision = Precision(50);

    /// At least 30 digits, at most 10⁴.
    pub fn new(digits: u32) -> crate::Result<Self> {
        if !(30..=10_000).contains(&digits) {
            return Err(crate::Error::pre(format!("precision {digits} outside 30..=10000 digits")));
        }
        Ok(Precision(digits))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    pub fn doubled(self) -> Precision {
        Precision(self.0 * 2)
    }

    /// Mantissa bits used internally, guard bits included.
    pub fn bits(self) -> usize {
        (self.0 as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
    }

    /// `10^{-(P - slack)}`, the comparison tolerance used by checks.
    pub fn tolerance(self, slack: u32) -> i32 {
        -(self.0.saturating_sub(slack) as i32)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DEFAULT
    }
}

pub(crate) fn to_f64(x: &BigFloat) -> f64 {
    match x.as_raw_parts() {
        Some((m, _, s, e, _)) => {
            let top = *m.last().unwrap_or(&0) as f64 / 2f64.powi(64);
            let v = top * 2f64.powi(e);
            if s == Sign::Neg {
                -v
            } else {
                v
            }
        }
        None => f64::NAN,
    }
}

/// Base-2 exponent of `|x|`, `None` for zero.
pub(crate) fn log2_abs(x: &BigFloat) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    x.exponent().map(|e| e as i64)
}

/// Constant cache plus the mantissa width; all transcendental functions go through it.
pub(crate) struct Ctx {
    pub p: usize,
    pub prec: Precision,
    cc: Consts,
    pi: BigFloat,
}

impl Ctx {
    pub fn new(prec: Precision) -> Self {
        let p = prec.bits();
        let mut cc = Consts::new().expect("constant cache allocation");
        let pi = cc.pi(p, RM);
        Ctx { p, prec, cc, pi }
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.p)
    }

    pub fn rat(&self, r: Rational64) -> BigFloat {
        self.int(*r.numer()).div(&self.int(*r.denom()), self.p, RM)
    }

    pub fn pi(&self) -> BigFloat {
        self.pi.clone()
    }

    pub fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(self.p, RM, &mut self.cc)
    }

    pub fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(self.p, RM, &mut self.cc)
    }

    pub fn sin(&mut self, x: &BigFloat) -> BigFloat {
        x.sin(self.p, RM, &mut self.cc)
    }

    pub fn cos(&mut self, x: &BigFloat) -> BigFloat {
        x.cos(self.p, RM, &mut self.cc)
    }

    pub fn sqrt(&self, x: &BigFloat) -> BigFloat {
        x.sqrt(self.p, RM)
    }

    /// `x^r` for `x > 0`.
    pub fn powr(&mut self, x: &BigFloat, r: Rational64) -> BigFloat {
        if *r.denom() == 1 {
            return powi(x, *r.numer(), self.p);
        }
        let e = self.rat(r);
        x.pow(&e, self.p, RM, &mut self.cc)
    }

    /// `sin(π r)`, reduced modulo 2 first so that exact zeros stay exact.
    pub fn sin_pi(&mut self, r: Rational64) -> BigFloat {
        let r = reduce_mod2(r);
        if *r.denom() == 1 {
            return self.int(0);
        }
        let x = self.pi().mul(&self.rat(r), self.p, RM);
        self.sin(&x)
    }

    pub fn cos_pi(&mut self, r: Rational64) -> BigFloat {
        let r = reduce_mod2(r);
        if *r.denom() == 1 {
            return self.int(if *r.numer() == 0 { 1 } else { -1 });
        }
        if *r.denom() == 2 {
            return self.int(0);
        }
        let x = self.pi().mul(&self.rat(r), self.p, RM);
        self.cos(&x)
    }

    /// `e^{iπr}`: the principal value of `(-1)^r`.
    pub fn cis_pi(&mut self, r: Rational64) -> HPComplex {
        let re = self.cos_pi(r);
        let im = self.sin_pi(r);
        HPComplex { re, im, p: self.p }
    }

    pub fn real(&self, x: BigFloat) -> HPComplex {
        HPComplex { re: x, im: self.int(0), p: self.p }
    }

    pub fn from_rational(&self, r: Rational64) -> HPComplex {
        self.real(self.rat(r))
    }

    pub fn from_int(&self, n: i64) -> HPComplex {
        self.real(self.int(n))
    }

    pub fn zero(&self) -> HPComplex {
        self.from_int(0)
    }

    pub fn one(&self) -> HPComplex {
        self.from_int(1)
    }

    /// `ζ_n^a`.
    pub fn root_of_unity(&mut self, n: i64, a: i64) -> HPComplex {
        self.cis_pi(Rational64::new(2 * a, n))
    }
}

fn reduce_mod2(r: Rational64) -> Rational64 {
    let two = Rational64::from_integer(2);
    let q = (r / two).floor();
    r - q * two
}

pub(crate) fn powi(x: &BigFloat, n: i64, p: usize) -> BigFloat {
    let mut base = x.clone();
    let mut acc = BigFloat::from_i64(1, p);
    let mut e = n.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base, p, RM);
        }
        base = base.mul(&base, p, RM);
        e >>= 1;
    }
    if n < 0 {
        BigFloat::from_i64(1, p).div(&acc, p, RM)
    } else {
        acc
    }
}

/// A complex number with a fixed mantissa width.
#[derive(Clone, Debug)]
pub struct HPComplex {
    re: BigFloat,
    im: BigFloat,
    p: usize,
}

impl HPComplex {
    #[cfg(test)]
    pub(crate) fn new(re: BigFloat, im: BigFloat, p: usize) -> Self {
        HPComplex { re, im, p }
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn bits(&self) -> usize {
        self.p
    }

    pub fn add(&self, o: &HPComplex) -> HPComplex {
        HPComplex { re: self.re.add(&o.re, self.p, RM), im: self.im.add(&o.im, self.p, RM), p: self.p }
    }

    pub fn sub(&self, o: &HPComplex) -> HPComplex {
        HPComplex { re: self.re.sub(&o.re, self.p, RM), im: self.im.sub(&o.im, self.p, RM), p: self.p }
    }

    pub fn neg(&self) -> HPComplex {
        HPComplex { re: self.re.neg(), im: self.im.neg(), p: self.p }
    }

    pub fn conj(&self) -> HPComplex {
        HPComplex { re: self.re.clone(), im: self.im.neg(), p: self.p }
    }

    pub fn mul(&self, o: &HPComplex) -> HPComplex {
        let p = self.p;
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        HPComplex { re, im, p }
    }

    pub fn scale(&self, s: &BigFloat) -> HPComplex {
        HPComplex { re: self.re.mul(s, self.p, RM), im: self.im.mul(s, self.p, RM), p: self.p }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.p;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.p, RM)
    }

    pub fn inv(&self) -> HPComplex {
        let n = self.norm_sqr();
        HPComplex { re: self.re.div(&n, self.p, RM), im: self.im.neg().div(&n, self.p, RM), p: self.p }
    }

    pub fn div(&self, o: &HPComplex) -> HPComplex {
        self.mul(&o.inv())
    }

    /// An exact rational at the given precision.
    pub fn from_rational(r: Rational64, prec: Precision) -> HPComplex {
        Ctx::new(prec).from_rational(r)
    }

    /// `x^e` for a positive real `x`.
    pub fn pow_real(&self, e: Rational64) -> crate::Result<HPComplex> {
        if !self.im.is_zero() || !self.re.is_positive() {
            return Err(crate::Error::pre("real powers need a positive real base"));
        }
        if *e.denom() == 1 {
            return Ok(self.powi(*e.numer()));
        }
        let mut cc = Consts::new().expect("constant cache allocation");
        let ex = BigFloat::from_i64(*e.numer(), self.p).div(&BigFloat::from_i64(*e.denom(), self.p), self.p, RM);
        let re = self.re.pow(&ex, self.p, RM, &mut cc);
        Ok(HPComplex { re, im: BigFloat::from_i64(0, self.p), p: self.p })
    }

    pub fn powi(&self, n: i64) -> HPComplex {
        let mut base = self.clone();
        let mut acc = HPComplex { re: BigFloat::from_i64(1, self.p), im: BigFloat::from_i64(0, self.p), p: self.p };
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        if n < 0 {
            acc.inv()
        } else {
            acc
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// True when `|self| ≤ 10^{exp10}`.
    pub fn is_below(&self, exp10: i32) -> bool {
        if self.is_zero() {
            return true;
        }
        match log2_abs(&self.abs()) {
            None => true,
            // |x| < 2^e; require 2^e ≤ 10^{exp10}
            Some(e) => (e as f64) <= exp10 as f64 * std::f64::consts::LOG2_10,
        }
    }

    /// `log10 |self|` to within a factor of two; `-∞` for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        match log2_abs(&self.abs()) {
            None => f64::NEG_INFINITY,
            Some(e) => e as f64 / std::f64::consts::LOG2_10,
        }
    }

    /// `log10 |self - other|`, an upper estimate.
    pub fn log10_distance(&self, other: &HPComplex) -> f64 {
        self.sub(other).log10_abs()
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    /// Re-rounds to a different mantissa width.
    pub fn with_bits(&self, p: usize) -> HPComplex {
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        let _ = re.set_precision(p, RM);
        let _ = im.set_precision(p, RM);
        HPComplex { re, im, p }
    }

    /// Scientific notation, `digits` significant digits per component.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (decimal(&self.re, digits), decimal(&self.im, digits))
    }
}

/// `digits` significant digits of `x` in scientific notation.
pub fn decimal(x: &BigFloat, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 8;
    let mut y = x.clone();
    let _ = y.set_precision(bits.max(64), RM);
    let mut cc = Consts::new().expect("constant cache allocation");
    let s = y.format(Radix::Dec, RM, &mut cc).unwrap_or_else(|_| "NaN".into());
    trim_decimal(&s, digits)
}

fn trim_decimal(s: &str, digits: usize) -> String {
    let (mant, exp) = s.split_once('e').unwrap_or((s, "+0"));
    let (sign, mant) = mant.strip_prefix('-').map(|m| ("-", m)).unwrap_or(("", mant));
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let frac: String = frac.chars().take(digits.saturating_sub(int.len())).collect();
    let frac = frac.trim_end_matches('0');
    let exp: i64 = exp.parse().unwrap_or(0);
    if frac.is_empty() {
        format!("{sign}{int}e{exp}")
    } else {
        format!("{sign}{int}.{frac}e{exp}")
    }
}

impl fmt::Display for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_decimal(30);
        if self.im.is_zero() {
            write!(f, "{re}")
        } else {
            write!(f, "{re} + {im}i")
        }
    }
}

impl Serialize for HPComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let digits = ((self.p.saturating_sub(GUARD_BITS)) as f64 / std::f64::consts::LOG2_10).floor() as usize;
        let (re, im) = self.to_decimal(digits.max(17));
        let mut out = s.serialize_struct("HPComplex", 2)?;
        out.serialize_field("re", &re)?;
        out.serialize_field("im", &im)?;
        out.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_bounds() {
        assert!(Precision::new(29).is_err());
        assert_eq!(Precision::new(50).unwrap().digits(), 50);
        assert!(Precision::DEFAULT.bits() >= 166 + GUARD_BITS);
    }

    #[test]
    fn arithmetic_roundtrip() {
        let mut c = Ctx::new(Precision::DEFAULT);
        let z = c.root_of_unity(12, 1);
        assert!(z.powi(12).sub(&c.one()).is_below(-45));
        let w = z.mul(&c.from_rational(Rational64::new(3, 7)));
        assert!(w.div(&z).sub(&c.from_rational(Rational64::new(3, 7))).is_below(-45));
        let f = z.to_complex64();
        assert!((f.re - 3f64.sqrt() / 2.0).abs() < 1e-15 && (f.im - 0.5).abs() < 1e-15);
    }

    #[test]
    fn exact_trig_values() {
        let mut c = Ctx::new(Precision::DEFAULT);
        assert!(c.sin_pi(Rational64::from_integer(3)).is_zero());
        assert_eq!(to_f64(&c.cos_pi(Rational64::from_integer(-1))), -1.0);
        assert!(c.cos_pi(Rational64::new(1, 2)).is_zero());
    }

    #[test]
    fn real_powers() {
        let p = Precision::DEFAULT;
        let two = HPComplex::from_rational(Rational64::from_integer(2), p);
        let x = two.pow_real(Rational64::new(4, 5)).unwrap();
        let sixteen = HPComplex::from_rational(Rational64::from_integer(16), p);
        assert!(x.powi(5).sub(&sixteen).is_below(-45));
        assert!(two.neg().pow_real(Rational64::new(1, 2)).is_err());
        assert!(two.pow_real(Rational64::from_integer(-2)).unwrap().sub(&HPComplex::from_rational(Rational64::new(1, 4), p)).is_below(-48));
    }

    #[test]
    fn decimal_formatting() {
        let c = Ctx::new(Precision::DEFAULT);
        let x = c.rat(Rational64::new(-2, 3));
        assert_eq!(decimal(&x, 5), "-6.6666e-1");
        assert_eq!(decimal(&c.int(16), 10), "1.6e1");
    }
}
