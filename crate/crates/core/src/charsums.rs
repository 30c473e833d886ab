//! Multiplicative characters, Gauss and Jacobi sums, and the exact identities built on them.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{gcd, is_prime, lcm, modulo};
use crate::cyclotomic::{CycAccumulator, CycNumber};
use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FieldSpec};

/// `χ(x) = ζ_M^{t dlog x}` for `x != 0` and `χ(0) = 0`.
#[derive(Clone, Debug)]
pub struct MultCharacter {
    field: Arc<FieldSpec>,
    m: u64,
    t: u64,
}

impl PartialEq for MultCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.m == other.m && self.t == other.t
    }
}

impl Eq for MultCharacter {}

impl MultCharacter {
    pub fn new(field: Arc<FieldSpec>, m: u64, t: i64) -> Result<Self> {
        if m == 0 || (field.q() - 1) % m != 0 {
            return Err(Error::WrongCongruence { q: field.q(), modulus: m });
        }
        Ok(MultCharacter { t: modulo(t, m), field, m })
    }

    pub fn trivial(field: Arc<FieldSpec>, m: u64) -> Result<Self> {
        Self::new(field, m, 0)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn exponent(&self) -> u64 {
        self.t
    }

    pub fn order(&self) -> u64 {
        self.m / gcd(self.m, self.t)
    }

    pub fn is_trivial(&self) -> bool {
        self.t == 0
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    /// Exponent `e` with `χ(x) = ζ_M^e`, or `None` at `x = 0`.
    pub fn eval_exp(&self, x: FieldElement) -> Option<u64> {
        let l = self.field.dlog(x).ok()?;
        Some((l % self.m) * self.t % self.m)
    }

    /// `χ(x)` in `Z[ζ_M]`.
    pub fn value(&self, x: FieldElement) -> CycNumber {
        match self.eval_exp(x) {
            Some(e) => CycNumber::zeta(self.m, None, e as i64),
            None => CycNumber::zero(self.m, None),
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        MultCharacter { field: self.field.clone(), m: self.m, t: modulo(self.t as i64 * e, self.m) }
    }

    pub fn conj(&self) -> Self {
        self.pow(-1)
    }

    /// Same character written over the modulus `m2`, a multiple of `M` dividing `q - 1`.
    pub fn with_modulus(&self, m2: u64) -> Result<Self> {
        if m2 % self.m != 0 {
            return Err(Error::pre(format!("modulus {m2} is not a multiple of {}", self.m)));
        }
        Self::new(self.field.clone(), m2, (self.t * (m2 / self.m)) as i64)
    }

    /// Product character over the least common modulus.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !self.same_field(other) {
            return Err(Error::FieldMismatch);
        }
        let m = lcm(self.m, other.m);
        let (a, b) = (self.with_modulus(m)?, other.with_modulus(m)?);
        Self::new(self.field.clone(), m, (a.t + b.t) as i64)
    }
}

fn common_modulus(chars: &[&MultCharacter]) -> Result<u64> {
    let first = chars[0];
    let mut m = first.m;
    for c in &chars[1..] {
        if !first.same_field(c) {
            return Err(Error::FieldMismatch);
        }
        m = lcm(m, c.m);
    }
    Ok(m)
}

/// `Σ_x χ(x)` over `F_q` (so `q - 1` for the trivial character).
pub fn character_sum(chi: &MultCharacter) -> CycNumber {
    let mut acc = CycAccumulator::new(chi.m, None);
    for x in chi.field.elements().skip(1) {
        acc.add_term(chi.eval_exp(x).expect("nonzero"), 0, 1);
    }
    acc.finish()
}

/// Exact `g(χ) = Σ_{x in F_p} χ(x) ζ_p^x` in `Z[ζ_M, ζ_p]`.
pub fn gauss_sum(chi: &MultCharacter) -> Result<CycNumber> {
    let f = &chi.field;
    if f.degree() > 1 {
        return Err(Error::ExtensionFieldExactUnsupported(f.degree()));
    }
    let p = f.p();
    let mut acc = CycAccumulator::new(chi.m, Some(p));
    for x in f.elements().skip(1) {
        acc.add_term(chi.eval_exp(x).expect("nonzero"), x.index() as u64, 1);
    }
    Ok(acc.finish())
}

/// Absolute trace `F_q -> F_p`, as a residue.
pub fn absolute_trace(f: &FieldSpec, x: FieldElement) -> u64 {
    let mut sum = f.zero();
    let mut y = x;
    for _ in 0..f.degree() {
        sum = f.add(sum, y);
        y = f.frobenius(y);
    }
    f.coeffs(sum)[0]
}

/// `Σ_x χ(x) e^{2πi Tr(x)/p}` in floating point; works over any `F_{p^s}`.
pub fn gauss_sum_complex(chi: &MultCharacter) -> Complex64 {
    let f = &chi.field;
    let tau = std::f64::consts::TAU;
    f.elements()
        .skip(1)
        .map(|x| {
            let e = chi.eval_exp(x).expect("nonzero") as f64 / chi.m as f64;
            let tr = absolute_trace(f, x) as f64 / f.p() as f64;
            Complex64::from_polar(1.0, tau * (e + tr))
        })
        .sum()
}

/// Exact `J(χ1, χ2) = Σ_x χ1(x) χ2(1 - x)` in `Z[ζ_M]`, `M` the common modulus.
pub fn jacobi_sum(chi1: &MultCharacter, chi2: &MultCharacter) -> Result<CycNumber> {
    let m = common_modulus(&[chi1, chi2])?;
    let (a, b) = (chi1.with_modulus(m)?, chi2.with_modulus(m)?);
    Ok(jacobi_by_exponents(&a.field, m, a.t, b.t))
}

pub(crate) fn jacobi_by_exponents(f: &FieldSpec, m: u64, t1: u64, t2: u64) -> CycNumber {
    let mut acc = CycAccumulator::new(m, None);
    let one = f.one();
    // indices 0 and 1 are the elements 0 and 1
    for x in f.elements().skip(2) {
        let y = f.sub(one, x);
        let lx = f.dlog(x).expect("nonzero") % m;
        let ly = f.dlog(y).expect("nonzero") % m;
        acc.add_term((lx * t1 + ly * t2) % m, 0, 1);
    }
    acc.finish()
}

/// Outcome of an exact identity check with both sides kept as a witness.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub lhs: CycNumber,
    pub rhs: CycNumber,
}

impl IdentityCheck {
    pub fn new(lhs: CycNumber, rhs: CycNumber) -> Self {
        IdentityCheck { holds: lhs == rhs, lhs, rhs }
    }
}

/// The canonical order-`M` character `ξ_M` over `F_p`.
pub fn canonical_character(field: Arc<FieldSpec>, m: u64) -> Result<MultCharacter> {
    MultCharacter::new(field, m, 1)
}

fn hd_sides(p: u64, m: u64, ell: u64, a: i64, printed_sign: bool) -> Result<IdentityCheck> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m % 2 != 0 || m == 0 {
        return Err(Error::pre(format!("M = {m} must be even")));
    }
    if (p - 1) % m != 0 {
        return Err(Error::WrongCongruence { q: p, modulus: m });
    }
    if ell == 0 || m % ell != 0 {
        return Err(Error::pre(format!("ℓ = {ell} must divide M = {m}")));
    }
    let field = Arc::new(FieldSpec::build(p, 1)?);
    let chi = canonical_character(field.clone(), m)?;
    let half = m as i64 / 2;
    let l = ell as i64;
    let g = |e: i64| gauss_sum(&chi.pow(e));
    let ring = |c: &CycNumber| c.lift(m, Some(p));

    // g(χ^{ℓa}) g(χ^{M/2})^{ℓ-1} χ(2^{M/2})^{ℓ-1} = χ(ℓ^{ℓa - M/2}) Π_j g(χ^{a + (M/ℓ) j})
    let g_half = g(half)?;
    let two = field.from_int(2);
    let chi_two_half = ring(&chi.value(field.pow(two, half).expect("nonzero")));
    let lhs = &(&g(l * a)? * &g_half.pow(ell - 1)) * &chi_two_half.pow(ell - 1);

    let ell_elem = field.from_int(l);
    let ell_pow = field.pow(ell_elem, l * a - half).expect("ℓ is a unit mod p");
    let mut rhs = ring(&chi.value(ell_pow));
    for j in 0..l {
        rhs = &rhs * &g(a + (m as i64 / l) * j)?;
    }
    if printed_sign && ell % 2 == 1 {
        rhs = -&rhs;
    }
    Ok(IdentityCheck::new(lhs, rhs))
}

/// Checks the Hasse-Davenport product relation for `χ = ξ_M` over `F_p`, cross-multiplied so
/// that no division is needed.
pub fn hasse_davenport_check(p: u64, m: u64, ell: u64, a: i64) -> Result<IdentityCheck> {
    hd_sides(p, m, ell, a, false)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum QuotientVerdict {
    /// `F(η) = ζ_M^exponent`, compatible with every Galois conjugate.
    CharacterLike { exponent: u64 },
    NotCharacterLike { witness: String },
}

impl QuotientVerdict {
    pub fn is_character_like(&self) -> bool {
        matches!(self, QuotientVerdict::CharacterLike { .. })
    }
}

/// `F(η^a) = J(η^{a n1}, η^{a n2}) / J(η^{a d1}, η^{a d2})` for `η = ξ_M` over `F_p`, tested for
/// being an `M`-th root of unity with `F(η^a) = F(η)^a` for every unit `a`.
pub fn jacobi_quotient_verdict(p: u64, m: u64, num: (i64, i64), den: (i64, i64)) -> Result<QuotientVerdict> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if (p - 1) % m != 0 {
        return Err(Error::WrongCongruence { q: p, modulus: m });
    }
    let field = FieldSpec::build(p, 1)?;
    let j = |x: i64, y: i64| jacobi_by_exponents(&field, m, modulo(x, m), modulo(y, m));
    let quotient = |a: i64| j(a * num.0, a * num.1).div_exact(&j(a * den.0, a * den.1));

    let f1 = match quotient(1) {
        Ok(f) => f,
        Err(Error::NonUnitQuotient) => {
            return Ok(QuotientVerdict::NotCharacterLike {
                witness: "F(η) is not a cyclotomic integer".into(),
            })
        }
        Err(e) => return Err(e),
    };
    if f1.pow(m) != CycNumber::one(m, None) {
        return Ok(QuotientVerdict::NotCharacterLike { witness: format!("F(η)^{m} != 1, F(η) = {f1}") });
    }
    for a in (2..m as i64).filter(|&a| gcd(a as u64, m) == 1) {
        match quotient(a) {
            Ok(fa) if fa == f1.pow(a as u64) => {}
            Ok(fa) => {
                return Ok(QuotientVerdict::NotCharacterLike {
                    witness: format!("F(η^{a}) = {fa} differs from F(η)^{a}"),
                })
            }
            Err(Error::NonUnitQuotient) => {
                return Ok(QuotientVerdict::NotCharacterLike {
                    witness: format!("F(η^{a}) is not a cyclotomic integer"),
                })
            }
            Err(e) => return Err(e),
        }
    }
    let exponent = (0..m)
        .find(|&e| CycNumber::zeta(m, None, e as i64) == f1)
        .expect("an M-th root of unity in Q(ζ_M) is a power of ζ_M for even M");
    Ok(QuotientVerdict::CharacterLike { exponent })
}

/// Tests whether `J(η^j, η^{k-j}) / J(η^i, η^{k-i})` behaves like a character of order `M`.
pub fn character_quotient_test(m: u64, i: i64, j: i64, k: i64, p: u64) -> Result<QuotientVerdict> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::pre(format!("M = {m} must be even and at least 4")));
    }
    for (name, v) in [("i", i), ("j", j), ("k", k), ("k-i", k - i), ("k-j", k - j)] {
        if v.rem_euclid(m as i64) == 0 {
            return Err(Error::pre(format!("M = {m} divides {name} = {v}")));
        }
    }
    jacobi_quotient_verdict(p, m, (j, k - j), (i, k - i))
}
