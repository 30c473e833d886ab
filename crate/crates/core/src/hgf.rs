//! Greene's finite-field ₂F₁, by definition and by the character-sum expansion, with exact
//! verifiers for the transformation identities between them.

use std::sync::{Arc, OnceLock};

use crate::arith::{gcd, lcm};
use crate::charsums::{jacobi_by_exponents, IdentityCheck, MultCharacter};
use crate::cyclotomic::{CycAccumulator, CycNumber, CycRational};
use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FieldSpec};

/// Characters rewritten as exponents over one common modulus.
struct Exps<'a> {
    field: &'a FieldSpec,
    m: u64,
}

impl<'a> Exps<'a> {
    fn of(chars: &[&'a MultCharacter]) -> Result<(Exps<'a>, Vec<u64>)> {
        let first = chars[0];
        let mut m = first.modulus();
        for c in &chars[1..] {
            if !first.same_field(c) {
                return Err(Error::FieldMismatch);
            }
            m = lcm(m, c.modulus());
        }
        let exps = chars.iter().map(|c| c.exponent() * (m / c.modulus()) % m).collect();
        Ok((Exps { field: first.field(), m }, exps))
    }

    fn neg(&self, t: u64) -> u64 {
        (self.m - t % self.m) % self.m
    }

    fn add(&self, s: u64, t: u64) -> u64 {
        (s + t) % self.m
    }

    /// `ζ_M^{t dlog x}`, or 0 at `x = 0`.
    fn chi(&self, t: u64, x: FieldElement) -> CycNumber {
        match self.field.dlog(x) {
            Ok(l) => CycNumber::zeta(self.m, None, ((l % self.m) * t % self.m) as i64),
            Err(_) => CycNumber::zero(self.m, None),
        }
    }

    fn minus_one(&self) -> FieldElement {
        self.field.neg(self.field.one())
    }

    fn jacobi(&self, s: u64, t: u64) -> CycNumber {
        jacobi_by_exponents(self.field, self.m, s, t)
    }

    fn def(&self, a: u64, b: u64, c: u64, lambda: FieldElement) -> CycRational {
        greene_def_exps(self.field, self.m, a, b, c, lambda)
    }
}

pub(crate) fn greene_def_exps(f: &FieldSpec, m: u64, a: u64, b: u64, c: u64, lambda: FieldElement) -> CycRational {
    let q = f.q();
    if lambda.is_zero() {
        return CycRational::new(CycNumber::zero(m, None), 1);
    }
    let one = f.one();
    let n = f.q() - 1;
    // BC(-1): dlog(-1) = (q-1)/2
    let sign = (b + c) % m * ((n / 2) % m) % m;
    let bc = (c + m - b) % m;
    let mut acc = CycAccumulator::new(m, None);
    for x in f.elements().skip(1) {
        let u = f.sub(one, x);
        let v = f.sub(one, f.mul(lambda, x));
        if u.is_zero() || v.is_zero() {
            continue;
        }
        let (lx, lu, lv) = (f.dlog(x).unwrap() % m, f.dlog(u).unwrap() % m, f.dlog(v).unwrap() % m);
        let e = (b * lx + bc * lu + (m - a) % m * lv + sign) % m;
        acc.add_term(e, 0, 1);
    }
    CycRational::new(acc.finish(), q)
}

/// `(A choose B) = B(-1)/q · J(A, B̄)`.
pub fn greene_binomial(a: &MultCharacter, b: &MultCharacter) -> Result<CycRational> {
    let (ex, t) = Exps::of(&[a, b])?;
    let sign = ex.chi(t[1], ex.minus_one());
    let j = ex.jacobi(t[0], ex.neg(t[1]));
    Ok(CycRational::new(&sign * &j, ex.field.q()))
}

/// `ε(λ) BC(-1)/q · Σ_x B(x) B̄C(1-x) Ā(1-λx)`, exact in `Z[ζ_M]` for the common modulus `M`.
pub fn greene_2f1_def(a: &MultCharacter, b: &MultCharacter, c: &MultCharacter, lambda: FieldElement) -> Result<CycRational> {
    let (ex, t) = Exps::of(&[a, b, c])?;
    Ok(ex.def(t[0], t[1], t[2], lambda))
}

/// Character-sum evaluation over all characters of `F_q^×`, in `Z[ζ_{q-1}]`.
pub struct GreeneContext {
    field: Arc<FieldSpec>,
    n: u64,
    jacobi: Vec<OnceLock<CycNumber>>,
}

impl GreeneContext {
    pub fn new(field: Arc<FieldSpec>) -> Self {
        let n = field.q() - 1;
        let jacobi = (0..n * n).map(|_| OnceLock::new()).collect();
        GreeneContext { field, n, jacobi }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    /// Exponent of a character over the full modulus `q - 1`.
    pub fn exponent_of(&self, chi: &MultCharacter) -> Result<u64> {
        if **chi.field() != *self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(chi.exponent() * (self.n / chi.modulus()) % self.n)
    }

    fn jacobi(&self, s: u64, t: u64) -> &CycNumber {
        let (s, t) = (s % self.n, t % self.n);
        self.jacobi[(s * self.n + t) as usize].get_or_init(|| jacobi_by_exponents(&self.field, self.n, s, t))
    }

    /// `q/(q-1) Σ_χ (Aχ choose χ)(Bχ choose Cχ) χ(λ)` with `A, B, C` given as exponents mod `q - 1`.
    pub fn f_sum(&self, a: u64, b: u64, c: u64, lambda: FieldElement) -> CycRational {
        let n = self.n;
        let q = self.field.q();
        let Ok(ll) = self.field.dlog(lambda) else {
            return CycRational::new(CycNumber::zero(n, None), 1);
        };
        let half = n / 2;
        let mut total = CycNumber::zero(n, None);
        for t in 0..n {
            // χ(-1) Cχ(-1) χ(λ)
            let e = (t * half + (c + t) * half + t * ll) % n;
            let j1 = self.jacobi(a + t, n - t);
            let j2 = self.jacobi(b + t, 2 * n - c - t);
            let term = &CycNumber::zeta(n, None, e as i64) * &(j1 * j2);
            total = &total + &term;
        }
        CycRational::new(total, q * (q - 1))
    }

    pub fn f_def(&self, a: u64, b: u64, c: u64, lambda: FieldElement) -> CycRational {
        greene_def_exps(&self.field, self.n, a % self.n, b % self.n, c % self.n, lambda)
    }
}

/// Greene's ₂F₁ through its character-sum expansion, in `Z[ζ_{q-1}]`.
pub fn greene_2f1_sum(a: &MultCharacter, b: &MultCharacter, c: &MultCharacter, lambda: FieldElement) -> Result<CycRational> {
    Exps::of(&[a, b, c])?;
    let ctx = GreeneContext::new(a.field().clone());
    Ok(ctx.f_sum(ctx.exponent_of(a)?, ctx.exponent_of(b)?, ctx.exponent_of(c)?, lambda))
}

/// Compares two rational cyclotomic values after clearing denominators.
pub fn rational_check(lhs: &CycRational, rhs: &CycRational) -> IdentityCheck {
    let l = lhs.numerator().scale(rhs.denominator());
    let r = rhs.numerator().scale(lhs.denominator());
    IdentityCheck::new(l, r)
}

/// `J(A, C̄) ₂F₁(A, B; C; λ) = J(B, C̄) ₂F₁(B, A; C; λ)`, needing `A, B, AC̄, BC̄ != ε`.
pub fn verify_jacobi_swap(a: &MultCharacter, b: &MultCharacter, c: &MultCharacter, lambda: FieldElement) -> Result<IdentityCheck> {
    let (ex, t) = Exps::of(&[a, b, c])?;
    let (ta, tb, tc) = (t[0], t[1], t[2]);
    let cbar = ex.neg(tc);
    if ta == 0 || tb == 0 || ex.add(ta, cbar) == 0 || ex.add(tb, cbar) == 0 {
        return Err(Error::pre("A, B, AC̄ and BC̄ must all be nontrivial"));
    }
    let lhs = ex.def(ta, tb, tc, lambda).mul_cyc(&ex.jacobi(ta, cbar));
    let rhs = ex.def(tb, ta, tc, lambda).mul_cyc(&ex.jacobi(tb, cbar));
    Ok(rational_check(&lhs, &rhs))
}

/// `₂F₁(A, B; ε; λ) = ₂F₁(B, A; ε; λ)`.
pub fn verify_parameter_swap(a: &MultCharacter, b: &MultCharacter, lambda: FieldElement) -> Result<IdentityCheck> {
    let (ex, t) = Exps::of(&[a, b])?;
    Ok(rational_check(&ex.def(t[0], t[1], 0, lambda), &ex.def(t[1], t[0], 0, lambda)))
}

/// `₂F₁(A, B; C; λ) = AB(-1) C̄(-λ) CĀB̄(1-λ) J(B, B̄C)/J(A, ĀC) ₂F₁(Ā, B̄; C̄; λ)`,
/// cross-multiplied by `J(A, ĀC)`.
pub fn verify_conjugate_inversion(a: &MultCharacter, b: &MultCharacter, c: &MultCharacter, lambda: FieldElement) -> Result<IdentityCheck> {
    let (ex, t) = Exps::of(&[a, b, c])?;
    let (ta, tb, tc) = (t[0], t[1], t[2]);
    if ta == 0 || tb == 0 {
        return Err(Error::pre("A and B must be nontrivial"));
    }
    if ta == tc || tb == tc {
        return Err(Error::pre("A and B must differ from C"));
    }
    let f = ex.field;
    if lambda.is_zero() || lambda == f.one() {
        return Err(Error::pre("λ must avoid 0 and 1"));
    }
    let (abar, bbar, cbar) = (ex.neg(ta), ex.neg(tb), ex.neg(tc));
    let lhs = ex.def(ta, tb, tc, lambda).mul_cyc(&ex.jacobi(ta, ex.add(abar, tc)));
    let factor = &(&ex.chi(ex.add(ta, tb), ex.minus_one()) * &ex.chi(cbar, f.neg(lambda)))
        * &(&ex.chi(ex.add(tc, ex.add(abar, bbar)), f.sub(f.one(), lambda)) * &ex.jacobi(tb, ex.add(bbar, tc)));
    let rhs = ex.def(abar, bbar, cbar, lambda).mul_cyc(&factor);
    Ok(rational_check(&lhs, &rhs))
}

fn require_order(eta: &MultCharacter, order: u64) -> Result<()> {
    if eta.order() != order {
        return Err(Error::pre(format!("η must have order {order}, got {}", eta.order())));
    }
    Ok(())
}

/// The chain of equalities between four ₂F₁ values attached to an order-12 character.
pub fn verify_order12_chain(eta: &MultCharacter, lambda: FieldElement) -> Result<Vec<IdentityCheck>> {
    require_order(eta, 12)?;
    let (ex, t) = Exps::of(&[eta])?;
    let f = ex.field;
    if f.p() == 3 || lambda.is_zero() || lambda == f.one() {
        return Err(Error::pre("λ must avoid 0 and 1"));
    }
    let e = t[0];
    let pw = |k: i64| (e as i64 * k).rem_euclid(ex.m as i64) as u64;
    let one_minus = f.sub(f.one(), lambda);
    let u6 = f.pow(one_minus, 6).unwrap();
    let m27 = f.from_int(-27);
    let c3 = f.mul(m27, u6);
    let c4 = f.mul(c3, f.mul(lambda, lambda));

    let v1 = ex.def(pw(1), pw(3), pw(-2), lambda);
    let v2 = ex.def(pw(5), pw(3), pw(2), lambda).mul_cyc(&ex.chi(pw(2), lambda));
    let v3 = ex.def(pw(-5), pw(-3), pw(-2), lambda).mul_cyc(&ex.chi(pw(1), c3));
    let v4 = ex.def(pw(-1), pw(-3), pw(2), lambda).mul_cyc(&ex.chi(pw(1), c4));
    Ok(vec![rational_check(&v1, &v2), rational_check(&v2, &v3), rational_check(&v3, &v4)])
}

/// `₂F₁(η, η²; η̄; λ) = η(λ) η²((1-λ)/4) ₂F₁(η̄, η̄²; η; λ)` for an order-6 character.
pub fn verify_order6_example(eta: &MultCharacter, lambda: FieldElement) -> Result<IdentityCheck> {
    require_order(eta, 6)?;
    let (ex, t) = Exps::of(&[eta])?;
    let f = ex.field;
    if lambda.is_zero() || lambda == f.one() {
        return Err(Error::pre("λ must avoid 0 and 1"));
    }
    let e = t[0];
    let pw = |k: i64| (e as i64 * k).rem_euclid(ex.m as i64) as u64;
    let quarter = f.div(f.sub(f.one(), lambda), f.from_int(4)).unwrap();
    let lhs = ex.def(pw(1), pw(2), pw(-1), lambda);
    let factor = &ex.chi(pw(1), lambda) * &ex.chi(pw(2), quarter);
    let rhs = ex.def(pw(-1), pw(-2), pw(1), lambda).mul_cyc(&factor);
    Ok(rational_check(&lhs, &rhs))
}

/// Counts of an exhaustive identity sweep at one prime.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepTally {
    pub checked: u64,
    pub failures: Vec<String>,
}

impl SweepTally {
    fn record(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(label());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every identity of the Greene suite over all `(A, B, C, λ)` with `A, B, C` of order dividing
/// `p - 1`. Returns one tally per identity: definition vs sum, Jacobi swap, symmetry for
/// `C = ε`, and the conjugation transform.
pub fn greene_suite(p: u64) -> Result<[SweepTally; 4]> {
    let field = Arc::new(FieldSpec::build(p, 1)?);
    let ctx = GreeneContext::new(field.clone());
    let n = p - 1;
    let chars: Vec<MultCharacter> = (0..n as i64).map(|t| MultCharacter::new(field.clone(), n, t)).collect::<Result<_>>()?;
    let mut out: [SweepTally; 4] = Default::default();
    for (a, ca) in chars.iter().enumerate() {
        for (b, cb) in chars.iter().enumerate() {
            for lambda in field.elements() {
                let r = verify_parameter_swap(ca, cb, lambda)?;
                out[2].record(r.holds, || format!("cor a={a} b={b} λ={}", lambda.index()));
            }
            for (c, cc) in chars.iter().enumerate() {
                let (a, b, c) = (a as u64, b as u64, c as u64);
                for lambda in field.elements() {
                    let label = || format!("a={a} b={b} c={c} λ={}", lambda.index());
                    let def = ctx.f_def(a, b, c, lambda);
                    let sum = ctx.f_sum(a, b, c, lambda);
                    out[0].record(def == sum, label);
                    let cbar = (n - c) % n;
                    if a != 0 && b != 0 && (a + cbar) % n != 0 && (b + cbar) % n != 0 {
                        let r = verify_jacobi_swap(ca, cb, cc, lambda)?;
                        out[1].record(r.holds, label);
                    }
                    if a != 0 && b != 0 && a != c && b != c && !lambda.is_zero() && lambda != field.one() {
                        let r = verify_conjugate_inversion(ca, cb, cc, lambda)?;
                        out[3].record(r.holds, label);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All characters of exact order `order`, as powers of `ξ_order`.
pub fn characters_of_order(field: &Arc<FieldSpec>, order: u64) -> Result<Vec<MultCharacter>> {
    (1..order as i64)
        .filter(|&t| gcd(t as u64, order) == 1)
        .map(|t| MultCharacter::new(field.clone(), order, t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    fn field(p: u64) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::build(p, 1).unwrap())
    }

    fn ch(f: &Arc<FieldSpec>, m: u64, t: i64) -> MultCharacter {
        MultCharacter::new(f.clone(), m, t).unwrap()
    }

    #[test]
    fn binomial_values() {
        let f = field(11);
        let eps = ch(&f, 10, 0);
        let v = greene_binomial(&eps, &eps).unwrap();
        assert_eq!(v, CycRational::new(CycNumber::from_int(10, None, 9), 11));
        let eta = ch(&f, 10, 1);
        let v = greene_binomial(&eta, &eps).unwrap();
        assert_eq!(v, CycRational::new(CycNumber::from_int(10, None, -1), 11));
    }

    #[test]
    fn binomial_by_direct_summation() {
        let f = field(11);
        let (a, b) = (ch(&f, 10, 1), ch(&f, 10, 3));
        // B(-1)/q Σ A(x) B̄(1-x), nine nonzero terms
        let mut acc = CycNumber::zero(10, None);
        for x in 2..11 {
            let x = f.from_int(x);
            let term = &a.value(x) * &b.conj().value(f.sub(f.one(), x));
            acc = &acc + &term;
        }
        let expected = CycRational::new(&b.value(f.from_int(-1)) * &acc, 11);
        assert_eq!(greene_binomial(&a, &b).unwrap(), expected);
    }

    #[test]
    fn def_by_direct_summation() {
        let f = field(7);
        let (a, b, c) = (ch(&f, 6, 1), ch(&f, 6, 2), ch(&f, 6, -1));
        let lambda = f.from_int(3);
        let mut acc = CycNumber::zero(6, None);
        for x in 0..7 {
            let x = f.from_int(x);
            let one_minus = f.sub(f.one(), x);
            let t = &(&b.value(x) * &b.conj().mul(&c).unwrap().value(one_minus))
                * &a.conj().value(f.sub(f.one(), f.mul(lambda, x)));
            acc = &acc + &t;
        }
        let sign = b.mul(&c).unwrap().value(f.from_int(-1));
        let expected = CycRational::new(&sign * &acc, 7);
        assert_eq!(greene_2f1_def(&a, &b, &c, lambda).unwrap(), expected);
        assert!(greene_2f1_def(&a, &b, &c, f.zero()).unwrap().is_zero());
        assert!(greene_2f1_sum(&a, &b, &c, f.zero()).unwrap().is_zero());
    }

    #[test]
    fn def_matches_sum_on_mixed_moduli() {
        let f = field(13);
        let (a, b, c) = (ch(&f, 4, 1), ch(&f, 6, 5), ch(&f, 3, 1));
        for l in 0..13 {
            let lambda = f.from_int(l);
            let d = greene_2f1_def(&a, &b, &c, lambda).unwrap().lift(12);
            let s = greene_2f1_sum(&a, &b, &c, lambda).unwrap();
            assert_eq!(d, s);
        }
        let eps = ch(&field(11), 10, 0);
        let two = eps.field().from_int(2);
        assert_eq!(greene_2f1_def(&eps, &eps, &eps, two).unwrap(), greene_2f1_sum(&eps, &eps, &eps, two).unwrap());
    }

    #[test]
    fn identity_examples() {
        let f = field(7);
        let three = f.from_int(3);
        assert!(verify_jacobi_swap(&ch(&f, 6, 1), &ch(&f, 6, 2), &ch(&f, 6, 4), three).unwrap().holds);
        assert!(verify_jacobi_swap(&ch(&f, 6, 2), &ch(&f, 6, 2), &ch(&f, 6, 5), three).unwrap().holds);
        assert!(verify_parameter_swap(&ch(&f, 6, 1), &ch(&f, 6, 3), f.from_int(4)).unwrap().holds);
        assert!(verify_conjugate_inversion(&ch(&f, 6, 1), &ch(&f, 6, 2), &ch(&f, 6, 4), three).unwrap().holds);
        assert!(matches!(
            verify_conjugate_inversion(&ch(&f, 6, 1), &ch(&f, 6, 2), &ch(&f, 6, 4), f.one()),
            Err(Error::Precondition(_))
        ));
        let g = field(13);
        assert!(verify_conjugate_inversion(&ch(&g, 12, 1), &ch(&g, 12, 3), &ch(&g, 12, -2), g.from_int(2)).unwrap().holds);
        let h = field(11);
        assert!(verify_jacobi_swap(&ch(&h, 10, 3), &ch(&h, 10, 7), &ch(&h, 10, 4), h.from_int(5)).unwrap().holds);
    }

    #[test]
    fn full_suite_at_seven() {
        for tally in greene_suite(7).unwrap() {
            assert!(tally.checked > 0);
            assert!(tally.passed(), "{:?}", &tally.failures[..tally.failures.len().min(5)]);
        }
    }

    #[test]
    fn parameter_swap_full_enumeration_at_eleven() {
        let f = field(11);
        for a in 0..10 {
            for b in 0..10 {
                for l in 0..11 {
                    assert!(verify_parameter_swap(&ch(&f, 10, a), &ch(&f, 10, b), f.from_int(l)).unwrap().holds);
                }
            }
        }
    }

    #[test]
    fn order12_chain() {
        for p in [13u64, 37] {
            let f = field(p);
            for eta in characters_of_order(&f, 12).unwrap() {
                for l in 2..p as i64 {
                    for c in verify_order12_chain(&eta, f.from_int(l)).unwrap() {
                        assert!(c.holds, "p={p} λ={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn order6_example() {
        for p in [7u64, 13, 19, 31] {
            let f = field(p);
            for eta in characters_of_order(&f, 6).unwrap() {
                for l in 2..p as i64 {
                    assert!(verify_order6_example(&eta, f.from_int(l)).unwrap().holds, "p={p} λ={l}");
                }
            }
        }
    }
}
