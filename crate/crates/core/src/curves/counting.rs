use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::CurveInstance;
use crate::arith::{euler_phi, gcd, modulo};
use crate::cyclotomic::{CycAccumulator, CycNumber, CycRational};
use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FieldSpec};
use crate::hgf::greene_def_exps;

/// Points above the four singular points of the affine model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResolvedCounts {
    pub n0: u64,
    pub n1: u64,
    pub n_inv_lambda: u64,
    pub n_inf: u64,
}

impl ResolvedCounts {
    pub fn sum(&self) -> u64 {
        self.n0 + self.n1 + self.n_inv_lambda + self.n_inf
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub q: u64,
    /// `Σ_x #{y : y^N = f(x)}`; only filled by the brute-force sweep.
    pub affine_sum: Option<u64>,
    pub resolved: ResolvedCounts,
    /// Points on the smooth model.
    pub total: u64,
}

impl CountResult {
    /// `q + 1 - total`.
    pub fn trace(&self) -> i64 {
        self.q as i64 + 1 - self.total as i64
    }
}

/// Image of `λ` in `F_q`, rejecting bad primes.
pub fn reduce_lambda(inst: &CurveInstance, f: &FieldSpec) -> Result<FieldElement> {
    let p = f.p();
    if let Some(reason) = inst.bad_reduction(p) {
        return Err(Error::BadReduction { p, reason });
    }
    let l = inst.lambda();
    Ok(f.from_rational(*l.numer(), *l.denom()).expect("denominator is a unit"))
}

fn pow_int(f: &FieldSpec, x: FieldElement, e: i64) -> FieldElement {
    f.pow(x, e).expect("unit base")
}

/// Resolved-point counts `n_0, n_1, n_{1/λ}, n_∞`.
///
/// Around each singular point the curve looks like `w^g = c · (unit)` with `g` the gcd of `N`
/// and the local exponent; the counts are `#{w : w^g = c}` with
/// `c_0 = 1`, `c_1 = (1-λ)^k`, `c_{1/λ} = λ^{-i} (1-1/λ)^j`, `c_∞ = (-1)^j (-λ)^k`.
pub fn resolved_counts(inst: &CurveInstance, f: &FieldSpec) -> Result<ResolvedCounts> {
    let lambda = reduce_lambda(inst, f)?;
    let fam = inst.family();
    let (n, i, j, k) = (fam.n(), fam.i(), fam.j(), fam.k());
    let one = f.one();
    let minus_one = f.neg(one);
    let one_minus = f.sub(one, lambda);
    let inv = f.inv(lambda).expect("λ is a unit");

    let c1 = pow_int(f, one_minus, k as i64);
    let c_inv = f.mul(pow_int(f, lambda, -(i as i64)), pow_int(f, f.sub(one, inv), j as i64));
    let c_inf = f.mul(pow_int(f, minus_one, j as i64), pow_int(f, f.neg(lambda), k as i64));
    let s = i + j + k;
    let e = s / n + 1;
    Ok(ResolvedCounts {
        n0: f.nth_power_count(one, gcd(n, i)),
        n1: f.nth_power_count(c1, gcd(n, j)),
        n_inv_lambda: f.nth_power_count(c_inv, gcd(n, k)),
        n_inf: f.nth_power_count(c_inf, gcd(n, e * n - s)),
    })
}

/// Point count of the smooth model by sweeping every `x` in `F_q`.
pub fn count_points_brute(inst: &CurveInstance, f: &FieldSpec) -> Result<CountResult> {
    let resolved = resolved_counts(inst, f)?;
    let lambda = reduce_lambda(inst, f)?;
    let fam = inst.family();
    let (n, i, j, k) = (fam.n(), fam.i() as i64, fam.j() as i64, fam.k() as i64);
    let one = f.one();
    let mut affine = 0u64;
    for x in f.elements() {
        let u = f.sub(one, x);
        let w = f.sub(one, f.mul(lambda, x));
        let v = match (f.pow(x, i), f.pow(u, j), f.pow(w, k)) {
            (Some(a), Some(b), Some(c)) => f.mul(f.mul(a, b), c),
            _ => unreachable!("positive exponents"),
        };
        affine += f.nth_power_count(v, n);
    }
    Ok(CountResult { q: f.q(), affine_sum: Some(affine), resolved, total: affine + resolved.sum() - 3 })
}

fn require_congruence(inst: &CurveInstance, f: &FieldSpec) -> Result<()> {
    let n = inst.family().n();
    if (f.q() - 1) % n != 0 {
        return Err(Error::WrongCongruence { q: f.q(), modulus: n });
    }
    Ok(())
}

/// `ξ^{mj}(-1) ₂F₁(ξ^{-km}, ξ^{im}; ξ^{m(i+j)}; λ)` in `Z[ζ_N]`, with `ξ` the canonical
/// order-`N` character.
fn weighted_hgf(inst: &CurveInstance, f: &FieldSpec, lambda: FieldElement, m: u64) -> CycRational {
    let fam = inst.family();
    let (n, i, j, k) = (fam.n(), fam.i(), fam.j(), fam.k());
    let a = modulo(-((k * m) as i64), n);
    let b = i * m % n;
    let c = (i + j) * m % n;
    let half = (f.q() - 1) / 2 % n;
    let sign = CycNumber::zeta(n, None, (m * j % n * half % n) as i64);
    greene_def_exps(f, n, a, b, c, lambda).mul_cyc(&sign)
}

/// Point count through the finite-field hypergeometric formula; needs `q ≡ 1 (mod N)`.
pub fn count_points_hgf(inst: &CurveInstance, f: &FieldSpec) -> Result<CountResult> {
    require_congruence(inst, f)?;
    let resolved = resolved_counts(inst, f)?;
    let lambda = reduce_lambda(inst, f)?;
    let n = inst.family().n();
    let q = f.q();
    let mut sum = CycRational::new(CycNumber::zero(n, None), 1);
    for m in 1..n {
        sum = sum.add(&weighted_hgf(inst, f, lambda, m));
    }
    let scaled = sum.scale(q);
    let value = scaled.as_cyc().and_then(CycNumber::as_integer).ok_or(Error::NonIntegerTotal)?;
    let total: BigInt = BigInt::from(1 + q) + value + BigInt::from(resolved.sum()) - 4i64;
    let total = total.to_u64().ok_or(Error::NonIntegerTotal)?;
    Ok(CountResult { q, affine_sum: None, resolved, total })
}

/// Residues `e(x)` with `ξ(f(x)) = ζ_N^{e(x)}`, tallied over the `x` where `f(x) != 0`.
fn exponent_histogram(inst: &CurveInstance, f: &FieldSpec, lambda: FieldElement) -> Vec<i64> {
    let fam = inst.family();
    let (n, i, j, k) = (fam.n(), fam.i(), fam.j(), fam.k());
    let one = f.one();
    let mut hist = vec![0i64; n as usize];
    for x in f.elements().skip(1) {
        let u = f.sub(one, x);
        let w = f.sub(one, f.mul(lambda, x));
        let (Ok(lu), Ok(lw)) = (f.dlog(u), f.dlog(w)) else { continue };
        let lx = f.dlog(x).expect("nonzero");
        let e = (i * (lx % n) + j * (lu % n) + k * (lw % n)) % n;
        hist[e as usize] += 1;
    }
    hist
}

fn charsum_from_hist(hist: &[i64], n: u64, m: u64) -> CycNumber {
    let mut acc = CycAccumulator::new(n, None);
    for (e, &c) in hist.iter().enumerate() {
        acc.add_term(e as u64 * m % n, 0, c);
    }
    acc.finish()
}

fn check_new_index(inst: &CurveInstance, f: &FieldSpec, m: i64) -> Result<u64> {
    let n = inst.family().n();
    if gcd(m.unsigned_abs(), n) != 1 {
        return Err(Error::NotCoprime { n: m, modulus: n });
    }
    require_congruence(inst, f)?;
    Ok(modulo(m, n))
}

/// `Σ_x ξ^m(x^i (1-x)^j (1-λx)^k)` exactly, for `m` coprime to `N`.
pub fn charsum_new(inst: &CurveInstance, f: &FieldSpec, m: i64) -> Result<CycNumber> {
    let m = check_new_index(inst, f, m)?;
    let lambda = reduce_lambda(inst, f)?;
    let hist = exponent_histogram(inst, f, lambda);
    Ok(charsum_from_hist(&hist, inst.family().n(), m))
}

/// `q ε(λ) ξ^{mj}(-1) ₂F₁(ξ^{-km}, ξ^{im}; ξ^{m(i+j)}; λ)`, the hypergeometric side of
/// [`charsum_new`].
pub fn charsum_new_hypergeometric(inst: &CurveInstance, f: &FieldSpec, m: i64) -> Result<CycNumber> {
    let m = check_new_index(inst, f, m)?;
    let lambda = reduce_lambda(inst, f)?;
    let v = weighted_hgf(inst, f, lambda, m).scale(f.q());
    v.as_cyc().cloned().ok_or(Error::NonIntegerTotal)
}

/// Trace of Frobenius on the primitive part: `-Σ_{gcd(m,N)=1} charsum_new(m)`.
pub fn frobenius_trace_new(inst: &CurveInstance, f: &FieldSpec) -> Result<i64> {
    check_new_index(inst, f, 1)?;
    let lambda = reduce_lambda(inst, f)?;
    let n = inst.family().n();
    let hist = exponent_histogram(inst, f, lambda);
    let mut total = CycNumber::zero(n, None);
    for m in (1..n).filter(|&m| gcd(m, n) == 1) {
        total = &total + &charsum_from_hist(&hist, n, m);
    }
    let trace = -total.as_integer().and_then(|t| t.to_i64()).ok_or(Error::NonIntegerTotal)?;
    let bound = 2.0 * euler_phi(n) as f64 * (f.q() as f64).sqrt();
    if trace.unsigned_abs() as f64 > bound {
        return Err(Error::WeilBoundViolation { trace, bound });
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::super::CurveFamily;
    use super::*;
    use num_rational::Rational64;

    fn inst(n: u64, i: u64, j: u64, k: u64, u: i64, v: i64) -> CurveInstance {
        CurveInstance::new(CurveFamily::new(n, i, j, k).unwrap(), Rational64::new(u, v)).unwrap()
    }

    fn field(p: u64) -> FieldSpec {
        FieldSpec::build(p, 1).unwrap()
    }

    #[test]
    fn resolved_examples() {
        let f = field(13);
        let r = resolved_counts(&inst(6, 4, 3, 1, 2, 1), &f).unwrap();
        assert_eq!(r.n0, 2);
        let r = resolved_counts(&inst(3, 1, 2, 1, 2, 1), &f).unwrap();
        assert_eq!(r.n0, 1);
        for p in [7u64, 11, 13, 17, 19] {
            let r = resolved_counts(&inst(5, 1, 4, 1, 2, 1), &field(p)).unwrap();
            assert_eq!(r, ResolvedCounts { n0: 1, n1: 1, n_inv_lambda: 1, n_inf: 1 });
        }
        assert!(matches!(resolved_counts(&inst(5, 1, 4, 1, 7, 1), &field(7)), Err(Error::BadReduction { .. })));
    }

    #[test]
    fn brute_traces_for_degree_five() {
        let x = inst(5, 1, 4, 1, 2, 1);
        assert_eq!(count_points_brute(&x, &field(11)).unwrap().trace(), 8);
        assert_eq!(count_points_brute(&x, &field(13)).unwrap().trace(), 0);
    }

    #[test]
    fn brute_matches_hgf_exhaustively() {
        for (n, i, j, k, p) in [(6, 4, 3, 1, 7), (3, 1, 2, 1, 13), (4, 1, 2, 1, 13), (5, 1, 4, 1, 11)] {
            let f = field(p);
            for u in 2..p as i64 {
                let x = inst(n, i, j, k, u, 1);
                let b = count_points_brute(&x, &f).unwrap();
                let h = count_points_hgf(&x, &f).unwrap();
                assert_eq!(b.total, h.total, "[{n};{i},{j},{k}] p={p} λ={u}");
            }
        }
    }

    #[test]
    fn hgf_preconditions() {
        let x = inst(6, 4, 3, 1, 2, 1);
        assert!(matches!(count_points_hgf(&x, &field(11)), Err(Error::WrongCongruence { .. })));
        let one_mod_p = inst(6, 4, 3, 1, 8, 1);
        assert!(matches!(count_points_hgf(&one_mod_p, &field(7)), Err(Error::BadReduction { .. })));
    }

    #[test]
    fn charsum_matches_hypergeometric_side() {
        let f = field(7);
        for u in 2..7 {
            let x = inst(6, 4, 3, 1, u, 1);
            for m in [1, 5] {
                assert_eq!(charsum_new(&x, &f, m).unwrap(), charsum_new_hypergeometric(&x, &f, m).unwrap());
            }
            assert_eq!(charsum_new(&x, &f, 1).unwrap().conj(), charsum_new(&x, &f, 5).unwrap());
        }
        let y = inst(10, 2, 7, 7, 3, 1);
        let f11 = field(11);
        assert_eq!(charsum_new(&y, &f11, 1).unwrap(), charsum_new_hypergeometric(&y, &f11, 1).unwrap());
        assert!(matches!(charsum_new(&y, &f11, 2), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn trace_within_weil_bound() {
        let t = frobenius_trace_new(&inst(6, 4, 3, 1, 2, 1), &field(13)).unwrap();
        assert!(t.unsigned_abs() as f64 <= 4.0 * 13f64.sqrt());
    }

    #[test]
    fn extension_field_counts_agree() {
        let f = FieldSpec::build(7, 2).unwrap();
        for (u, v) in [(2, 1), (3, 5), (-1, 2)] {
            let x = inst(6, 4, 3, 1, u, v);
            assert_eq!(count_points_brute(&x, &f).unwrap().total, count_points_hgf(&x, &f).unwrap().total);
        }
    }
}
