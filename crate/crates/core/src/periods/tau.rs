//! Periods of `dx/y^n` along `[0, 1]` and `[1/λ, ∞]`.

use num_rational::Rational64;
use num_traits::{One, Signed};
use serde::Serialize;

use super::hp::{Ctx, HPComplex, Precision};
use super::special::{beta_real, hyp2f1_ctx};
use crate::arith::gcd;
use crate::curves::CurveFamily;
use crate::error::{Error, Result};

/// Rejects λ outside the open unit interval.
pub fn check_lambda(lambda: Rational64) -> Result<()> {
    if !lambda.is_positive() || lambda >= Rational64::one() {
        return Err(Error::pre(format!("λ = {lambda} must lie in (0, 1)")));
    }
    Ok(())
}

/// `N ∤ i+j`, `N ∤ i+j+k` and `N < i+j+k < 2N`.
pub fn check_period_family(fam: &CurveFamily) -> Result<()> {
    let (n, s) = (fam.n(), fam.i() + fam.j() + fam.k());
    if fam.divides_ij() {
        return Err(Error::pre(format!("{fam}: N divides i + j")));
    }
    if fam.divides_ijk() {
        return Err(Error::pre(format!("{fam}: N divides i + j + k")));
    }
    if !(n < s && s < 2 * n) {
        return Err(Error::pre(format!("{fam}: need N < i + j + k < 2N")));
    }
    Ok(())
}

/// `∫₀¹ ω_n` and `∫_{1/λ}^∞ ω_n` for one `n` coprime to `N`.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodPair {
    pub n: i64,
    pub tau: HPComplex,
    pub tau_prime: HPComplex,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodSet {
    pub family: CurveFamily,
    pub lambda: Rational64,
    pub precision: Precision,
    pub pairs: Vec<PeriodPair>,
}

impl PeriodSet {
    pub fn pair(&self, n: i64) -> Option<&PeriodPair> {
        let m = n.rem_euclid(self.family.n() as i64);
        self.pairs.iter().find(|p| p.n == m)
    }

    pub fn tau(&self, n: i64) -> &HPComplex {
        &self.pair(n).expect("n coprime to N").tau
    }

    pub fn tau_prime(&self, n: i64) -> &HPComplex {
        &self.pair(n).expect("n coprime to N").tau_prime
    }
}

fn frac(x: u64, n: i64, big_n: u64) -> Rational64 {
    Rational64::new((n * x as i64).rem_euclid(big_n as i64), big_n as i64)
}

/// Both periods of `ω_n`, with `(a, b, c) = ({nk/N}, 1 - {ni/N}, 2 - {ni/N} - {nj/N})`.
pub(crate) fn tau_pair(ctx: &mut Ctx, fam: &CurveFamily, n: i64, lambda: Rational64) -> Result<PeriodPair> {
    let big_n = fam.n();
    let (fi, fj, fk) = (frac(fam.i(), n, big_n), frac(fam.j(), n, big_n), frac(fam.k(), n, big_n));
    let one = Rational64::one();
    let (a, b, c) = (fk, one - fi, one + one - fi - fj);
    let z = ctx.from_rational(lambda);
    let tau = hyp2f1_ctx(ctx, a, b, c, &z)?.scale(&beta_real(ctx, b, c - b)?);
    // (-1)^{c-a-b-1} λ^{1-c} B(1+a-c, 1-a) ₂F₁(1+b-c, 1+a-c; 2-c; λ)
    let phase = ctx.cis_pi(c - a - b - one);
    let lam = ctx.rat(lambda);
    let lpow = ctx.powr(&lam, one - c);
    let f = hyp2f1_ctx(ctx, one + b - c, one + a - c, one + one - c, &z)?;
    let tau_prime = f.scale(&beta_real(ctx, one + a - c, one - a)?).scale(&lpow).mul(&phase);
    Ok(PeriodPair { n, tau, tau_prime })
}

pub(crate) fn units(n: u64) -> Vec<i64> {
    (1..n).filter(|&m| gcd(m, n) == 1).map(|m| m as i64).collect()
}

/// `τ_n, τ_n'` for every `n` coprime to `N`, principal branches throughout.
pub fn period_tau(fam: &CurveFamily, lambda: Rational64, prec: Precision) -> Result<PeriodSet> {
    check_period_family(fam)?;
    check_lambda(lambda)?;
    let mut ctx = Ctx::new(prec);
    period_tau_ctx(&mut ctx, fam, lambda)
}

pub(crate) fn period_tau_ctx(ctx: &mut Ctx, fam: &CurveFamily, lambda: Rational64) -> Result<PeriodSet> {
    let pairs = units(fam.n()).into_iter().map(|n| tau_pair(ctx, fam, n, lambda)).collect::<Result<_>>()?;
    Ok(PeriodSet { family: *fam, lambda, precision: ctx.prec, pairs })
}

/// Outcome of comparing `τ₁'τ_{N-1}'/(τ₁τ_{N-1})` against its sine product.
#[derive(Clone, Debug, Serialize)]
pub struct GammaRatioCheck {
    pub computed: HPComplex,
    pub expected: HPComplex,
    /// `log10 |computed - expected|`.
    pub residual_log10: f64,
    pub holds: bool,
}

/// `sin(iπ/N) sin(jπ/N) / (sin(kπ/N) sin((2N-i-j-k)π/N))`.
pub(crate) fn sine_ratio(ctx: &mut Ctx, fam: &CurveFamily) -> HPComplex {
    let n = fam.n() as i64;
    let (i, j, k) = (fam.i() as i64, fam.j() as i64, fam.k() as i64);
    let [si, sj, sk, sl] = [i, j, k, 2 * n - i - j - k].map(|m| {
        let s = ctx.sin_pi(Rational64::new(m, n));
        ctx.real(s)
    });
    si.mul(&sj).div(&sk.mul(&sl))
}

pub fn gamma_ratio_check(fam: &CurveFamily, lambda: Rational64, prec: Precision) -> Result<GammaRatioCheck> {
    check_period_family(fam)?;
    check_lambda(lambda)?;
    let mut ctx = Ctx::new(prec);
    let big_n = fam.n() as i64;
    let t1 = tau_pair(&mut ctx, fam, 1, lambda)?;
    let t2 = tau_pair(&mut ctx, fam, big_n - 1, lambda)?;
    let computed = t1.tau_prime.mul(&t2.tau_prime).div(&t1.tau.mul(&t2.tau));
    let expected = sine_ratio(&mut ctx, fam);
    let residual_log10 = computed.log10_distance(&expected);
    let holds = residual_log10 <= prec.tolerance(10) as f64;
    Ok(GammaRatioCheck { computed, expected, residual_log10, holds })
}

/// `B((N-i)/N, (N-j)/N) / B(k/N, (2N-i-j-k)/N)`.
pub fn beta_quotient(n: u64, i: u64, j: u64, k: u64, prec: Precision) -> Result<HPComplex> {
    let s = i + j + k;
    if !(n < s && s < 2 * n) {
        return Err(Error::pre(format!("need N < i + j + k < 2N, got N = {n}, i + j + k = {s}")));
    }
    let mut ctx = Ctx::new(prec);
    beta_quotient_unchecked(&mut ctx, n, i, j, k)
}

/// The same quotient, valid whenever all four arguments are positive.
pub(crate) fn beta_quotient_unchecked(ctx: &mut Ctx, n: u64, i: u64, j: u64, k: u64) -> Result<HPComplex> {
    let r = |x: i64| Rational64::new(x, n as i64);
    let (n, i, j, k) = (n as i64, i as i64, j as i64, k as i64);
    if [n - i, n - j, k, 2 * n - i - j - k].iter().any(|&x| x <= 0) {
        return Err(Error::pre("Beta arguments must be positive"));
    }
    let num = beta_real(ctx, r(n - i), r(n - j))?;
    let den = beta_real(ctx, r(k), r(2 * n - i - j - k))?;
    Ok(ctx.real(num.div(&den, ctx.p, astro_float::RoundingMode::ToEven)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P: Precision = Precision::DEFAULT;

    fn admissible(n: u64) -> Vec<CurveFamily> {
        let mut out = Vec::new();
        for i in 1..n {
            for j in 1..n {
                for k in 1..n {
                    if let Ok(f) = CurveFamily::new(n, i, j, k) {
                        if check_period_family(&f).is_ok() {
                            out.push(f);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn sine_ratio_identity_for_every_admissible_family() {
        let mut seen = 0;
        for n in [3, 4, 6] {
            for f in admissible(n) {
                for lambda in [Rational64::new(1, 10), Rational64::new(3, 10), Rational64::new(7, 10)] {
                    let c = gamma_ratio_check(&f, lambda, P).unwrap();
                    assert!(c.holds, "{f} at {lambda}: residual {}", c.residual_log10);
                }
                seen += 1;
            }
        }
        assert!(seen > 20);
    }

    #[test]
    fn sextic_sine_ratio_is_two() {
        let mut ctx = Ctx::new(P);
        let g = sine_ratio(&mut ctx, &CurveFamily::new(6, 4, 3, 1).unwrap());
        assert!(g.sub(&ctx.from_int(2)).is_below(-45));
    }

    #[test]
    fn first_period_of_sextic_example() {
        let f = CurveFamily::new(6, 4, 3, 1).unwrap();
        let set = period_tau(&f, Rational64::new(3, 10), P).unwrap();
        let mut ctx = Ctx::new(P);
        let z = ctx.from_rational(Rational64::new(3, 10));
        let r = |a, b| Rational64::new(a, b);
        let want = hyp2f1_ctx(&ctx, r(1, 6), r(1, 3), r(5, 6), &z).unwrap().scale(&beta_real(&mut ctx, r(1, 3), r(1, 2)).unwrap());
        assert!(set.tau(1).sub(&want).is_below(-45));
        assert_eq!(set.pairs.len(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        let f = CurveFamily::new(6, 4, 3, 1).unwrap();
        assert!(period_tau(&f, Rational64::new(1, 1), P).is_err());
        assert!(period_tau(&f, Rational64::new(-1, 2), P).is_err());
        let cm = CurveFamily::new(6, 1, 2, 3).unwrap();
        assert!(period_tau(&cm, Rational64::new(1, 2), P).is_err());
        assert!(beta_quotient(6, 1, 1, 1, P).is_err());
    }

    #[test]
    fn beta_quotient_values() {
        let mut ctx = Ctx::new(P);
        // B(2/10, 5/10) / B(1/10, 6/10) = 2^{-4/5}
        let two = ctx.int(2);
        let want = ctx.powr(&two, Rational64::new(-4, 5));
        assert!(beta_quotient(10, 8, 5, 1, P).unwrap().sub(&ctx.real(want)).is_below(-45));
        for (n, i, j, k) in [(10, 8, 5, 1), (6, 4, 3, 1), (12, 9, 5, 1), (10, 2, 7, 7)] {
            let a = beta_quotient(n, i, j, k, P).unwrap();
            let b = beta_quotient(n, j, i, k, P).unwrap();
            assert!(a.sub(&b).is_below(-45));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// `τ₁'` through Euler's transformation: `₂F₁((N-k)/N, i/N; (i+j)/N; λ)` with the matching prefactor.
        #[test]
        fn euler_form_of_second_period(idx in 0usize..1000, num in 1i64..19) {
            let fams: Vec<CurveFamily> = [3, 4, 6].into_iter().flat_map(admissible).collect();
            let f = fams[idx % fams.len()];
            let lambda = Rational64::new(num, 20);
            let set = period_tau(&f, lambda, P).unwrap();
            let big_n = f.n() as i64;
            let (i, j, k) = (f.i() as i64, f.j() as i64, f.k() as i64);
            let r = |x: i64| Rational64::new(x, big_n);
            let mut ctx = Ctx::new(P);
            let z = ctx.from_rational(lambda);
            let lam = ctx.rat(lambda);
            let om = ctx.rat(Rational64::one() - lambda);
            // c - a - b - 1 with (a, b, c) = (k, N-i, 2N-i-j)/N
            let phase = ctx.cis_pi(r(2 * big_n - i - j) - r(k) - r(big_n - i) - Rational64::one());
            let pre = ctx.powr(&lam, r(i + j - big_n));
            let post = ctx.powr(&om, r(big_n - j - k));
            let f21 = hyp2f1_ctx(&ctx, r(big_n - k), r(i), r(i + j), &z).unwrap();
            let b = beta_real(&mut ctx, r(i + j + k - big_n), r(big_n - k)).unwrap();
            let want = f21.scale(&b).scale(&pre).scale(&post).mul(&phase);
            prop_assert!(set.tau_prime(1).sub(&want).is_below(-40), "{} at {}", f, lambda);
        }
    }
}
