//! Γ, B and the Gauss series at high precision.

use std::sync::{Mutex, OnceLock};

use astro_float::{BigFloat, RoundingMode};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::hp::{log2_abs, Ctx, HPComplex, Precision};
use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Largest `|λ|` accepted by [`hyp2f1`].
pub const CONVERGENCE_RADIUS: f64 = 0.95;

fn is_nonpositive_integer(x: Rational64) -> bool {
    x.is_integer() && *x.numer() <= 0
}

/// `B_{2k} / (2k (2k-1))` for `k = 1, 2, …`, grown on demand.
fn stirling_coefficients(count: usize) -> Vec<BigRational> {
    static CACHE: OnceLock<Mutex<(Vec<BigRational>, Vec<BigRational>)>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new((vec![BigRational::one()], Vec::new())));
    let mut guard = cache.lock().expect("bernoulli cache poisoned");
    let (bern, coeffs) = &mut *guard;
    while coeffs.len() < count {
        let want = 2 * (coeffs.len() + 1);
        while bern.len() <= want {
            // B_m = -1/(m+1) Σ_{k<m} C(m+1, k) B_k
            let m = bern.len();
            let mut binom = BigInt::one();
            let mut acc = BigRational::zero();
            for (k, b) in bern.iter().enumerate() {
                acc += b * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            bern.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        let k = want as i64;
        coeffs.push(&bern[want] / BigRational::from_integer(BigInt::from(k * (k - 1))));
    }
    coeffs[..count].to_vec()
}

fn big_rat(ctx: &Ctx, r: &BigRational) -> BigFloat {
    let parse = |n: &BigInt| -> BigFloat {
        match n.to_i64() {
            Some(v) => ctx.int(v),
            None => {
                let s = n.to_string();
                BigFloat::parse(&s, astro_float::Radix::Dec, ctx.p, RM, &mut astro_float::Consts::new().expect("cache"))
            }
        }
    };
    parse(r.numer()).div(&parse(r.denom()), ctx.p, RM)
}

/// `ln Γ(z)` for `z` large enough that the asymptotic series converges to working precision.
fn ln_gamma_large(ctx: &mut Ctx, z: &BigFloat) -> BigFloat {
    let p = ctx.p;
    let half = ctx.rat(Rational64::new(1, 2));
    let two_pi = ctx.pi().mul(&ctx.int(2), p, RM);
    let mut acc = z.sub(&half, p, RM).mul(&ctx.ln(z), p, RM).sub(z, p, RM);
    acc = acc.add(&ctx.ln(&two_pi).mul(&half, p, RM), p, RM);
    let z2 = z.mul(z, p, RM);
    let mut zpow = z.clone();
    let target = -(p as i64) - 8;
    let mut count = 16;
    let mut k = 0;
    loop {
        let coeffs = stirling_coefficients(count);
        while k < coeffs.len() {
            let term = big_rat(ctx, &coeffs[k]).div(&zpow, p, RM);
            acc = acc.add(&term, p, RM);
            if log2_abs(&term).is_none_or(|e| e < target) {
                return acc;
            }
            zpow = zpow.mul(&z2, p, RM);
            k += 1;
        }
        count *= 2;
    }
}

/// `Γ(x)` for positive rational `x`.
fn gamma_positive(ctx: &mut Ctx, x: Rational64) -> BigFloat {
    let p = ctx.p;
    // shift so that the Stirling terms fall off fast enough
    let floor = (ctx.prec.digits() as i64).max(20);
    let shift = (floor - x.to_integer()).max(0);
    let xf = ctx.rat(x);
    let z = xf.add(&ctx.int(shift), p, RM);
    let lg = ln_gamma_large(ctx, &z);
    let mut val = ctx.exp(&lg);
    let mut prod = ctx.int(1);
    for m in 0..shift {
        prod = prod.mul(&xf.add(&ctx.int(m), p, RM), p, RM);
    }
    val = val.div(&prod, p, RM);
    val
}

pub(crate) fn gamma_real(ctx: &mut Ctx, x: Rational64) -> Result<BigFloat> {
    if is_nonpositive_integer(x) {
        return Err(Error::PoleAtNonPositiveInteger(x.to_string()));
    }
    if x.is_integer() {
        let mut acc = ctx.int(1);
        for m in 2..*x.numer() {
            acc = acc.mul(&ctx.int(m), ctx.p, RM);
        }
        return Ok(acc);
    }
    if *x.numer() > 0 {
        return Ok(gamma_positive(ctx, x));
    }
    // Γ(x) Γ(1-x) = π / sin(πx)
    let one = Rational64::from_integer(1);
    let g = gamma_positive(ctx, one - x);
    let s = ctx.sin_pi(x);
    let pi = ctx.pi();
    Ok(pi.div(&s.mul(&g, ctx.p, RM), ctx.p, RM))
}

pub(crate) fn beta_real(ctx: &mut Ctx, a: Rational64, b: Rational64) -> Result<BigFloat> {
    if let Some(x) = [a, b, a + b].into_iter().find(|&x| is_nonpositive_integer(x)) {
        return Err(Error::PoleAtNonPositiveInteger(x.to_string()));
    }
    let ga = gamma_real(ctx, a)?;
    let gb = gamma_real(ctx, b)?;
    let gab = gamma_real(ctx, a + b)?;
    Ok(ga.mul(&gb, ctx.p, RM).div(&gab, ctx.p, RM))
}

/// `Γ(x)`.
pub fn gamma_fn(x: Rational64, prec: Precision) -> Result<HPComplex> {
    let mut ctx = Ctx::new(prec);
    let g = gamma_real(&mut ctx, x)?;
    Ok(ctx.real(g))
}

/// `B(a, b) = Γ(a) Γ(b) / Γ(a + b)`.
pub fn beta_fn(a: Rational64, b: Rational64, prec: Precision) -> Result<HPComplex> {
    let mut ctx = Ctx::new(prec);
    let v = beta_real(&mut ctx, a, b)?;
    Ok(ctx.real(v))
}

pub(crate) fn hyp2f1_ctx(ctx: &Ctx, a: Rational64, b: Rational64, c: Rational64, z: &HPComplex) -> Result<HPComplex> {
    if is_nonpositive_integer(c) {
        return Err(Error::PoleInC(c.to_string()));
    }
    let zabs = z.to_complex64().norm();
    if !zabs.is_finite() || zabs >= CONVERGENCE_RADIUS {
        return Err(Error::OutsideConvergenceDomain(format!("{zabs}")));
    }
    let p = ctx.p;
    let mut term = ctx.one();
    let mut sum = ctx.one();
    if z.is_zero() {
        return Ok(sum);
    }
    let (aa, ba, ca) = (rat_abs(a), rat_abs(b), rat_abs(c));
    // tail bound kicks in once k is past every parameter
    let k_min = (2.0 * ca + 2.0).ceil() as i64;
    let target = -(p as i64) + 4;
    let mut k: i64 = 0;
    loop {
        let kr = Rational64::from_integer(k);
        let num = (a + kr) * (b + kr);
        if num.is_zero() {
            return Ok(sum);
        }
        let factor = num / ((c + kr) * (kr + 1));
        term = term.mul(z).scale(&ctx.rat(factor));
        sum = sum.add(&term);
        k += 1;
        if k >= k_min {
            let kf = k as f64;
            let r = zabs * (1.0 + aa / kf) * (1.0 + ba / kf) / (1.0 - ca / kf) * 1.0001;
            if r < 1.0 {
                let (Some(et), Some(es)) = (log2_abs(&term.abs()), log2_abs(&sum.abs())) else {
                    if term.is_zero() {
                        return Ok(sum);
                    }
                    continue;
                };
                let tail = et as f64 + (r / (1.0 - r)).log2();
                if tail < (es + target) as f64 {
                    return Ok(sum);
                }
            }
        }
        if k > 1_000_000 {
            return Err(Error::OutsideConvergenceDomain(format!("{zabs}")));
        }
    }
}

fn rat_abs(r: Rational64) -> f64 {
    r.abs().to_f64().unwrap_or(f64::INFINITY)
}

/// The Gauss series `₂F₁(a, b; c; z)` for `|z| < 0.95`.
pub fn hyp2f1(a: Rational64, b: Rational64, c: Rational64, z: &HPComplex, prec: Precision) -> Result<HPComplex> {
    let ctx = Ctx::new(prec);
    hyp2f1_ctx(&ctx, a, b, c, &z.with_bits(ctx.p))
}
