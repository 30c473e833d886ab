//! Deciding whether a family carries quaternionic multiplication.
//!
//! The exact finite-field test is authoritative; recognizing the Beta quotient as algebraic only
//! corroborates it.

use serde::Serialize;

use super::hp::{Ctx, HPComplex, Precision};
use super::recognize::{recognize_algebraic, AlgebraicGuess, RecognitionBounds};
use super::tau::beta_quotient_unchecked;
use crate::arith::primes_one_mod;
use crate::charsums::{character_quotient_test, jacobi_quotient_verdict, QuotientVerdict};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QmVerdict {
    Qm,
    NoQm,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeEvidence {
    pub p: u64,
    #[serde(flatten)]
    pub verdict: QuotientVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct QmReport {
    pub n: u64,
    pub i: u64,
    pub j: u64,
    pub k: u64,
    /// Character order used over `F_p`.
    pub modulus: u64,
    pub primes: Vec<PrimeEvidence>,
    /// `B((N-i)/N, (N-j)/N) / B(k/N, (2N-i-j-k)/N)`.
    pub beta_quotient: HPComplex,
    pub recognition: AlgebraicGuess,
    pub verdict: QmVerdict,
}

/// Exponents and modulus for the finite-field test; `N = 3` is embedded in order 6.
fn embedding(n: u64, i: u64, j: u64, k: u64) -> (u64, i64, i64, i64) {
    let f = if n == 3 { 2 } else { 1 };
    (n * f, (i * f) as i64, (j * f) as i64, (k * f) as i64)
}

/// `J(η^{-k}, η^{i+j+k}) / J(η^i, η^j)` over `F_p`, falling back to the raw quotient when one of the
/// exponents degenerates.
fn finite_field_verdict(m: u64, i: i64, j: i64, k: i64, p: u64) -> Result<QuotientVerdict> {
    match character_quotient_test(m, i, -k, i + j, p) {
        Err(Error::Precondition(_)) => jacobi_quotient_verdict(p, m, (-k, i + j + k), (i, j)),
        other => other,
    }
}

pub fn qm_check(n: u64, i: u64, j: u64, k: u64, primes: Option<&[u64]>, prec: Precision) -> Result<QmReport> {
    if !matches!(n, 3 | 4 | 6) {
        return Err(Error::pre(format!("N = {n} must be 3, 4 or 6")));
    }
    for (name, v) in [("i", i), ("j", j), ("k", k)] {
        if v == 0 || v >= n {
            return Err(Error::pre(format!("{name} = {v} must lie in [1, {n})")));
        }
    }
    if (i + j + k) % n == 0 {
        return Err(Error::pre(format!("N = {n} divides i + j + k")));
    }
    let (m, ie, je, ke) = embedding(n, i, j, k);
    let primes = match primes {
        Some(ps) if !ps.is_empty() => ps.to_vec(),
        Some(_) => return Err(Error::pre("empty prime list")),
        None => primes_one_mod(m, 3),
    };
    let evidence = primes
        .iter()
        .map(|&p| Ok(PrimeEvidence { p, verdict: finite_field_verdict(m, ie, je, ke, p)? }))
        .collect::<Result<Vec<_>>>()?;

    let eval = |p: Precision| {
        let mut ctx = Ctx::new(p);
        beta_quotient_unchecked(&mut ctx, n, i, j, k)
    };
    let beta_quotient = eval(prec)?;
    let recognition = recognize_algebraic(eval, prec, RecognitionBounds::default())?;

    let verdict = if evidence.iter().any(|e| !e.verdict.is_character_like()) {
        QmVerdict::NoQm
    } else if recognition.is_recognized() {
        QmVerdict::Qm
    } else {
        QmVerdict::Inconclusive
    };
    Ok(QmReport { n, i, j, k, modulus: m, primes: evidence, beta_quotient, recognition, verdict })
}

#[cfg(test)]
mod tests {
    use super::super::recognize::AlgebraicForm;
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn sextic_family_has_qm() {
        let rep = qm_check(6, 4, 3, 1, None, Precision::DEFAULT).unwrap();
        assert_eq!(rep.verdict, QmVerdict::Qm);
        assert_eq!(rep.primes.iter().map(|e| e.p).collect::<Vec<_>>(), [7, 13, 19]);
        // B(1/3,1/2)/B(1/6,1/2): its cube is 1/4
        let want = BigRational::new(1.into(), 4.into());
        assert_eq!(rep.recognition.form, AlgebraicForm::PowerRational { degree: 3, value: want });
    }

    #[test]
    fn all_ones_family_has_no_qm() {
        let rep = qm_check(6, 1, 1, 1, Some(&[7, 13]), Precision::DEFAULT).unwrap();
        assert_eq!(rep.verdict, QmVerdict::NoQm);
        assert!(rep.primes.iter().all(|e| !e.verdict.is_character_like()));
    }

    #[test]
    fn cubic_family_uses_order_six() {
        let rep = qm_check(3, 1, 2, 1, None, Precision::DEFAULT).unwrap();
        assert_eq!(rep.modulus, 6);
        assert_ne!(rep.verdict, QmVerdict::NoQm);
    }

    #[test]
    fn preconditions() {
        assert!(qm_check(5, 1, 1, 1, None, Precision::DEFAULT).is_err());
        assert!(qm_check(6, 2, 2, 2, None, Precision::DEFAULT).is_err());
        assert!(qm_check(6, 4, 3, 1, Some(&[11]), Precision::DEFAULT).is_err());
    }
}
