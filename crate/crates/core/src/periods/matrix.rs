//! Period matrices of the primitive part and the endomorphisms visible in them.

use num_rational::Rational64;
use serde::Serialize;

use super::cmatrix::CMatrix;
use super::hp::{Ctx, HPComplex, Precision};
use super::special::beta_real;
use super::tau::{check_lambda, check_period_family, period_tau_ctx, sine_ratio, PeriodSet};
use crate::arith::euler_phi;
use crate::curves::CurveFamily;
use crate::error::{Error, Result};

/// Which lattice description a matrix follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixShape {
    /// `[6;4,3,1]` with its explicit β₁, β₂.
    Sextic,
    /// `[12;9,5,1]`.
    Duodecic,
    /// `[10;2,7,7]`.
    Decic,
    /// Any admissible family with `N ∈ {3, 4, 6}`.
    Generic,
}

impl MatrixShape {
    pub fn of(fam: &CurveFamily) -> Result<Self> {
        match (fam.n(), fam.i(), fam.j(), fam.k()) {
            (6, 4, 3, 1) => Ok(MatrixShape::Sextic),
            (12, 9, 5, 1) => Ok(MatrixShape::Duodecic),
            (10, 2, 7, 7) => Ok(MatrixShape::Decic),
            (3 | 4 | 6, ..) => Ok(MatrixShape::Generic),
            _ => Err(Error::UnsupportedFamily(fam.to_string())),
        }
    }
}

/// One row `(σ_n(ζ^c) L)_c | (σ_n(ζ^c) R)_c` of a period matrix.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodRow {
    pub n: i64,
    pub left: HPComplex,
    pub right: HPComplex,
    /// `left / τ_n`: how the displayed entry compares with the integral over `[0, 1]`.
    pub left_factor: HPComplex,
    /// `right / τ_n'`: the same against the integral over `[1/λ, ∞]`.
    pub right_factor: HPComplex,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodMatrix {
    pub family: CurveFamily,
    pub lambda: Rational64,
    pub precision: Precision,
    pub shape: MatrixShape,
    pub rows: Vec<PeriodRow>,
    #[serde(skip)]
    pub(crate) entries: CMatrix,
    /// Named constants that enter the rows.
    pub constants: Vec<(String, HPComplex)>,
    /// Rank of the stacked real and imaginary parts.
    pub real_rank: usize,
}

impl PeriodMatrix {
    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn constant(&self, name: &str) -> Option<&HPComplex> {
        self.constants.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    /// `φ(N)` rows and `2φ(N)` columns.
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }
}

/// Constants shared by the matrix and the endomorphisms.
struct Pieces {
    set: PeriodSet,
    consts: Vec<(String, HPComplex)>,
    rows: Vec<(i64, HPComplex, HPComplex)>,
}

impl Pieces {
    fn c(&self, name: &str) -> &HPComplex {
        &self.consts.iter().find(|(n, _)| n == name).expect("constant defined").1
    }
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn pieces(ctx: &mut Ctx, fam: &CurveFamily, lambda: Rational64) -> Result<(MatrixShape, Pieces)> {
    let shape = MatrixShape::of(fam)?;
    check_period_family(fam)?;
    check_lambda(lambda)?;
    let set = period_tau_ctx(ctx, fam, lambda)?;
    let lam = ctx.rat(lambda);
    let one_minus = ctx.rat(Rational64::from_integer(1) - lambda);
    let mut consts: Vec<(String, HPComplex)> = Vec::new();
    let t = |n: i64| set.tau(n).clone();
    let rows = match shape {
        MatrixShape::Sextic => {
            // β₁ = (-1)^{-2/3} λ^{1/6} (1-λ)^{1/3} 2^{1/3}, β₂ = (-1)^{2/3} λ^{-1/6} (1-λ)^{-1/3} 4^{1/3}
            let b1 = ctx.cis_pi(r(-2, 3)).scale(&ctx.powr(&lam, r(1, 6))).scale(&ctx.powr(&one_minus, r(1, 3)));
            let b1 = b1.scale(&ctx.powr(&ctx.int(2), r(1, 3)));
            let b2 = ctx.cis_pi(r(2, 3)).scale(&ctx.powr(&lam, r(-1, 6))).scale(&ctx.powr(&one_minus, r(-1, 3)));
            let b2 = b2.scale(&ctx.powr(&ctx.int(4), r(1, 3)));
            let rows = vec![(1, t(1), b1.mul(&t(5))), (5, t(5), b2.mul(&t(1)))];
            consts.push(("beta1".into(), b1));
            consts.push(("beta2".into(), b2));
            consts.push(("gamma".into(), sine_ratio(ctx, fam)));
            rows
        }
        MatrixShape::Generic => {
            let big_n = fam.n() as i64;
            let (i, j, k) = (fam.i() as i64, fam.j() as i64, fam.k() as i64);
            // α = (-1)^{(k+j)/N} λ^{(N-i-j)/N} (1-λ)^{(k+j-N)/N}
            let alpha = ctx
                .cis_pi(r(k + j, big_n))
                .scale(&ctx.powr(&lam, r(big_n - i - j, big_n)))
                .scale(&ctx.powr(&one_minus, r(k + j - big_n, big_n)));
            let num = beta_real(ctx, r(i + j + k - big_n, big_n), r(big_n - k, big_n))?;
            let den = beta_real(ctx, r(i, big_n), r(j, big_n))?;
            let beta = ctx.real(num.div(&den, ctx.p, astro_float::RoundingMode::ToEven));
            let gamma = sine_ratio(ctx, fam);
            let (t1, t2) = (t(1), t(big_n - 1));
            let up = beta.div(&alpha);
            let down = gamma.mul(&alpha).div(&beta);
            let rows = vec![(1, t1.clone(), up.mul(&t2)), (big_n - 1, t2, down.mul(&t1))];
            consts.push(("alpha".into(), alpha));
            consts.push(("beta".into(), beta));
            consts.push(("gamma".into(), gamma));
            rows
        }
        MatrixShape::Duodecic => {
            // α = (1-λ)^{1/2} √(9+6√3)/3
            let s3 = ctx.sqrt(&ctx.int(3));
            let inner = ctx.int(9).add(&s3.mul(&ctx.int(6), ctx.p, astro_float::RoundingMode::ToEven), ctx.p, astro_float::RoundingMode::ToEven);
            let alpha = ctx.real(ctx.sqrt(&inner)).scale(&ctx.powr(&one_minus, r(1, 2))).div(&ctx.from_int(3));
            let l6 = ctx.powr(&lam, r(1, 6));
            let l6 = ctx.real(l6);
            let two_s3 = ctx.real(s3).add(&ctx.from_int(2));
            let i = ctx.cis_pi(r(1, 2));
            let (t1, t3) = (t(1), t(11));
            let rows = vec![
                (1, t1.clone(), i.mul(&l6).mul(&alpha).mul(&t3)),
                (11, t3.clone(), i.mul(&two_s3).div(&alpha.mul(&l6)).mul(&t1)),
                (5, alpha.mul(&t3), i.mul(&t1).div(&l6)),
                (7, two_s3.div(&alpha).mul(&t1), i.mul(&l6).mul(&t3)),
            ];
            consts.push(("alpha".into(), alpha));
            consts.push(("lambda^(1/6)".into(), l6));
            consts.push(("2+sqrt3".into(), two_s3));
            rows
        }
        MatrixShape::Decic => {
            let a1 = ctx
                .cis_pi(r(7, 5))
                .scale(&ctx.powr(&lam, r(1, 10)))
                .scale(&ctx.powr(&one_minus, r(2, 5)));
            let a2 = ctx
                .cis_pi(r(1, 5))
                .scale(&ctx.powr(&lam, r(3, 10)))
                .scale(&ctx.powr(&one_minus, r(-4, 5)));
            let bq = |ctx: &mut Ctx, a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)| -> Result<HPComplex> {
                let num = beta_real(ctx, r(a.0, a.1), r(b.0, b.1))?;
                let den = beta_real(ctx, r(c.0, c.1), r(d.0, d.1))?;
                Ok(ctx.real(num.div(&den, ctx.p, astro_float::RoundingMode::ToEven)))
            };
            let b1 = bq(ctx, (7, 10), (2, 5), (3, 10), (4, 5))?;
            let b2 = bq(ctx, (1, 10), (1, 5), (9, 10), (2, 5))?;
            let s5 = ctx.real(ctx.sqrt(&ctx.int(5)));
            let g = s5.sub(&ctx.one()).div(&ctx.from_int(2));
            let h = s5.neg().sub(&ctx.one()).div(&ctx.from_int(2));
            let (ab1, ab2) = (a1.mul(&b1), a2.mul(&b2));
            let (t1, t2, t3, t4) = (t(1), t(9), t(3), t(7));
            let rows = vec![
                (1, t1.clone(), g.div(&ab1).mul(&t2)),
                (9, t2, ab1.mul(&t1)),
                (3, t3.clone(), h.div(&ab2).mul(&t4)),
                (7, t4, ab2.mul(&t3)),
            ];
            consts.push(("alpha1".into(), a1));
            consts.push(("alpha2".into(), a2));
            consts.push(("beta1".into(), b1));
            consts.push(("beta2".into(), b2));
            consts.push(("(sqrt5-1)/2".into(), g));
            consts.push(("(-sqrt5-1)/2".into(), h));
            rows
        }
    };
    Ok((shape, Pieces { set, consts, rows }))
}

fn assemble(ctx: &mut Ctx, fam: &CurveFamily, rows: &[(i64, HPComplex, HPComplex)]) -> CMatrix {
    let big_n = fam.n() as i64;
    let phi = euler_phi(fam.n()) as usize;
    let mut out = Vec::with_capacity(rows.len());
    for (n, left, right) in rows {
        let mut row = Vec::with_capacity(2 * phi);
        let powers: Vec<HPComplex> = (0..phi as i64).map(|c| ctx.root_of_unity(big_n, n * c)).collect();
        row.extend(powers.iter().map(|z| z.mul(left)));
        row.extend(powers.iter().map(|z| z.mul(right)));
        out.push(row);
    }
    CMatrix::from_rows(out)
}

/// The period matrix in the lattice description attached to the family.
///
/// Constants use principal branches. Each row also records how its displayed entries compare
/// with the two integrals they stand for.
pub fn period_matrix(fam: &CurveFamily, lambda: Rational64, prec: Precision) -> Result<PeriodMatrix> {
    let mut ctx = Ctx::new(prec);
    period_matrix_ctx(&mut ctx, fam, lambda)
}

fn period_matrix_ctx(ctx: &mut Ctx, fam: &CurveFamily, lambda: Rational64) -> Result<PeriodMatrix> {
    let (shape, pieces) = pieces(ctx, fam, lambda)?;
    let entries = assemble(ctx, fam, &pieces.rows);
    let real_rank = entries.realify(ctx).rank(ctx.prec.tolerance(10));
    let rows = pieces
        .rows
        .iter()
        .map(|(n, left, right)| PeriodRow {
            n: *n,
            left: left.clone(),
            right: right.clone(),
            left_factor: left.div(pieces.set.tau(*n)),
            right_factor: right.div(pieces.set.tau_prime(*n)),
        })
        .collect();
    Ok(PeriodMatrix { family: *fam, lambda, precision: ctx.prec, shape, rows, entries, constants: pieces.consts, real_rank })
}

/// One algebraic relation among endomorphism matrices.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    /// `log10` of the largest entry of `lhs - rhs`.
    pub residual_log10: f64,
    pub holds: bool,
}

/// Whether a generator maps the period lattice into itself.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeAction {
    pub generator: String,
    /// `log10` of the largest distance from an entry of the rational representation to an integer.
    pub integer_defect_log10: f64,
    pub integral: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EndomorphismReport {
    pub family: CurveFamily,
    pub lambda: Rational64,
    pub relations: Vec<RelationCheck>,
    pub lattice: Vec<LatticeAction>,
    pub holds: bool,
}

fn antidiag(ctx: &Ctx, pairs: &[(usize, usize, HPComplex)], n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(ctx, n, n);
    for (r, c, v) in pairs {
        m.set(*r, *c, v.clone());
    }
    m
}

/// Solves `Π_ℝ X = (MΠ)_ℝ` and measures how far `X` is from an integer matrix.
fn lattice_action(ctx: &Ctx, name: &str, m: &CMatrix, pi: &CMatrix) -> LatticeAction {
    let a = pi.realify(ctx);
    let b = m.mul(pi).realify(ctx);
    let defect = match a.solve(&b) {
        Some(x) => (0..x.rows())
            .flat_map(|r| (0..x.cols()).map(move |c| (r, c)))
            .map(|(r, c)| {
                let v = x.get(r, c);
                let rounded = ctx.real(v.re().round(0, astro_float::RoundingMode::ToEven));
                v.log10_distance(&rounded)
            })
            .fold(f64::NEG_INFINITY, f64::max),
        None => f64::INFINITY,
    };
    let tol = ctx.prec.tolerance(10) as f64;
    LatticeAction { generator: name.into(), integer_defect_log10: defect, integral: defect <= tol }
}

/// Builds the endomorphism matrices attached to the family and checks their defining relations.
pub fn endomorphism_relations_check(fam: &CurveFamily, lambda: Rational64, prec: Precision) -> Result<EndomorphismReport> {
    let mut ctx = Ctx::new(prec);
    let (shape, p) = pieces(&mut ctx, fam, lambda)?;
    let pi = assemble(&mut ctx, fam, &p.rows);
    let big_n = fam.n() as i64;
    let tol = prec.tolerance(10) as f64;
    let mut relations = Vec::new();
    let mut check = |name: &str, lhs: CMatrix, rhs: CMatrix| {
        let residual_log10 = lhs.sub(&rhs).max_log10();
        relations.push(RelationCheck { relation: name.into(), residual_log10, holds: residual_log10 <= tol });
    };
    let mut gens: Vec<(&str, CMatrix)> = Vec::new();
    let id = |ctx: &Ctx, n| CMatrix::identity(ctx, n);
    match shape {
        MatrixShape::Sextic | MatrixShape::Generic => {
            let z = ctx.root_of_unity(big_n, 1);
            let zi = z.inv();
            let e = CMatrix::diag(&ctx, vec![z.clone(), zi.clone()]);
            let (j01, j10, gamma) = match shape {
                MatrixShape::Sextic => (p.c("beta1").clone(), p.c("beta2").clone(), p.c("gamma").clone()),
                _ => {
                    let (a, b, g) = (p.c("alpha"), p.c("beta"), p.c("gamma"));
                    (b.div(a), g.mul(a).div(b), g.clone())
                }
            };
            let j = antidiag(&ctx, &[(0, 1, j01), (1, 0, j10)], 2);
            let trace = z.add(&zi);
            let i = e.scale(&ctx.from_int(2)).sub(&id(&ctx, 2).scale(&trace));
            let diff = z.sub(&zi);
            check("I^2 = (zeta - zeta^-1)^2", i.mul(&i), id(&ctx, 2).scale(&diff.mul(&diff)));
            check("J^2 = gamma", j.mul(&j), id(&ctx, 2).scale(&gamma));
            check("IJ = -JI", i.mul(&j), j.mul(&i).scale(&ctx.from_int(-1)));
            gens.push(("E", e));
            gens.push(("J", j));
        }
        MatrixShape::Duodecic => {
            let z = |ctx: &mut Ctx, a: i64| ctx.root_of_unity(12, a);
            let d = vec![z(&mut ctx, 1), z(&mut ctx, -1), z(&mut ctx, 5), z(&mut ctx, -5)];
            let a = CMatrix::diag(&ctx, d);
            let i = ctx.cis_pi(r(1, 2));
            let (l6, alpha, s) = (p.c("lambda^(1/6)"), p.c("alpha"), p.c("2+sqrt3"));
            let b = antidiag(
                &ctx,
                &[(0, 2, i.div(l6)), (1, 3, i.mul(l6)), (2, 0, i.mul(l6)), (3, 1, i.div(l6))],
                4,
            );
            let c = antidiag(
                &ctx,
                &[
                    (0, 1, i.mul(s).div(&alpha.mul(l6))),
                    (1, 0, i.mul(l6).mul(alpha)),
                    (2, 3, i.mul(l6).div(alpha)),
                    (3, 2, i.mul(alpha).div(&l6.mul(s))),
                ],
                4,
            );
            let one = id(&ctx, 4);
            let ainv = a.inverse(&ctx).expect("A is invertible");
            let binv = b.inverse(&ctx).expect("B is invertible");
            let cinv = c.inverse(&ctx).expect("C is invertible");
            let two = one.scale(&ctx.from_int(2));
            check("A^4 - A^2 = -1", a.pow(&ctx, 4).sub(&a.pow(&ctx, 2)), one.scale(&ctx.from_int(-1)));
            check("B^2 = -1", b.mul(&b), one.scale(&ctx.from_int(-1)));
            check("C^2 + A + A^-1 = -2", c.mul(&c).add(&a).add(&ainv), two.scale(&ctx.from_int(-1)));
            check("BAB^-1 = A^3 - A", b.mul(&a).mul(&binv), a.pow(&ctx, 3).sub(&a));
            check("CAC^-1 = A^-1", c.mul(&a).mul(&cinv), ainv.clone());
            check("CBC^-1 = (2 + A + A^-1)B", c.mul(&b).mul(&cinv), two.add(&a).add(&ainv).mul(&b));
            gens.push(("A", a));
            gens.push(("B", b));
            gens.push(("C", c));
        }
        MatrixShape::Decic => {
            let z = |ctx: &mut Ctx, a: i64| ctx.root_of_unity(10, a);
            let d = vec![z(&mut ctx, 1), z(&mut ctx, -1), z(&mut ctx, 3), z(&mut ctx, -3)];
            let a = CMatrix::diag(&ctx, d);
            let ab1 = p.c("alpha1").mul(p.c("beta1"));
            let ab2 = p.c("alpha2").mul(p.c("beta2"));
            let b = antidiag(
                &ctx,
                &[
                    (0, 1, ab1.clone()),
                    (1, 0, p.c("(sqrt5-1)/2").div(&ab1)),
                    (2, 3, ab2.clone()),
                    (3, 2, p.c("(-sqrt5-1)/2").div(&ab2)),
                ],
                4,
            );
            let one = id(&ctx, 4);
            let ainv = a.inverse(&ctx).expect("A is invertible");
            let binv = b.inverse(&ctx).expect("B is invertible");
            let a2 = a.pow(&ctx, 2);
            check(
                "A^4 - A^3 + A^2 - A = -1",
                a.pow(&ctx, 4).sub(&a.pow(&ctx, 3)).add(&a2).sub(&a),
                one.scale(&ctx.from_int(-1)),
            );
            check("B^2 = A^2 + A^-2", b.mul(&b), a2.add(&ainv.mul(&ainv)));
            check("BAB^-1 = A^-1", b.mul(&a).mul(&binv), ainv);
            gens.push(("A", a));
            gens.push(("B", b));
        }
    }
    let lattice = gens.iter().map(|(name, m)| lattice_action(&ctx, name, m, &pi)).collect();
    let holds = relations.iter().all(|r| r.holds);
    Ok(EndomorphismReport { family: *fam, lambda, relations, lattice, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u64, i: u64, j: u64, k: u64) -> CurveFamily {
        CurveFamily::new(n, i, j, k).unwrap()
    }

    const P: Precision = Precision::DEFAULT;

    #[test]
    fn sextic_matrix_matches_integrals() {
        let m = period_matrix(&fam(6, 4, 3, 1), r(3, 10), P).unwrap();
        assert_eq!((m.dimension(), m.entries().cols()), (2, 4));
        assert_eq!(m.real_rank, 4);
        let ctx = Ctx::new(P);
        for row in &m.rows {
            assert!(row.left_factor.sub(&ctx.one()).is_below(-40), "row {}", row.n);
            assert!(row.right_factor.sub(&ctx.one()).is_below(-40), "row {}", row.n);
        }
        let prod = m.constant("beta1").unwrap().mul(m.constant("beta2").unwrap());
        assert!(prod.sub(&ctx.from_int(2)).is_below(-40));
    }

    #[test]
    fn generic_relations_and_lattice() {
        for (f, l) in [(fam(6, 4, 3, 1), r(3, 10)), (fam(4, 3, 3, 1), r(1, 2)), (fam(6, 5, 3, 1), r(1, 10))] {
            let rep = endomorphism_relations_check(&f, l, P).unwrap();
            assert!(rep.holds, "{f}: {:?}", rep.relations);
            assert!(rep.lattice.iter().all(|a| a.integral), "{f}: {:?}", rep.lattice);
        }
    }

    fn factor_is(v: &HPComplex, want: Rational64) -> bool {
        v.sub(&Ctx::new(P).from_rational(want)).is_below(-40)
    }

    #[test]
    fn duodecic_relations() {
        let f = fam(12, 9, 5, 1);
        let m = period_matrix(&f, r(1, 3), P).unwrap();
        assert_eq!(m.real_rank, 8);
        // The displayed right blocks of rows 1 and 5 are the negated integrals.
        for row in &m.rows {
            let want = if matches!(row.n, 1 | 5) { r(-1, 1) } else { r(1, 1) };
            assert!(factor_is(&row.left_factor, r(1, 1)) && factor_is(&row.right_factor, want), "row {}", row.n);
        }
        let rep = endomorphism_relations_check(&f, r(1, 3), P).unwrap();
        assert_eq!(rep.relations.len(), 6);
        assert!(rep.holds, "{:?}", rep.relations);
        let integral: Vec<bool> = rep.lattice.iter().map(|a| a.integral).collect();
        assert_eq!(integral, [true, false, false]);
    }

    #[test]
    fn decic_relations() {
        let f = fam(10, 2, 7, 7);
        let m = period_matrix(&f, r(1, 3), P).unwrap();
        assert_eq!(m.real_rank, 8);
        let want = [(1, r(1, 1)), (9, r(1, 1)), (3, r(2, 3)), (7, r(3, 2))];
        for (row, (n, w)) in m.rows.iter().zip(want) {
            assert_eq!(row.n, n);
            assert!(factor_is(&row.left_factor, r(1, 1)) && factor_is(&row.right_factor, w), "row {n}");
        }
        let rep = endomorphism_relations_check(&f, r(1, 3), P).unwrap();
        assert!(rep.holds, "{:?}", rep.relations);
        assert!(rep.lattice[0].integral && !rep.lattice[1].integral);
    }

    #[test]
    fn unsupported_and_bad_lambda() {
        assert!(matches!(period_matrix(&fam(5, 1, 4, 1), r(1, 2), P), Err(Error::UnsupportedFamily(_))));
        assert!(matches!(period_matrix(&fam(6, 4, 3, 1), r(3, 2), P), Err(Error::Precondition(_))));
    }
}
