//! Small dense matrices over [`HPComplex`].

use super::hp::{Ctx, HPComplex};

#[derive(Clone, Debug)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<HPComplex>,
}

impl CMatrix {
    pub(crate) fn zeros(ctx: &Ctx, rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![ctx.zero(); rows * cols] }
    }

    pub(crate) fn identity(ctx: &Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    pub(crate) fn diag(ctx: &Ctx, d: Vec<HPComplex>) -> Self {
        let mut m = Self::zeros(ctx, d.len(), d.len());
        for (i, v) in d.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub(crate) fn from_rows(rows: Vec<Vec<HPComplex>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        CMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &HPComplex {
        &self.data[r * self.cols + c]
    }

    pub(crate) fn set(&mut self, r: usize, c: usize, v: HPComplex) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[HPComplex] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub(crate) fn mul(&self, o: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = self.get(i, 0).mul(o.get(0, j));
                for k in 1..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j)));
                }
                out.push(acc);
            }
        }
        CMatrix { rows: self.rows, cols: o.cols, data: out }
    }

    pub(crate) fn add(&self, o: &CMatrix) -> CMatrix {
        self.zip(o, HPComplex::add)
    }

    pub(crate) fn sub(&self, o: &CMatrix) -> CMatrix {
        self.zip(o, HPComplex::sub)
    }

    fn zip(&self, o: &CMatrix, f: impl Fn(&HPComplex, &HPComplex) -> HPComplex) -> CMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect() }
    }

    pub(crate) fn scale(&self, s: &HPComplex) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }

    pub(crate) fn pow(&self, ctx: &Ctx, e: u32) -> CMatrix {
        (0..e).fold(Self::identity(ctx, self.rows), |acc, _| acc.mul(self))
    }

    /// Largest `log10 |entry|`; `-∞` for the zero matrix.
    pub fn max_log10(&self) -> f64 {
        self.data.iter().map(HPComplex::log10_abs).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Gauss-Jordan elimination with partial pivoting; `None` when singular.
    pub(crate) fn solve(&self, rhs: &CMatrix) -> Option<CMatrix> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, rhs.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let piv = (col..n).max_by(|&x, &y| {
                a.get(x, col).to_complex64().norm().total_cmp(&a.get(y, col).to_complex64().norm())
            })?;
            if a.get(piv, col).is_zero() {
                return None;
            }
            a.swap_rows(col, piv);
            b.swap_rows(col, piv);
            let inv = a.get(col, col).inv();
            for c in 0..n {
                a.set(col, c, a.get(col, c).mul(&inv));
            }
            for c in 0..b.cols {
                b.set(col, c, b.get(col, c).mul(&inv));
            }
            for r in (0..n).filter(|&r| r != col) {
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    a.set(r, c, a.get(r, c).sub(&f.mul(a.get(col, c))));
                }
                for c in 0..b.cols {
                    b.set(r, c, b.get(r, c).sub(&f.mul(b.get(col, c))));
                }
            }
        }
        Some(b)
    }

    pub(crate) fn inverse(&self, ctx: &Ctx) -> Option<CMatrix> {
        self.solve(&Self::identity(ctx, self.rows))
    }

    /// Rank, treating pivots below `10^{exp10}` (relative to the largest entry) as zero.
    pub fn rank(&self, exp10: i32) -> usize {
        let mut a = self.clone();
        let scale = self.max_log10();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let piv = (row..a.rows)
                .max_by(|&x, &y| a.get(x, col).to_complex64().norm().total_cmp(&a.get(y, col).to_complex64().norm()))
                .expect("nonempty range");
            if a.get(piv, col).log10_abs() - scale <= exp10 as f64 {
                continue;
            }
            a.swap_rows(row, piv);
            let inv = a.get(row, col).inv();
            for r in row + 1..a.rows {
                let f = a.get(r, col).mul(&inv);
                for c in col..a.cols {
                    a.set(r, c, a.get(r, c).sub(&f.mul(a.get(row, c))));
                }
            }
            row += 1;
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        if x == y {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(x * self.cols + c, y * self.cols + c);
        }
    }

    /// Stacks real parts over imaginary parts: a `2r × c` real matrix.
    pub(crate) fn realify(&self, ctx: &Ctx) -> CMatrix {
        let mut out = Self::zeros(ctx, 2 * self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                out.set(r, c, ctx.real(v.re().clone()));
                out.set(self.rows + r, c, ctx.real(v.im().clone()));
            }
        }
        out
    }
}
