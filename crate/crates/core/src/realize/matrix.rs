//! 2×2 matrices over a [`FiniteField`] and commuting tuples of them.

use num_bigint::BigInt;
use serde::Serialize;

use super::field::{Elem, FiniteField};
use crate::lattice::{IntVector, IntegerLattice};

/// Row-major entries `[m00, m01, m10, m11]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Matrix2(pub [Elem; 4]);

impl Matrix2 {
    pub fn identity() -> Self {
        Matrix2([1, 0, 0, 1])
    }

    pub fn scalar(c: Elem) -> Self {
        Matrix2([c, 0, 0, c])
    }

    /// `[[0, 1], [-b, -a]]`, whose characteristic polynomial is `x^2 + a x + b`.
    pub fn companion(f: &FiniteField, a: Elem, b: Elem) -> Self {
        Matrix2([0, 1, f.neg(b), f.neg(a)])
    }

    pub fn entries(&self) -> [Elem; 4] {
        self.0
    }

    pub fn mul(&self, f: &FiniteField, o: &Matrix2) -> Matrix2 {
        let [a, b, c, d] = self.0;
        let [e, g, h, k] = o.0;
        Matrix2([
            f.add(f.mul(a, e), f.mul(b, h)),
            f.add(f.mul(a, g), f.mul(b, k)),
            f.add(f.mul(c, e), f.mul(d, h)),
            f.add(f.mul(c, g), f.mul(d, k)),
        ])
    }

    pub fn add(&self, f: &FiniteField, o: &Matrix2) -> Matrix2 {
        Matrix2(std::array::from_fn(|i| f.add(self.0[i], o.0[i])))
    }

    pub fn scale(&self, f: &FiniteField, c: Elem) -> Matrix2 {
        Matrix2(self.0.map(|x| f.mul(c, x)))
    }

    pub fn det(&self, f: &FiniteField) -> Elem {
        let [a, b, c, d] = self.0;
        f.sub(f.mul(a, d), f.mul(b, c))
    }

    pub fn trace(&self, f: &FiniteField) -> Elem {
        f.add(self.0[0], self.0[3])
    }

    pub fn is_invertible(&self, f: &FiniteField) -> bool {
        self.det(f) != 0
    }

    pub fn inverse(&self, f: &FiniteField) -> Option<Matrix2> {
        let inv = f.inv(self.det(f))?;
        let [a, b, c, d] = self.0;
        Some(Matrix2([d, f.neg(b), f.neg(c), a]).scale(f, inv))
    }

    pub fn is_scalar(&self) -> bool {
        let [a, b, c, d] = self.0;
        b == 0 && c == 0 && a == d
    }

    pub fn commutes(&self, f: &FiniteField, o: &Matrix2) -> bool {
        self.mul(f, o) == o.mul(f, self)
    }

    pub fn pow(&self, f: &FiniteField, e: u64) -> Matrix2 {
        let (mut base, mut e, mut acc) = (*self, e, Matrix2::identity());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    /// Order of the image in PGL(2, q): least `e ≥ 1` with `X^e` scalar.
    pub fn projective_order(&self, f: &FiniteField) -> Option<usize> {
        if !self.is_invertible(f) {
            return None;
        }
        let mut x = *self;
        let mut e = 1;
        while !x.is_scalar() {
            x = x.mul(f, self);
            e += 1;
        }
        Some(e)
    }

    /// All 2×2 matrices with nonzero determinant.
    pub fn general_linear(f: &FiniteField) -> Vec<Matrix2> {
        let q = f.order();
        let mut out = Vec::with_capacity((q * q - 1) * (q * q - q));
        for code in 0..q.pow(4) {
            let m = Matrix2(std::array::from_fn(|i| (code / q.pow(i as u32) % q) as Elem));
            if m.is_invertible(f) {
                out.push(m);
            }
        }
        out.sort();
        out
    }

    /// Invertible elements of `K[A] = {αI + βA}`.
    pub fn polynomial_units(f: &FiniteField, a: &Matrix2) -> Vec<Matrix2> {
        let mut out = Vec::new();
        for alpha in f.elements() {
            for beta in f.elements() {
                let m = Matrix2::scalar(alpha).add(f, &a.scale(f, beta));
                if m.is_invertible(f) {
                    out.push(m);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn show(&self, f: &FiniteField) -> String {
        let e = self.0.map(|x| f.show(x));
        format!("[[{}, {}], [{}, {}]]", e[0], e[1], e[2], e[3])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("matrix {0} is not invertible")]
    NotInvertible(usize),
    #[error("matrices {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("a representation needs at least one matrix")]
    Empty,
}

/// Commuting invertible matrices `X_1, …, X_n`: the action of `x_1, …, x_n`
/// on a 2-dimensional quotient of the Laurent polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRep {
    field: FiniteField,
    matrices: Vec<Matrix2>,
}

impl MatrixRep {
    pub fn new(field: FiniteField, matrices: Vec<Matrix2>) -> Result<Self, RepError> {
        if matrices.is_empty() {
            return Err(RepError::Empty);
        }
        for (i, m) in matrices.iter().enumerate() {
            if !m.is_invertible(&field) {
                return Err(RepError::NotInvertible(i));
            }
            for (j, o) in matrices.iter().enumerate().skip(i + 1) {
                if !m.commutes(&field, o) {
                    return Err(RepError::NotCommuting(i, j));
                }
            }
        }
        Ok(MatrixRep { field, matrices })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn matrices(&self) -> &[Matrix2] {
        &self.matrices
    }

    pub fn n(&self) -> usize {
        self.matrices.len()
    }

    /// `X_1^{u_1} ⋯ X_n^{u_n}`, with negative exponents through inverses.
    pub fn monomial(&self, u: &[i64]) -> Matrix2 {
        let f = &self.field;
        let mut acc = Matrix2::identity();
        for (m, &e) in self.matrices.iter().zip(u) {
            let base = if e < 0 { m.inverse(f).expect("validated invertible") } else { *m };
            acc = acc.mul(f, &base.pow(f, e.unsigned_abs()));
        }
        acc
    }

    /// `{u : X^u is scalar}`. Each axis contributes its projective order
    /// `e_i`, so the lattice contains `diag(e)` and is determined by the box
    /// `∏ [0, e_i)`.
    pub fn scalar_power_lattice(&self) -> IntegerLattice {
        let f = &self.field;
        let n = self.n();
        let orders: Vec<usize> = self.matrices.iter().map(|m| m.projective_order(f).expect("validated invertible")).collect();
        let powers: Vec<Vec<Matrix2>> = self
            .matrices
            .iter()
            .zip(&orders)
            .map(|(m, &e)| {
                let mut v = Vec::with_capacity(e);
                let mut x = Matrix2::identity();
                for _ in 0..e {
                    v.push(x);
                    x = x.mul(f, m);
                }
                v
            })
            .collect();
        let mut rows: Vec<IntVector> =
            (0..n).map(|i| IntVector::unit(n, i).scale(&BigInt::from(orders[i]))).collect();
        for_each_in_box(&orders, |u| {
            let mut acc = Matrix2::identity();
            for (i, &k) in u.iter().enumerate() {
                acc = acc.mul(f, &powers[i][k]);
            }
            if acc.is_scalar() && u.iter().any(|&k| k != 0) {
                rows.push(IntVector::from_i64s(&u.iter().map(|&k| k as i64).collect::<Vec<_>>()));
            }
        });
        IntegerLattice::hnf(n, &rows).expect("rows share the dimension")
    }

    /// Conjugate every matrix by `p`.
    pub fn conjugate(&self, p: &Matrix2) -> Option<MatrixRep> {
        let f = &self.field;
        let pi = p.inverse(f)?;
        let matrices = self.matrices.iter().map(|m| p.mul(f, m).mul(f, &pi)).collect();
        Some(MatrixRep { field: f.clone(), matrices })
    }
}

/// Calls `visit` on every point of `∏ [0, bounds_i)` in lexicographic order.
pub(crate) fn for_each_in_box(bounds: &[usize], mut visit: impl FnMut(&[usize])) {
    if bounds.iter().any(|&b| b == 0) {
        return;
    }
    let mut u = vec![0usize; bounds.len()];
    loop {
        visit(&u);
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            u[i] += 1;
            if u[i] < bounds[i] {
                break;
            }
            u[i] = 0;
        }
    }
}
