//! Exact integer lattices in `Z^n`.
//!
//! Every sublattice is stored by its row-style Hermite normal form, so two
//! lattices are equal exactly when their stored bases are identical. Quotient
//! groups `Z^n / L` are described through a Smith normal form and expose a
//! canonical coset representative for every vector.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension must be positive")]
    ZeroDimension,
    #[error("axis set is empty")]
    EmptyAxes,
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
}

/// An exponent vector in `Z^n`. Ordering is lexicographic on coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = BigInt::one();
        v
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        IntVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Coordinates as `i64`, if every coordinate fits.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Keeps only the listed coordinates, in the given order.
    pub fn project(&self, axes: &[usize]) -> IntVector {
        IntVector(axes.iter().map(|&a| self.0[a].clone()).collect())
    }

    /// Places `self` on the listed axes of a `dim`-dimensional vector, zero elsewhere.
    pub fn embed(&self, dim: usize, axes: &[usize]) -> IntVector {
        let mut v = Self::zeros(dim);
        for (c, &a) in self.0.iter().zip(axes) {
            v.0[a] = c.clone();
        }
        v
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<(), LatticeError> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(LatticeError::DimensionMismatch { expected, found: self.dim() })
        }
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Space-separated coordinates, the form used by every text record.
impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl<'a> Add<&'a IntVector> for &'a IntVector {
    type Output = IntVector;
    fn add(self, rhs: &'a IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a IntVector> for &'a IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &'a IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

type Matrix = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// `row[target] -= q * row[source]` applied to whole rows.
fn row_axpy(m: &mut Matrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

/// Row-style HNF of `rows` with the unimodular transform `u` such that
/// `u * rows == h`. Rows of `h` past `rank` are zero.
struct HnfResult {
    h: Matrix,
    u: Matrix,
    rank: usize,
    pivots: Vec<usize>,
}

fn hnf_with_transform(rows: &[Vec<BigInt>], ncols: usize) -> HnfResult {
    let m = rows.len();
    let mut a: Matrix = rows.to_vec();
    let mut u = identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero entry at or below row r
            let best = (r..m)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(best) = best else { break };
            a.swap(r, best);
            u.swap(r, best);
            let mut done = true;
            for i in r + 1..m {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                row_axpy(&mut a, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][col].is_zero() {
            continue;
        }
        if a[r][col].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
            for x in u[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][col].div_floor(&a[r][col]);
            row_axpy(&mut a, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        pivots.push(col);
        r += 1;
    }
    HnfResult { h: a, u, rank: r, pivots }
}

/// A sublattice of `Z^n` stored by its Hermite normal form basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IntegerLattice {
    dim: usize,
    basis: Vec<IntVector>,
    pivots: Vec<usize>,
}

impl IntegerLattice {
    /// The lattice generated by `rows`, in canonical form.
    pub fn hnf(dim: usize, rows: &[IntVector]) -> Result<Self, LatticeError> {
        if dim == 0 {
            return Err(LatticeError::ZeroDimension);
        }
        for r in rows {
            r.check_dim(dim)?;
        }
        let raw: Vec<Vec<BigInt>> = rows.iter().map(|r| r.0.clone()).collect();
        let res = hnf_with_transform(&raw, dim);
        let basis = res.h.into_iter().take(res.rank).map(IntVector).collect();
        Ok(IntegerLattice { dim, basis, pivots: res.pivots })
    }

    pub fn zero(dim: usize) -> Self {
        IntegerLattice { dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim).map(|i| IntVector::unit(dim, i)).collect();
        IntegerLattice { dim, basis, pivots: (0..dim).collect() }
    }

    /// Convenience constructor from small integer rows.
    pub fn from_rows(dim: usize, rows: &[&[i64]]) -> Result<Self, LatticeError> {
        let rows: Vec<IntVector> = rows.iter().map(|r| IntVector::from_i64s(r)).collect();
        Self::hnf(dim, &rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// True when the lattice is all of `Z^n`.
    pub fn is_full(&self) -> bool {
        self.rank() == self.dim && self.basis.iter().enumerate().all(|(i, b)| b.0[i].is_one())
    }

    /// Pivot column and pivot entry of each basis row.
    pub fn pivots(&self) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        self.pivots.iter().zip(&self.basis).map(|(&c, b)| (c, &b.0[c]))
    }

    /// Reduces `v` against the basis, top-down. The residual is zero iff `v` is a member.
    pub fn reduce(&self, v: &IntVector) -> Result<IntVector, LatticeError> {
        v.check_dim(self.dim)?;
        let mut w = v.clone();
        for (row, &col) in self.basis.iter().zip(&self.pivots) {
            let q = w.0[col].div_floor(&row.0[col]);
            if !q.is_zero() {
                for (x, b) in w.0.iter_mut().zip(&row.0) {
                    *x -= &q * b;
                }
            }
        }
        Ok(w)
    }

    pub fn member(&self, v: &IntVector) -> Result<bool, LatticeError> {
        v.check_dim(self.dim)?;
        let mut w = v.clone();
        for (row, &col) in self.basis.iter().zip(&self.pivots) {
            // columns left of the pivot are already settled by earlier rows
            if w.0[..col].iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
            let (q, r) = w.0[col].div_mod_floor(&row.0[col]);
            if !r.is_zero() {
                return Ok(false);
            }
            for (x, b) in w.0.iter_mut().zip(&row.0) {
                *x -= &q * b;
            }
        }
        Ok(w.is_zero())
    }

    /// `self ⊆ other`.
    pub fn is_sublattice_of(&self, other: &IntegerLattice) -> Result<bool, LatticeError> {
        self.check_same_dim(other)?;
        for b in &self.basis {
            if !other.member(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_same_dim(&self, other: &IntegerLattice) -> Result<(), LatticeError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(LatticeError::DimensionMismatch { expected: self.dim, found: other.dim })
        }
    }

    pub fn sum(&self, other: &IntegerLattice) -> Result<IntegerLattice, LatticeError> {
        self.check_same_dim(other)?;
        let rows: Vec<IntVector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::hnf(self.dim, &rows)
    }

    /// Intersection through the integer left kernel of the stacked bases.
    pub fn intersect(&self, other: &IntegerLattice) -> Result<IntegerLattice, LatticeError> {
        self.check_same_dim(other)?;
        let k1 = self.rank();
        let stacked: Vec<Vec<BigInt>> =
            self.basis.iter().chain(&other.basis).map(|b| b.0.clone()).collect();
        let res = hnf_with_transform(&stacked, self.dim);
        let mut gens = Vec::new();
        for krow in &res.u[res.rank..] {
            let mut v = IntVector::zeros(self.dim);
            for (coef, b) in krow[..k1].iter().zip(&self.basis) {
                if !coef.is_zero() {
                    v = &v + &b.scale(coef);
                }
            }
            gens.push(v);
        }
        Self::hnf(self.dim, &gens)
    }

    /// `L ∩ (Z^axes × {0})`, written in the `|axes|`-dimensional coordinates of the axes.
    /// Axes are zero-based.
    pub fn coordinate_section(&self, axes: &[usize]) -> Result<IntegerLattice, LatticeError> {
        let axes = normalize_axes(axes, self.dim)?;
        let coordinate = IntegerLattice::hnf(
            self.dim,
            &axes.iter().map(|&a| IntVector::unit(self.dim, a)).collect::<Vec<_>>(),
        )?;
        let section = self.intersect(&coordinate)?;
        let projected: Vec<IntVector> = section.basis.iter().map(|b| b.project(&axes)).collect();
        IntegerLattice::hnf(axes.len(), &projected)
    }

    /// Absolute determinant for full-rank lattices (the index in `Z^n`).
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() != self.dim {
            return None;
        }
        Some(self.basis.iter().enumerate().map(|(i, b)| b.0[i].clone()).product())
    }

    pub fn quotient(&self) -> QuotientGroup {
        QuotientGroup::new(self.clone())
    }
}

impl fmt::Display for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b:?}")?;
        }
        write!(f, ">")
    }
}

pub(crate) fn normalize_axes(axes: &[usize], dim: usize) -> Result<Vec<usize>, LatticeError> {
    if axes.is_empty() {
        return Err(LatticeError::EmptyAxes);
    }
    let mut out = axes.to_vec();
    out.sort_unstable();
    out.dedup();
    if let Some(&a) = out.iter().find(|&&a| a >= dim) {
        return Err(LatticeError::AxisOutOfRange { axis: a, dim });
    }
    Ok(out)
}

/// A coset `offset + L`, with the offset reduced against the HNF pivots.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AffineLattice {
    offset: IntVector,
    lattice: IntegerLattice,
}

impl AffineLattice {
    pub fn new(offset: IntVector, lattice: IntegerLattice) -> Result<Self, LatticeError> {
        let offset = lattice.reduce(&offset)?;
        Ok(AffineLattice { offset, lattice })
    }

    pub fn offset(&self) -> &IntVector {
        &self.offset
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    pub fn contains(&self, v: &IntVector) -> Result<bool, LatticeError> {
        self.lattice.member(&(v - &self.offset))
    }

    pub fn translate(&self, u: &IntVector) -> Result<AffineLattice, LatticeError> {
        AffineLattice::new(&self.offset + u, self.lattice.clone())
    }
}

/// `Z^n / L` with its Smith normal form data.
///
/// With `w = v · V` the SNF coordinates of `v`, the first `r` coordinates are
/// taken modulo the diagonal entries `d_1 | … | d_r` and the rest are free.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    lattice: IntegerLattice,
    diagonal: Vec<BigInt>,
    v: Matrix,
    v_inv: Matrix,
}

impl PartialEq for QuotientGroup {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice
    }
}
impl Eq for QuotientGroup {}

impl QuotientGroup {
    pub fn new(lattice: IntegerLattice) -> Self {
        let n = lattice.dim;
        if lattice.is_zero() {
            return QuotientGroup { lattice, diagonal: Vec::new(), v: identity(n), v_inv: identity(n) };
        }
        let mut a: Matrix = lattice.basis.iter().map(|b| b.0.clone()).collect();
        let r = a.len();
        let mut v = identity(n);
        let mut v_inv = identity(n);

        // column ops on `a` are mirrored as `v ← v·E` and `v_inv ← E⁻¹·v_inv`
        let col_axpy = |a: &mut Matrix, v: &mut Matrix, v_inv: &mut Matrix, t: usize, s: usize, q: &BigInt| {
            // col t -= q * col s
            for row in a.iter_mut() {
                let x = &row[s] * q;
                row[t] -= x;
            }
            for row in v.iter_mut() {
                let x = &row[s] * q;
                row[t] -= x;
            }
            // inverse: row s += q * row t
            let src = v_inv[t].clone();
            for (x, y) in v_inv[s].iter_mut().zip(&src) {
                *x += q * y;
            }
        };
        let col_swap = |a: &mut Matrix, v: &mut Matrix, v_inv: &mut Matrix, i: usize, j: usize| {
            for row in a.iter_mut() {
                row.swap(i, j);
            }
            for row in v.iter_mut() {
                row.swap(i, j);
            }
            v_inv.swap(i, j);
        };

        for t in 0..r {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..r {
                    for j in t..n {
                        if a[i][j].is_zero() {
                            continue;
                        }
                        match best {
                            Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                            _ => best = Some((i, j)),
                        }
                    }
                }
                let Some((bi, bj)) = best else { break };
                a.swap(t, bi);
                if bj != t {
                    col_swap(&mut a, &mut v, &mut v_inv, t, bj);
                }
                let mut clean = true;
                for i in t + 1..r {
                    if a[i][t].is_zero() {
                        continue;
                    }
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_axpy(&mut a, i, t, &q);
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    if a[t][j].is_zero() {
                        continue;
                    }
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, &mut v, &mut v_inv, j, t, &q);
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                // divisibility: pull any offending row into row t and retry
                let pivot = a[t][t].clone();
                let offender = (t + 1..r).find(|&i| (t + 1..n).any(|j| !a[i][j].mod_floor(&pivot).is_zero()));
                match offender {
                    Some(i) => {
                        let src = a[i].clone();
                        for (x, y) in a[t].iter_mut().zip(&src) {
                            *x += y;
                        }
                    }
                    None => break,
                }
            }
            if a[t][t].is_negative() {
                for x in a[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        let diagonal = (0..r).map(|i| a[i][i].clone()).collect();
        QuotientGroup { lattice, diagonal, v, v_inv }
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice.dim
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    /// Invariant factors `d_1 | d_2 | …`, unit factors dropped.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn free_rank(&self) -> usize {
        self.lattice.dim - self.lattice.rank()
    }

    pub fn is_trivial_lattice(&self) -> bool {
        self.lattice.is_zero()
    }

    /// Group order, `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank() > 0 {
            None
        } else {
            Some(self.diagonal.iter().product())
        }
    }

    fn snf_coords(&self, v: &IntVector) -> Vec<BigInt> {
        let n = self.lattice.dim;
        (0..n)
            .map(|j| {
                let mut s = BigInt::zero();
                for (i, x) in v.0.iter().enumerate() {
                    if !x.is_zero() {
                        s += x * &self.v[i][j];
                    }
                }
                s
            })
            .collect()
    }

    /// Canonical representative of the coset `v + L`, as a vector of `Z^n`.
    pub fn canonical_rep(&self, v: &IntVector) -> Result<IntVector, LatticeError> {
        v.check_dim(self.lattice.dim)?;
        Ok(self.canonical_unchecked(v))
    }

    pub(crate) fn canonical_unchecked(&self, v: &IntVector) -> IntVector {
        if self.lattice.is_zero() {
            return v.clone();
        }
        let n = self.lattice.dim;
        let mut w = self.snf_coords(v);
        for (x, d) in w.iter_mut().zip(&self.diagonal) {
            *x = x.mod_floor(d);
        }
        let coords = (0..n)
            .map(|j| {
                let mut s = BigInt::zero();
                for (i, x) in w.iter().enumerate() {
                    if !x.is_zero() {
                        s += x * &self.v_inv[i][j];
                    }
                }
                s
            })
            .collect();
        IntVector(coords)
    }

    /// Structural coordinates of the class of `v`: torsion coordinates first
    /// (one per invariant factor, reduced into `[0, d_i)`), then free coordinates.
    pub fn class_coords(&self, v: &IntVector) -> Result<Vec<BigInt>, LatticeError> {
        v.check_dim(self.lattice.dim)?;
        let w = self.snf_coords(v);
        let r = self.diagonal.len();
        let mut out: Vec<BigInt> = w[..r]
            .iter()
            .zip(&self.diagonal)
            .filter(|(_, d)| !d.is_one())
            .map(|(x, d)| x.mod_floor(d))
            .collect();
        out.extend(w[r..].iter().cloned());
        Ok(out)
    }

    pub fn q_add(&self, a: &IntVector, b: &IntVector) -> Result<IntVector, LatticeError> {
        a.check_dim(self.lattice.dim)?;
        b.check_dim(self.lattice.dim)?;
        Ok(self.canonical_unchecked(&(a + b)))
    }

    pub fn q_neg(&self, a: &IntVector) -> Result<IntVector, LatticeError> {
        a.check_dim(self.lattice.dim)?;
        Ok(self.canonical_unchecked(&-a))
    }

    pub fn q_sub(&self, a: &IntVector, b: &IntVector) -> Result<IntVector, LatticeError> {
        a.check_dim(self.lattice.dim)?;
        b.check_dim(self.lattice.dim)?;
        Ok(self.canonical_unchecked(&(a - b)))
    }

    pub fn identity(&self) -> IntVector {
        IntVector::zeros(self.lattice.dim)
    }

    /// All canonical representatives of a finite quotient, sorted. `None` when infinite.
    pub fn elements(&self) -> Option<Vec<IntVector>> {
        if self.free_rank() > 0 {
            return None;
        }
        let n = self.lattice.dim;
        let mut reps = vec![Vec::<BigInt>::new()];
        for d in &self.diagonal {
            let limit = d.to_u64()?;
            let mut next = Vec::new();
            for r in &reps {
                for k in 0..limit {
                    let mut r2 = r.clone();
                    r2.push(BigInt::from(k));
                    next.push(r2);
                }
            }
            reps = next;
        }
        let mut out: Vec<IntVector> = reps
            .into_iter()
            .map(|w| {
                IntVector(
                    (0..n)
                        .map(|j| w.iter().enumerate().map(|(i, x)| x * &self.v_inv[i][j]).sum())
                        .collect(),
                )
            })
            .collect();
        out.sort();
        Some(out)
    }
}
