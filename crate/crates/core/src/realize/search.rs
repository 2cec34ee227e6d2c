//! Exhaustive search for commuting matrix tuples realizing a degree-2 ideal.

use num_traits::ToPrimitive;
use serde::Serialize;

use super::field::{Elem, FiniteField};
use super::matrix::{for_each_in_box, Matrix2, MatrixRep};
use super::RealizeError;
use crate::ideal::TropicalIdeal;
use crate::lattice::{IntVector, IntegerLattice};

pub const MAX_VARS: usize = 3;

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Abort once this many candidate matrices have been tried.
    pub max_candidates: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_candidates: 50_000_000 }
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub target: IntegerLattice,
    pub field: FiniteField,
    pub witnesses: Vec<MatrixRep>,
    pub candidates_scanned: u64,
}

impl SearchReport {
    pub fn witness_count(&self) -> usize {
        self.witnesses.len()
    }

    /// Whether some witness has `m` as its first matrix.
    pub fn has_first_matrix(&self, m: &Matrix2) -> bool {
        self.witnesses.iter().any(|w| &w.matrices()[0] == m)
    }
}

/// Least `g ≥ 1` with `x^g ≡ r (mod x² + a x + b)` for a nonzero constant `r`.
/// Searched up to `q² − 1`, which bounds the order of `x` in the unit group
/// of `K[x]/(x² + a x + b)`.
pub fn check_quadratic_gap(f: &FiniteField, a: Elem, b: Elem) -> Result<Option<usize>, RealizeError> {
    if a == 0 || b == 0 || a as usize >= f.order() || b as usize >= f.order() {
        return Err(RealizeError::ZeroCoefficient { a, b });
    }
    // x^g mod (x² + a x + b) as r1·x + r0
    let (mut r1, mut r0) = (1, 0);
    let bound = f.order() * f.order() - 1;
    for g in 1..=bound {
        if r1 == 0 && r0 != 0 {
            return Ok(Some(g));
        }
        // x·(r1 x + r0) = r1(−a x − b) + r0 x
        let n1 = f.sub(r0, f.mul(a, r1));
        let n0 = f.neg(f.mul(b, r1));
        (r1, r0) = (n1, n0);
    }
    Ok(None)
}

/// One representative per conjugacy class of GL(2, q): the scalars `λI` and
/// the companion matrices of every `x² + a x + b` with `b ≠ 0`.
pub fn conjugacy_class_reps(f: &FiniteField) -> Vec<Matrix2> {
    let mut reps: Vec<Matrix2> = f.nonzero().map(Matrix2::scalar).collect();
    for a in f.elements() {
        for b in f.nonzero() {
            reps.push(Matrix2::companion(f, a, b));
        }
    }
    reps
}

pub fn search_degree2_realization(target: &IntegerLattice, field: &FiniteField) -> Result<SearchReport, RealizeError> {
    search_with_options(target, field, &SearchOptions::default())
}

pub fn search_with_options(
    target: &IntegerLattice,
    field: &FiniteField,
    opts: &SearchOptions,
) -> Result<SearchReport, RealizeError> {
    let n = target.ambient_dim();
    if n > MAX_VARS {
        return Err(RealizeError::TooManyVariables(n));
    }
    let limit = if n <= 2 { 25 } else { 9 };
    if field.order() > limit {
        return Err(RealizeError::FieldTooLarge { q: field.order(), n, limit });
    }
    if target.rank() != n {
        return Err(RealizeError::NotFullRank(target.to_string()));
    }
    // A witness must have projective order equal to the axis index on every axis.
    let axis_index: Vec<usize> = (0..n)
        .map(|j| {
            let section = target.coordinate_section(&[j]).expect("axis in range");
            section.basis()[0].get(0).magnitude().to_usize().expect("full rank targets have small axis indices")
        })
        .collect();
    if axis_index.iter().product::<usize>() > 1 << 20 {
        return Err(RealizeError::CandidateLimit { limit: opts.max_candidates });
    }
    let mut in_target = Vec::new();
    for_each_in_box(&axis_index, |u| {
        let v = IntVector::from_i64s(&u.iter().map(|&k| k as i64).collect::<Vec<_>>());
        in_target.push(target.member(&v).expect("dimension checked"));
    });

    let mut state = Search {
        f: field,
        axis_index: &axis_index,
        in_target: &in_target,
        gl: None,
        scanned: 0,
        limit: opts.max_candidates,
        witnesses: Vec::new(),
    };
    let mut chosen = Vec::with_capacity(n);
    state.extend(&mut chosen)?;
    Ok(SearchReport {
        target: target.clone(),
        field: field.clone(),
        witnesses: state.witnesses,
        candidates_scanned: state.scanned,
    })
}

struct Search<'a> {
    f: &'a FiniteField,
    axis_index: &'a [usize],
    in_target: &'a [bool],
    gl: Option<Vec<Matrix2>>,
    scanned: u64,
    limit: u64,
    witnesses: Vec<MatrixRep>,
}

impl Search<'_> {
    fn extend(&mut self, chosen: &mut Vec<Matrix2>) -> Result<(), RealizeError> {
        let j = chosen.len();
        if j == self.axis_index.len() {
            if self.matches(chosen) {
                self.witnesses.push(MatrixRep::new(self.f.clone(), chosen.clone()).expect("commuting by construction"));
            }
            return Ok(());
        }
        let candidates = if j == 0 {
            conjugacy_class_reps(self.f)
        } else if let Some(a) = chosen.iter().find(|m| !m.is_scalar()) {
            // The centralizer of a non-scalar 2×2 matrix is K[A].
            Matrix2::polynomial_units(self.f, a)
        } else {
            self.gl.get_or_insert_with(|| Matrix2::general_linear(self.f)).clone()
        };
        for m in candidates {
            self.scanned += 1;
            if self.scanned > self.limit {
                return Err(RealizeError::CandidateLimit { limit: self.limit });
            }
            if m.projective_order(self.f) != Some(self.axis_index[j]) {
                continue;
            }
            chosen.push(m);
            self.extend(chosen)?;
            chosen.pop();
        }
        Ok(())
    }

    /// Both lattices contain `diag(axis_index)`, so they agree iff they agree
    /// on the box.
    fn matches(&self, chosen: &[Matrix2]) -> bool {
        let f = self.f;
        let powers: Vec<Vec<Matrix2>> = chosen
            .iter()
            .zip(self.axis_index)
            .map(|(m, &e)| std::iter::successors(Some(Matrix2::identity()), |x| Some(x.mul(f, m))).take(e).collect())
            .collect();
        let mut ok = true;
        let mut idx = 0;
        for_each_in_box(self.axis_index, |u| {
            if ok {
                let mut acc = Matrix2::identity();
                for (i, &k) in u.iter().enumerate() {
                    acc = acc.mul(f, &powers[i][k]);
                }
                ok = acc.is_scalar() == self.in_target[idx];
            }
            idx += 1;
        });
        ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expected {
    Zero,
    AtLeastOne,
}

impl Expected {
    pub fn holds(self, count: usize) -> bool {
        match self {
            Expected::Zero => count == 0,
            Expected::AtLeastOne => count > 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TargetRun {
    pub target: String,
    pub field: String,
    pub witness_count: usize,
    pub candidates_scanned: u64,
    /// Row-major entries of each witness matrix, in the field's integer encoding.
    pub witnesses: Vec<Vec<[Elem; 4]>>,
    pub expected: Option<Expected>,
    pub matches: bool,
}

impl TargetRun {
    pub fn from_report(report: &SearchReport, expected: Option<Expected>) -> Self {
        let count = report.witness_count();
        TargetRun {
            target: report.target.to_string(),
            field: report.field.name(),
            witness_count: count,
            candidates_scanned: report.candidates_scanned,
            witnesses: report.witnesses.iter().map(|w| w.matrices().iter().map(|m| m.entries()).collect()).collect(),
            expected,
            matches: expected.map_or(true, |e| e.holds(count)),
        }
    }

    /// `<target> <field> witnesses=<k> ...` followed by one line per witness.
    pub fn render(&self) -> String {
        let mut s = format!(
            "{} {} witnesses={} scanned={} expected={} {}",
            self.target,
            self.field,
            self.witness_count,
            self.candidates_scanned,
            match self.expected {
                Some(Expected::Zero) => "0",
                Some(Expected::AtLeastOne) => ">0",
                None => "-",
            },
            if self.matches { "ok" } else { "MISMATCH" }
        );
        for w in &self.witnesses {
            let mats: Vec<String> = w.iter().map(|e| format!("{:?}", e)).collect();
            s.push_str(&format!("\n  {}", mats.join(" ")));
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Prop46Report {
    pub lattice: String,
    pub restriction_x1: String,
    pub restriction_x2x3: String,
    pub restrictions_match: bool,
    pub trivariate: Vec<TargetRun>,
    pub univariate: Vec<TargetRun>,
    pub bivariate: Vec<TargetRun>,
    pub fields: Vec<String>,
    pub matches: bool,
}

impl Prop46Report {
    pub fn runs(&self) -> impl Iterator<Item = &TargetRun> {
        self.trivariate.iter().chain(&self.univariate).chain(&self.bivariate)
    }
}

pub const PROP46_FIELDS: [usize; 4] = [2, 3, 4, 5];

/// The trivariate ideal of `<(4,0,0),(0,2,0),(0,0,2)>`, its restrictions to
/// `{x1}` and `{x2, x3}`, and searches over GF(2), GF(3), GF(4), GF(5).
pub fn prop46_experiment() -> Result<Prop46Report, RealizeError> {
    let l = IntegerLattice::from_rows(3, &[&[4, 0, 0], &[0, 2, 0], &[0, 0, 2]])?;
    let ideal = TropicalIdeal::degree2_from_lattice(l.clone())?;
    let uni = ideal.restrict_vars(&[0])?.binomial_lattice();
    let bi = ideal.restrict_vars(&[1, 2])?.binomial_lattice();
    let want_uni = IntegerLattice::from_rows(1, &[&[4]])?;
    let want_bi = IntegerLattice::from_rows(2, &[&[2, 0], &[0, 2]])?;
    let restrictions_match = uni == want_uni && bi == want_bi;

    let mut trivariate = Vec::new();
    let mut univariate = Vec::new();
    let mut bivariate = Vec::new();
    for q in PROP46_FIELDS {
        let f = FiniteField::gf(q)?;
        trivariate.push(TargetRun::from_report(&search_degree2_realization(&l, &f)?, Some(Expected::Zero)));
        // 4Z needs an element of order 4 in PGL(2, q).
        let e_uni = if q % 2 == 0 { Expected::Zero } else { Expected::AtLeastOne };
        univariate.push(TargetRun::from_report(&search_degree2_realization(&uni, &f)?, Some(e_uni)));
        // <(2,0),(0,2)> needs a Klein four-group of commuting lifts.
        let e_bi = if q == 4 { Expected::AtLeastOne } else { Expected::Zero };
        bivariate.push(TargetRun::from_report(&search_degree2_realization(&bi, &f)?, Some(e_bi)));
    }
    let mut report = Prop46Report {
        lattice: l.to_string(),
        restriction_x1: uni.to_string(),
        restriction_x2x3: bi.to_string(),
        restrictions_match,
        trivariate,
        univariate,
        bivariate,
        fields: PROP46_FIELDS.iter().map(|q| format!("GF({q})")).collect(),
        matches: false,
    };
    report.matches = report.restrictions_match && report.runs().all(|r| r.matches);
    Ok(report)
}
