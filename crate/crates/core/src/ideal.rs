//! Zero-dimensional tropical ideals with Boolean coefficients.
//!
//! Every representation reduces to the same data: a quotient `Z^n / L`, an
//! integer `d`, and a `Z^n`-invariant d-partition of the quotient. Points in
//! one class of `L` are parallel in the underlying matroid, and the
//! simplification is the rank-(d+1) paving matroid of the partition. Ranks,
//! membership and circuits all run off that description.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use num_bigint::BigInt;
use serde::Serialize;

use crate::lattice::{IntVector, IntegerLattice, LatticeError};
use crate::matroid::{FiniteMatroid, Label, MatroidError};
use crate::partition::{
    is_d_sparse, is_subgroup_coset, shift_fixes, Block, GeneratorSet, InvariantPartition, PartitionError,
    QuotientBlock, QuotientGeneratorSet, QuotientInvariantPartition, Window,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("the lattice must be a proper sublattice of Z^{0}")]
    NotProper(usize),
    #[error("a degree-3 pair needs a 2-partition, got d = {0}")]
    NotDegreeThree(usize),
    #[error("support repeats the point {0:?}")]
    RepeatedPoint(IntVector),
    #[error("matroid is not paving")]
    NotPaving,
    #[error("matroid has rank {0}; extension needs rank at least 2")]
    RankTooSmall(usize),
    #[error("embedded image is not {d}-sparse")]
    NotSparse { d: usize },
    #[error("labels {0} and {1} are embedded at the same point")]
    NotInjective(Label, Label),
    #[error("label {0} has no image")]
    MissingImage(Label),
    #[error("restriction axes must be a nonempty proper subset of 1..{0}")]
    BadAxes(usize),
    #[error("restriction to these axes has every pair of monomials parallel (a degree-1 ideal), which no representation here covers")]
    DegreeOneRestriction,
    #[error("restriction to fewer variables is implemented for paving and degree-2 lattice ideals")]
    UnsupportedRestriction,
    #[error("m^S needs m >= 2 and at least two distinct exponents")]
    BadPowerSet,
    #[error("the remark example needs d >= 3, got {0}")]
    BadRemarkDegree(usize),
    #[error("{what}: {count} candidates exceed the limit {limit}")]
    TooManySubsets { what: &'static str, count: BigInt, limit: usize },
}

/// Resource caps for window enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_window_points: usize,
    pub max_subsets: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_window_points: 4096, max_subsets: 5_000_000 }
    }
}

/// The support of a Boolean polynomial: sorted distinct exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Support(Vec<IntVector>);

impl Support {
    pub fn new(points: Vec<IntVector>) -> Result<Self, IdealError> {
        let mut points = points;
        points.sort();
        for w in points.windows(2) {
            if w[0] == w[1] {
                return Err(IdealError::RepeatedPoint(w[0].clone()));
            }
            if w[0].dim() != w[1].dim() {
                return Err(LatticeError::DimensionMismatch { expected: w[0].dim(), found: w[1].dim() }.into());
            }
        }
        Ok(Support(points))
    }

    pub fn empty() -> Self {
        Support(Vec::new())
    }

    /// One-variable support from integer exponents.
    pub fn univariate(xs: &[i64]) -> Result<Self, IdealError> {
        Self::new(xs.iter().map(|&x| IntVector::from_i64s(&[x])).collect())
    }

    pub fn points(&self) -> &[IntVector] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn translate(&self, v: &IntVector) -> Support {
        let mut pts: Vec<IntVector> = self.0.iter().map(|p| p + v).collect();
        pts.sort();
        Support(pts)
    }
}

/// A degree-2 ideal given by its binomial lattice.
#[derive(Debug, Clone)]
pub struct LatticeIdeal {
    lattice: IntegerLattice,
    view: QuotientInvariantPartition,
}

impl PartialEq for LatticeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice
    }
}
impl Eq for LatticeIdeal {}

impl LatticeIdeal {
    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TropicalIdeal {
    /// Degree d + 1, given by a `Z^n`-invariant d-partition of `Z^n`.
    Paving(InvariantPartition),
    /// Degree 2, given by a proper sublattice.
    LatticeDeg2(LatticeIdeal),
    /// Degree d + 1 with parallel classes the cosets of `L`: a d-partition of
    /// `Z^n / L`. The degree-3 pairs `(L, P)` are the `d = 2` case.
    Quotient(QuotientInvariantPartition),
}

/// Circuits of a window matroid in compressed form. The remaining circuits
/// are the (d+2)-sets of pairwise non-parallel points containing none of
/// `small`, so two signatures on the same ground are equal exactly when the
/// full circuit lists are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CircuitSignature {
    pub d: usize,
    pub ground: Vec<IntVector>,
    /// Pairs of points in one class of the quotient lattice.
    pub parallel: Vec<Vec<IntVector>>,
    /// (d+1)-circuits.
    pub small: Vec<Vec<IntVector>>,
}

/// Observed versus expected degree on a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub expected: usize,
    pub observed: usize,
    pub matches: bool,
}

/// Circuits of a finite point set as index sets into `points`.
struct IndexedCircuits {
    points: Vec<IntVector>,
    parallel: Vec<Vec<usize>>,
    small: Vec<Vec<usize>>,
    large: Vec<Vec<usize>>,
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl TropicalIdeal {
    // ---- constructors

    /// Degree-2 ideal of a proper sublattice (`x^u ⊕ x^v ∈ I` iff `u − v ∈ L`).
    pub fn degree2_from_lattice(lattice: IntegerLattice) -> Result<Self, IdealError> {
        if lattice.is_full() {
            return Err(IdealError::NotProper(lattice.ambient_dim()));
        }
        let gens = QuotientGeneratorSet::new(lattice.quotient(), 1, Vec::new())?;
        let view = QuotientInvariantPartition::new(gens)?;
        Ok(TropicalIdeal::LatticeDeg2(LatticeIdeal { lattice, view }))
    }

    pub fn paving(gens: GeneratorSet) -> Result<Self, IdealError> {
        Ok(TropicalIdeal::Paving(InvariantPartition::new(gens)?))
    }

    /// The uniform ideal of degree d + 1: no listed blocks.
    pub fn uniform_ideal(n: usize, d: usize) -> Result<Self, IdealError> {
        Ok(TropicalIdeal::Paving(InvariantPartition::uniform(n, d)?))
    }

    /// Degree-3 paving ideal in one variable generated by the block `m^S`.
    pub fn m_s_ideal(m: u32, exponents: &[u32]) -> Result<Self, IdealError> {
        let s: BTreeSet<u32> = exponents.iter().copied().collect();
        if m < 2 || s.len() < 2 || s.len() != exponents.len() {
            return Err(IdealError::BadPowerSet);
        }
        let base = BigInt::from(m);
        let points: Vec<IntVector> = s.iter().map(|&e| IntVector::new(vec![num_traits::pow(base.clone(), e as usize)])).collect();
        if !is_d_sparse(&points, 2) {
            return Err(IdealError::NotSparse { d: 2 });
        }
        Self::paving(GeneratorSet::new(1, 2, vec![Block::finite(points)])?)
    }

    /// The degree-3 ideal of a pair `(L, P)` with `P` a 2-partition of `Z^n / L`.
    pub fn degree3_from_pair(gens: QuotientGeneratorSet) -> Result<Self, IdealError> {
        if gens.d() != 2 {
            return Err(IdealError::NotDegreeThree(gens.d()));
        }
        Self::quotient_ideal(gens)
    }

    /// Degree d + 1 ideal of a d-partition of `Z^n / L`.
    pub fn quotient_ideal(gens: QuotientGeneratorSet) -> Result<Self, IdealError> {
        Ok(TropicalIdeal::Quotient(QuotientInvariantPartition::new(gens)?))
    }

    /// Quotient example with `L = <(2d−2, 0)>` and the block
    /// `S = {[(x, y)] : x ∈ {0, 2, …, 2d−4}, y ∈ {0, 1}}`.
    pub fn remark_example(d: usize) -> Result<Self, IdealError> {
        if d < 3 {
            return Err(IdealError::BadRemarkDegree(d));
        }
        let period = 2 * d as i64 - 2;
        let l = IntegerLattice::from_rows(2, &[&[period, 0]])?;
        let block = remark_block(d);
        Self::quotient_ideal(QuotientGeneratorSet::new(l.quotient(), d, vec![QuotientBlock::Finite(block)])?)
    }

    /// `Paving(n, 1, {L})`: the degree-2 lattice ideal written as a 1-partition.
    pub fn lattice_as_paving(lattice: &IntegerLattice) -> Result<Self, IdealError> {
        if lattice.is_full() {
            return Err(IdealError::NotProper(lattice.ambient_dim()));
        }
        let blocks = if lattice.is_zero() { Vec::new() } else { vec![Block::affine(lattice.clone())] };
        Self::paving(GeneratorSet::new(lattice.ambient_dim(), 1, blocks)?)
    }

    // ---- accessors

    pub(crate) fn view(&self) -> &QuotientInvariantPartition {
        match self {
            TropicalIdeal::Paving(p) => p.as_quotient(),
            TropicalIdeal::LatticeDeg2(l) => &l.view,
            TropicalIdeal::Quotient(q) => q,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.view().ambient_dim()
    }

    /// The `d` of the underlying d-partition; the degree is `d + 1`.
    pub fn d(&self) -> usize {
        self.view().d()
    }

    pub fn degree(&self) -> usize {
        self.d() + 1
    }

    pub fn kind(&self) -> &'static str {
        match self {
            TropicalIdeal::Paving(_) => "paving",
            TropicalIdeal::LatticeDeg2(_) => "lattice2",
            TropicalIdeal::Quotient(q) if q.d() == 2 => "degree3",
            TropicalIdeal::Quotient(_) => "quotient",
        }
    }

    /// `L_I`: differences of the binomials in the ideal.
    pub fn binomial_lattice(&self) -> IntegerLattice {
        let view = self.view();
        if view.d() == 1 {
            for b in view.generators().blocks() {
                if let QuotientBlock::Coset(m) = b {
                    return m.clone();
                }
            }
        }
        view.quotient().lattice().clone()
    }

    // ---- rank and membership

    fn check_points(&self, points: &[IntVector]) -> Result<(), IdealError> {
        let n = self.ambient_dim();
        for p in points {
            p.check_dim(n)?;
        }
        Ok(())
    }

    fn distinct_classes(&self, points: &[IntVector]) -> Vec<IntVector> {
        let q = self.view().quotient();
        let set: BTreeSet<IntVector> = points.iter().map(|p| q.canonical_unchecked(p)).collect();
        set.into_iter().collect()
    }

    /// Rank of sorted distinct classes under the paving rule.
    fn class_rank(&self, classes: &[IntVector]) -> usize {
        let d = self.d();
        if classes.len() <= d {
            classes.len()
        } else if self.view().contains_in_block_classes(classes).is_some() {
            d
        } else {
            d + 1
        }
    }

    /// Rank of a finite set of monomials in the underlying matroid.
    pub fn rank_oracle(&self, points: &[IntVector]) -> Result<usize, IdealError> {
        self.check_points(points)?;
        Ok(self.class_rank(&self.distinct_classes(points)))
    }

    /// Whether `S` is the support of a polynomial in the ideal, i.e. a cycle:
    /// no element of `S` is a coloop of the restriction to `S`.
    pub fn contains(&self, support: &Support) -> Result<bool, IdealError> {
        let pts = support.points();
        self.check_points(pts)?;
        if pts.is_empty() {
            return Ok(true);
        }
        let full = self.rank_oracle(pts)?;
        let mut rest = Vec::with_capacity(pts.len() - 1);
        for skip in 0..pts.len() {
            rest.clear();
            rest.extend(pts.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, p)| p.clone()));
            if self.rank_oracle(&rest)? < full {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dependent with every proper subset independent.
    pub fn is_circuit(&self, support: &Support) -> Result<bool, IdealError> {
        let pts = support.points();
        self.check_points(pts)?;
        if pts.is_empty() || self.rank_oracle(pts)? == pts.len() {
            return Ok(false);
        }
        for skip in 0..pts.len() {
            let rest: Vec<IntVector> = pts.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, p)| p.clone()).collect();
            if self.rank_oracle(&rest)? != rest.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    // ---- window enumeration

    /// Parallel pairs and (d+1)-circuits of a sorted, distinct point list.
    fn small_circuits(&self, points: &[IntVector]) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>, HashSet<Vec<IntVector>>), IdealError> {
        let d = self.d();
        let view = self.view();
        let q = view.quotient();
        let mut by_class: BTreeMap<IntVector, Vec<usize>> = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            by_class.entry(q.canonical_unchecked(p)).or_default().push(i);
        }
        let mut parallel = Vec::new();
        for members in by_class.values() {
            parallel.extend(members.iter().copied().tuple_combinations().map(|(a, b)| vec![a, b]));
        }
        let mut small = Vec::new();
        let mut dependent: HashSet<Vec<IntVector>> = HashSet::new();
        for trace in view.blocks_meeting(points, d + 1)? {
            for classes in trace.classes.iter().cloned().combinations(d + 1) {
                let choices: Vec<&Vec<usize>> = classes.iter().map(|c| &by_class[c]).collect();
                for pick in choices.into_iter().multi_cartesian_product() {
                    let mut c: Vec<usize> = pick.into_iter().copied().collect();
                    c.sort_unstable();
                    small.push(c);
                }
                dependent.insert(classes);
            }
        }
        small.sort();
        small.dedup();
        Ok((parallel, small, dependent))
    }

    fn prepare_points(&self, points: &[IntVector], limits: &Limits) -> Result<Vec<IntVector>, IdealError> {
        self.check_points(points)?;
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() > limits.max_window_points {
            return Err(PartitionError::WindowTooLarge { points: BigInt::from(pts.len()), limit: limits.max_window_points }.into());
        }
        Ok(pts)
    }

    fn indexed_circuits(&self, points: &[IntVector], limits: &Limits) -> Result<IndexedCircuits, IdealError> {
        let pts = self.prepare_points(points, limits)?;
        let d = self.d();
        let (parallel, small, dependent) = self.small_circuits(&pts)?;
        let q = self.view().quotient();
        let mut by_class: BTreeMap<IntVector, Vec<usize>> = BTreeMap::new();
        for (i, p) in pts.iter().enumerate() {
            by_class.entry(q.canonical_unchecked(p)).or_default().push(i);
        }
        let classes: Vec<&IntVector> = by_class.keys().collect();
        let candidates = binomial(classes.len(), d + 2);
        if candidates > BigInt::from(limits.max_subsets) {
            return Err(IdealError::TooManySubsets { what: "(d+2)-subset scan", count: candidates, limit: limits.max_subsets });
        }
        let mut large = Vec::new();
        for combo in classes.iter().copied().combinations(d + 2) {
            let free = (0..combo.len()).all(|skip| {
                let sub: Vec<IntVector> =
                    combo.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, c)| (*c).clone()).collect();
                !dependent.contains(&sub)
            });
            if !free {
                continue;
            }
            let choices: Vec<&Vec<usize>> = combo.iter().map(|c| &by_class[*c]).collect();
            for pick in choices.into_iter().multi_cartesian_product() {
                let mut c: Vec<usize> = pick.into_iter().copied().collect();
                c.sort_unstable();
                large.push(c);
                if large.len() > limits.max_subsets {
                    return Err(IdealError::TooManySubsets {
                        what: "(d+2)-circuit list",
                        count: BigInt::from(large.len()),
                        limit: limits.max_subsets,
                    });
                }
            }
        }
        Ok(IndexedCircuits { points: pts, parallel, small, large })
    }

    /// All circuits of the restriction to a finite point set, sorted.
    pub fn circuits_on(&self, points: &[IntVector], limits: &Limits) -> Result<Vec<Support>, IdealError> {
        let ic = self.indexed_circuits(points, limits)?;
        let mut out: Vec<Support> = ic
            .parallel
            .iter()
            .chain(&ic.small)
            .chain(&ic.large)
            .map(|c| Support(c.iter().map(|&i| ic.points[i].clone()).collect()))
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn circuits_in_window(&self, window: &Window, limits: &Limits) -> Result<Vec<Support>, IdealError> {
        self.circuits_on(&window.points(limits.max_window_points)?, limits)
    }

    /// Compressed circuit list of the restriction to `points`.
    pub fn circuit_signature(&self, points: &[IntVector], limits: &Limits) -> Result<CircuitSignature, IdealError> {
        let pts = self.prepare_points(points, limits)?;
        let (parallel, small, _) = self.small_circuits(&pts)?;
        let as_points = |sets: Vec<Vec<usize>>| -> Vec<Vec<IntVector>> {
            let mut v: Vec<Vec<IntVector>> = sets.into_iter().map(|c| c.iter().map(|&i| pts[i].clone()).collect()).collect();
            v.sort();
            v
        };
        let parallel = as_points(parallel);
        let small = as_points(small);
        Ok(CircuitSignature { d: self.d(), ground: pts, parallel, small })
    }

    /// `uMat(I|_E)` for a finite set of monomials `E`.
    pub fn restrict_to_points(&self, points: &[IntVector], limits: &Limits) -> Result<FiniteMatroid, IdealError> {
        let ic = self.indexed_circuits(points, limits)?;
        let ground: Vec<Label> = ic.points.iter().cloned().map(Label::Point).collect();
        let mut circuits = ic.parallel;
        circuits.extend(ic.small);
        circuits.extend(ic.large);
        Ok(FiniteMatroid::from_index_circuits(ground, circuits)?)
    }

    pub fn restrict_matroid(&self, window: &Window, limits: &Limits) -> Result<FiniteMatroid, IdealError> {
        self.restrict_to_points(&window.points(limits.max_window_points)?, limits)
    }

    /// Largest independent subset of the window matroid against the degree.
    pub fn verify_degree_on_window(&self, window: &Window, limits: &Limits) -> Result<DegreeCheck, IdealError> {
        let m = self.restrict_matroid(window, limits)?;
        let observed = m.rank();
        Ok(DegreeCheck { expected: self.degree(), observed, matches: observed == self.degree() })
    }

    /// Whether two ideals have the same circuits on a probe window.
    pub fn agrees_on(&self, other: &TropicalIdeal, window: &Window, limits: &Limits) -> Result<bool, IdealError> {
        if self.ambient_dim() != other.ambient_dim() {
            return Ok(false);
        }
        Ok(self.circuits_in_window(window, limits)? == other.circuits_in_window(window, limits)?)
    }

    // ---- restriction and extension

    /// `I ∩ B[x_i^{±1} : i ∈ axes]` for zero-based `axes`.
    pub fn restrict_vars(&self, axes: &[usize]) -> Result<TropicalIdeal, IdealError> {
        let n = self.ambient_dim();
        let axes: Vec<usize> = axes.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if axes.is_empty() || axes.len() >= n || axes.iter().any(|&a| a >= n) {
            return Err(IdealError::BadAxes(n));
        }
        let k = axes.len();
        match self {
            TropicalIdeal::LatticeDeg2(l) => {
                let section = l.lattice.coordinate_section(&axes)?;
                if section.is_full() {
                    return Err(IdealError::DegreeOneRestriction);
                }
                TropicalIdeal::degree2_from_lattice(section)
            }
            TropicalIdeal::Quotient(_) => Err(IdealError::UnsupportedRestriction),
            TropicalIdeal::Paving(p) => {
                let d = p.d();
                let off: Vec<usize> = (0..n).filter(|i| !axes.contains(i)).collect();
                let mut blocks = Vec::new();
                for b in p.generators().blocks() {
                    match b {
                        Block::Finite(points) => {
                            let mut groups: BTreeMap<IntVector, Vec<IntVector>> = BTreeMap::new();
                            for x in points {
                                groups.entry(x.project(&off)).or_default().push(x.project(&axes));
                            }
                            blocks.extend(groups.into_values().filter(|g| g.len() >= d).map(Block::finite));
                        }
                        Block::Affine(a) => {
                            let section = a.lattice().coordinate_section(&axes)?;
                            if section.is_full() {
                                // some translate contains the whole coordinate sublattice
                                if d == 1 {
                                    return Err(IdealError::DegreeOneRestriction);
                                }
                                return TropicalIdeal::uniform_ideal(k, d - 1);
                            }
                            if !section.is_zero() {
                                blocks.push(Block::affine(section));
                            }
                        }
                    }
                }
                TropicalIdeal::paving(GeneratorSet::new(k, d, blocks)?)
            }
        }
    }

    /// Extends a paving matroid of rank d + 1 on a d-sparse set of monomials
    /// to a paving ideal whose restriction to the image is the matroid.
    pub fn extend_matroid(m: &FiniteMatroid, embedding: &HashMap<Label, IntVector>) -> Result<TropicalIdeal, IdealError> {
        if !m.is_paving() {
            return Err(IdealError::NotPaving);
        }
        if m.rank() < 2 {
            return Err(IdealError::RankTooSmall(m.rank()));
        }
        let d = m.rank() - 1;
        let mut image = Vec::with_capacity(m.len());
        let mut seen: HashMap<&IntVector, &Label> = HashMap::new();
        for l in m.ground() {
            let p = embedding.get(l).ok_or_else(|| IdealError::MissingImage(l.clone()))?;
            if let Some(prev) = seen.insert(p, l) {
                return Err(IdealError::NotInjective(prev.clone(), l.clone()));
            }
            image.push(p.clone());
        }
        let n = image.first().map(|p| p.dim()).unwrap_or(1);
        for p in &image {
            p.check_dim(n)?;
        }
        if !is_d_sparse(&image, d) {
            return Err(IdealError::NotSparse { d });
        }
        let blocks = m
            .hyperplanes()
            .into_iter()
            .filter(|h| h.len() > d)
            .map(|h| Block::finite(h.iter().map(|&i| image[i].clone()).collect()))
            .collect();
        TropicalIdeal::paving(GeneratorSet::new(n, d, blocks)?)
    }

    /// Extension of a matroid whose labels are already points.
    pub fn extend_point_matroid(m: &FiniteMatroid) -> Result<TropicalIdeal, IdealError> {
        let mut emb = HashMap::new();
        for l in m.ground() {
            match l {
                Label::Point(p) => {
                    emb.insert(l.clone(), p.clone());
                }
                Label::Token(_) => return Err(IdealError::MissingImage(l.clone())),
            }
        }
        Self::extend_matroid(m, &emb)
    }
}

/// `{(x, y) : x ∈ {0, 2, …, 2d−4}, y ∈ {0, 1}}`.
pub fn remark_block(d: usize) -> Vec<IntVector> {
    let mut out = Vec::new();
    for x in (0..=(2 * d as i64 - 4)).step_by(2) {
        for y in 0..2 {
            out.push(IntVector::from_i64s(&[x, y]));
        }
    }
    out
}

/// Facts about the remark example's block: `[(2,0)] + S == S`, and `S` is
/// not a coset of a subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemarkFacts {
    pub shift_fixes_block: bool,
    pub is_subgroup_coset: bool,
}

pub fn remark_facts(d: usize) -> Result<RemarkFacts, IdealError> {
    let l = IntegerLattice::from_rows(2, &[&[2 * d as i64 - 2, 0]])?;
    let q = l.quotient();
    let s = remark_block(d);
    Ok(RemarkFacts {
        shift_fixes_block: shift_fixes(&q, &s, &IntVector::from_i64s(&[2, 0]))?,
        is_subgroup_coset: is_subgroup_coset(&q, &s)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::non_pappus;

    fn sup(xs: &[i64]) -> Support {
        Support::univariate(xs).unwrap()
    }

    fn pts(xs: &[i64]) -> Vec<IntVector> {
        xs.iter().map(|&x| IntVector::from_i64s(&[x])).collect()
    }

    fn two_z() -> TropicalIdeal {
        TropicalIdeal::degree2_from_lattice(IntegerLattice::from_rows(1, &[&[2]]).unwrap()).unwrap()
    }

    #[test]
    fn lattice_ranks_and_membership() {
        let i = two_z();
        assert_eq!(i.rank_oracle(&[]).unwrap(), 0);
        assert_eq!(i.rank_oracle(&pts(&[0, 2])).unwrap(), 1);
        assert_eq!(i.rank_oracle(&pts(&[0, 1])).unwrap(), 2);
        assert!(i.contains(&Support::empty()).unwrap());
        assert!(i.contains(&sup(&[0, 2])).unwrap());
        assert!(!i.contains(&sup(&[0, 1, 2])).unwrap());
        assert!(i.contains(&sup(&[0, 1, 2, 3])).unwrap());
        assert_eq!(i.degree(), 2);
    }

    #[test]
    fn three_circuit_with_no_parallel_pair() {
        let l = IntegerLattice::from_rows(2, &[&[2, 0], &[0, 2]]).unwrap();
        let i = TropicalIdeal::degree2_from_lattice(l).unwrap();
        let s = Support::new(vec![IntVector::from_i64s(&[0, 0]), IntVector::from_i64s(&[1, 0]), IntVector::from_i64s(&[0, 1])])
            .unwrap();
        assert!(i.contains(&s).unwrap());
        assert!(i.is_circuit(&s).unwrap());
    }

    #[test]
    fn circuits_of_2z_on_small_window() {
        let i = two_z();
        let c = i.circuits_in_window(&Window::interval(0, 3).unwrap(), &Limits::default()).unwrap();
        assert_eq!(c, vec![sup(&[0, 2]), sup(&[1, 3])]);
        let m = i.restrict_matroid(&Window::interval(0, 5).unwrap(), &Limits::default()).unwrap();
        assert_eq!(m.rank(), 2);
        let (si, map) = m.simplification().unwrap();
        assert_eq!(si.len(), 2);
        assert_eq!(map.class_of, vec![0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn m_power_ranks_and_circuits() {
        let i = TropicalIdeal::m_s_ideal(2, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(i.degree(), 3);
        assert_eq!(i.rank_oracle(&pts(&[1, 2, 4])).unwrap(), 2);
        assert_eq!(i.rank_oracle(&pts(&[1, 2, 5])).unwrap(), 3);
        let small = TropicalIdeal::m_s_ideal(2, &[0, 1, 2, 3]).unwrap();
        let c = small.circuits_in_window(&Window::interval(0, 9).unwrap(), &Limits::default()).unwrap();
        assert!(c.contains(&sup(&[1, 2, 4])));
        assert!(c.contains(&sup(&[0, 5, 6, 9])));
        assert!(TropicalIdeal::m_s_ideal(2, &[0, 1]).is_ok());
        assert!(TropicalIdeal::m_s_ideal(2, &[3]).is_err());
    }

    #[test]
    fn uniform_circuits_are_all_large_sets() {
        let i = TropicalIdeal::uniform_ideal(1, 2).unwrap();
        let c = i.circuits_in_window(&Window::interval(0, 5).unwrap(), &Limits::default()).unwrap();
        assert_eq!(c.len(), 15);
        assert!(c.iter().all(|s| s.len() == 4));
        let check = i.verify_degree_on_window(&Window::interval(0, 4).unwrap(), &Limits::default()).unwrap();
        assert!(check.matches);
        assert_eq!(check.observed, 3);
    }

    #[test]
    fn lattice_and_paving_forms_agree() {
        let l = IntegerLattice::from_rows(2, &[&[2, 0], &[0, 2]]).unwrap();
        let a = TropicalIdeal::degree2_from_lattice(l.clone()).unwrap();
        let b = TropicalIdeal::lattice_as_paving(&l).unwrap();
        let w = Window::from_bounds(&[0, 0], &[2, 2]).unwrap();
        assert!(a.agrees_on(&b, &w, &Limits::default()).unwrap());
        assert_eq!(a.degree(), b.degree());
        assert_eq!(a.binomial_lattice(), b.binomial_lattice());
    }

    #[test]
    fn binomial_lattices() {
        assert!(TropicalIdeal::m_s_ideal(2, &[0, 1, 2]).unwrap().binomial_lattice().is_zero());
        let four = IntegerLattice::from_rows(1, &[&[4]]).unwrap();
        assert_eq!(TropicalIdeal::degree2_from_lattice(four.clone()).unwrap().binomial_lattice(), four);
        let r = TropicalIdeal::remark_example(3).unwrap();
        assert_eq!(r.binomial_lattice(), IntegerLattice::from_rows(2, &[&[4, 0]]).unwrap());
    }

    #[test]
    fn degree2_needs_a_proper_lattice() {
        assert!(matches!(TropicalIdeal::degree2_from_lattice(IntegerLattice::full(2)), Err(IdealError::NotProper(2))));
    }

    #[test]
    fn restrictions_of_the_trivariate_lattice() {
        let l = IntegerLattice::from_rows(3, &[&[4, 0, 0], &[0, 2, 0], &[0, 0, 2]]).unwrap();
        let i = TropicalIdeal::degree2_from_lattice(l.clone()).unwrap();
        let one = i.restrict_vars(&[0]).unwrap();
        assert_eq!(one, TropicalIdeal::degree2_from_lattice(IntegerLattice::from_rows(1, &[&[4]]).unwrap()).unwrap());
        let two = i.restrict_vars(&[1, 2]).unwrap();
        assert_eq!(two, TropicalIdeal::degree2_from_lattice(IntegerLattice::from_rows(2, &[&[2, 0], &[0, 2]]).unwrap()).unwrap());
        // the same through the 1-partition form
        let p = TropicalIdeal::lattice_as_paving(&l).unwrap().restrict_vars(&[0]).unwrap();
        assert_eq!(p, TropicalIdeal::lattice_as_paving(&IntegerLattice::from_rows(1, &[&[4]]).unwrap()).unwrap());
    }

    #[test]
    fn restriction_into_a_containing_block() {
        let line = IntegerLattice::from_rows(2, &[&[0, 1]]).unwrap();
        let i = TropicalIdeal::paving(GeneratorSet::new(2, 2, vec![Block::affine(line)]).unwrap()).unwrap();
        let r = i.restrict_vars(&[1]).unwrap();
        assert_eq!(r, TropicalIdeal::uniform_ideal(1, 1).unwrap());
        assert_eq!(r.degree(), 2);
        assert!(i.restrict_vars(&[]).is_err());
        assert!(i.restrict_vars(&[0, 1]).is_err());
    }

    #[test]
    fn restriction_of_finite_blocks() {
        // block {(0,0),(1,0),(3,0),(0,5)}: the axis-1 trace is {0,1,3}
        let b = vec![
            IntVector::from_i64s(&[0, 0]),
            IntVector::from_i64s(&[1, 0]),
            IntVector::from_i64s(&[3, 0]),
            IntVector::from_i64s(&[0, 5]),
        ];
        let i = TropicalIdeal::paving(GeneratorSet::new(2, 2, vec![Block::finite(b)]).unwrap()).unwrap();
        let r = i.restrict_vars(&[0]).unwrap();
        let want = TropicalIdeal::paving(GeneratorSet::new(1, 2, vec![Block::finite(pts(&[0, 1, 3]))]).unwrap()).unwrap();
        assert_eq!(r, want);
    }

    #[test]
    fn non_pappus_extension_round_trip() {
        let m = non_pappus();
        let emb: HashMap<Label, IntVector> =
            (1..=9).map(|k| (Label::token(k.to_string()), IntVector::from_i64s(&[1 << (k - 1)]))).collect();
        let i = TropicalIdeal::extend_matroid(&m, &emb).unwrap();
        assert_eq!(i.degree(), 3);
        let image: Vec<IntVector> = (0..9).map(|k| IntVector::from_i64s(&[1 << k])).collect();
        let back = i.restrict_to_points(&image, &Limits::default()).unwrap();
        let relabeled: Vec<Vec<Label>> = m
            .circuit_labels()
            .into_iter()
            .map(|c| c.iter().map(|l| Label::Point(emb[l].clone())).collect())
            .collect();
        let expected = FiniteMatroid::from_circuits(back.ground().to_vec(), &relabeled).unwrap();
        assert_eq!(back, expected);
    }

    #[test]
    fn extension_rejects_dense_images() {
        let m = non_pappus();
        let emb: HashMap<Label, IntVector> =
            (1..=9).map(|k| (Label::token(k.to_string()), IntVector::from_i64s(&[k - 1]))).collect();
        assert!(matches!(TropicalIdeal::extend_matroid(&m, &emb), Err(IdealError::NotSparse { d: 2 })));
    }

    #[test]
    fn remark_example_facts() {
        let facts = remark_facts(3).unwrap();
        assert!(facts.shift_fixes_block);
        assert!(!facts.is_subgroup_coset);
        let r = TropicalIdeal::remark_example(3).unwrap();
        assert_eq!(r.d(), 3);
        assert_eq!(r.degree(), 4);
        assert!(TropicalIdeal::remark_example(2).is_err());
    }

    #[test]
    fn window_limits() {
        let i = two_z();
        let tiny = Limits { max_window_points: 3, max_subsets: 10 };
        assert!(matches!(
            i.circuits_in_window(&Window::interval(0, 9).unwrap(), &tiny),
            Err(IdealError::Partition(PartitionError::WindowTooLarge { .. }))
        ));
    }

    #[test]
    fn signature_matches_full_list() {
        let i = TropicalIdeal::m_s_ideal(2, &[0, 1, 3]).unwrap();
        let w = pts(&(-4..=6).collect::<Vec<_>>());
        let sig = i.circuit_signature(&w, &Limits::default()).unwrap();
        let full = i.circuits_on(&w, &Limits::default()).unwrap();
        let small: Vec<Vec<IntVector>> = full.iter().filter(|c| c.len() == 3).map(|c| c.points().to_vec()).collect();
        assert_eq!(sig.small, small);
        assert!(sig.parallel.is_empty());
    }
}
