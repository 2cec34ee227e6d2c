//! Finite encodings of translation-invariant d-partitions.
//!
//! A generator set `A` lists orbit representatives of the non-default blocks.
//! The partition it stands for is every translate of every listed block,
//! together with the d-subsets lying in no such translate ("default" blocks).
//! Default blocks are never stored; they only show up as [`BlockHit::Default`].
//!
//! The engine works over an arbitrary quotient `Z^n / L`. The plain `Z^n`
//! types at the bottom of the module are the `L = {0}` case with their own
//! block vocabulary (finite sets and affine sublattices).

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::lattice::{AffineLattice, IntVector, IntegerLattice, LatticeError, QuotientGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("d must be positive")]
    ZeroD,
    #[error("block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("block {block} repeats the point {point:?}")]
    DuplicatePoint { block: usize, point: IntVector },
    #[error("coset block {block} does not contain the quotient lattice")]
    CosetBelowQuotient { block: usize },
    #[error("affine block {block} has a rank-0 lattice")]
    RankZeroAffine { block: usize },
    #[error("expected exactly {expected} points, got {found}")]
    WrongCardinality { expected: usize, found: usize },
    #[error("need at least {expected} points, got {found}")]
    TooFewPoints { expected: usize, found: usize },
    #[error("point {point:?} is repeated")]
    RepeatedPoint { point: IntVector },
    #[error("generator axioms fail: {0}")]
    Invalid(AxiomViolation),
    #[error("window has {points} points, limit is {limit}")]
    WindowTooLarge { points: BigInt, limit: usize },
    #[error("window bounds are inverted on axis {axis}")]
    EmptyWindow { axis: usize },
}

/// Which generator axiom failed, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom")]
pub enum AxiomViolation {
    /// A block is the whole group.
    A1 { block: usize },
    /// A block has fewer than d points.
    A2 { block: usize, size: usize },
    /// `|A1 ∩ (u + A2)| ≥ d` without `A1 == u + A2`. `overlap` lists up to d
    /// shared points.
    A3 { first: usize, second: usize, shift: IntVector, overlap: Vec<IntVector> },
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomViolation::A1 { block } => write!(f, "(A1) block {block} is the whole group"),
            AxiomViolation::A2 { block, size } => write!(f, "(A2) block {block} has only {size} points"),
            AxiomViolation::A3 { first, second, shift, overlap } => write!(
                f,
                "(A3) blocks {first} and {second} overlap in {overlap:?} under shift {shift:?} but differ"
            ),
        }
    }
}

/// `Valid`, or the first violation found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AxiomCheck {
    Valid,
    Violation(AxiomViolation),
}

impl AxiomCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, AxiomCheck::Valid)
    }
}

/// Result of locating the block of a d-set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BlockHit {
    /// The d-set lies in `shift + blocks[block]`.
    Listed { block: usize, shift: IntVector },
    /// No listed translate contains it; its block is the d-set itself.
    Default,
}

/// One translate of a listed block meeting a finite point set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BlockTrace {
    pub block: usize,
    pub shift: IntVector,
    /// Canonical classes of the translate that occur in the point set.
    pub classes: Vec<IntVector>,
    /// The points of the set lying in the translate.
    pub points: Vec<IntVector>,
}

/// Box of integer points `lo ≤ x ≤ hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    lo: IntVector,
    hi: IntVector,
}

impl Window {
    pub fn new(lo: IntVector, hi: IntVector) -> Result<Self, PartitionError> {
        lo.check_dim(hi.dim())?;
        for i in 0..lo.dim() {
            if lo.get(i) > hi.get(i) {
                return Err(PartitionError::EmptyWindow { axis: i });
            }
        }
        Ok(Window { lo, hi })
    }

    /// One-dimensional window `[lo, hi]`.
    pub fn interval(lo: i64, hi: i64) -> Result<Self, PartitionError> {
        Self::new(IntVector::from_i64s(&[lo]), IntVector::from_i64s(&[hi]))
    }

    pub fn from_bounds(lo: &[i64], hi: &[i64]) -> Result<Self, PartitionError> {
        Self::new(IntVector::from_i64s(lo), IntVector::from_i64s(hi))
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn lo(&self) -> &IntVector {
        &self.lo
    }

    pub fn hi(&self) -> &IntVector {
        &self.hi
    }

    pub fn point_count(&self) -> BigInt {
        (0..self.dim()).map(|i| self.hi.get(i) - self.lo.get(i) + 1).product()
    }

    /// All points in lexicographic order, provided there are at most `limit`.
    pub fn points(&self, limit: usize) -> Result<Vec<IntVector>, PartitionError> {
        let count = self.point_count();
        if count > BigInt::from(limit) {
            return Err(PartitionError::WindowTooLarge { points: count, limit });
        }
        let mut out = vec![Vec::<BigInt>::new()];
        for i in 0..self.dim() {
            let lo = self.lo.get(i);
            let len = (self.hi.get(i) - lo + 1u32).to_usize().unwrap_or(0);
            let mut next = Vec::with_capacity(out.len() * len);
            for p in &out {
                for k in 0..len {
                    let mut q = p.clone();
                    q.push(lo + k);
                    next.push(q);
                }
            }
            out = next;
        }
        Ok(out.into_iter().map(IntVector::new).collect())
    }
}

/// A listed block of a quotient generator set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuotientBlock {
    /// Canonical representatives, normalized to a fixed translate of the orbit.
    Finite(Vec<IntVector>),
    /// The subgroup `M / L` for an intermediate lattice `L ⊆ M ⊊ Z^n`.
    Coset(IntegerLattice),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGeneratorSet {
    quotient: QuotientGroup,
    d: usize,
    blocks: Vec<QuotientBlock>,
}

/// Among the translates `-p + B`, picks the lexicographically greatest sorted
/// class list. For `L = {0}` this puts the smallest point at the origin.
fn normalize_finite(q: &QuotientGroup, classes: &[IntVector]) -> Vec<IntVector> {
    let mut best: Option<Vec<IntVector>> = None;
    for p in classes {
        let mut t: Vec<IntVector> = classes.iter().map(|c| q.canonical_unchecked(&(c - p))).collect();
        t.sort();
        if best.as_ref().map_or(true, |b| t > *b) {
            best = Some(t);
        }
    }
    best.unwrap_or_default()
}

impl QuotientGeneratorSet {
    /// Canonicalizes every block: classes are reduced, finite blocks moved to
    /// their orbit representative, and the list sorted and deduplicated.
    pub fn new(quotient: QuotientGroup, d: usize, blocks: Vec<QuotientBlock>) -> Result<Self, PartitionError> {
        if d == 0 {
            return Err(PartitionError::ZeroD);
        }
        let n = quotient.ambient_dim();
        let mut out = Vec::with_capacity(blocks.len());
        for (i, b) in blocks.into_iter().enumerate() {
            match b {
                QuotientBlock::Finite(points) => {
                    if points.is_empty() {
                        return Err(PartitionError::EmptyBlock { block: i });
                    }
                    let mut seen = HashSet::new();
                    let mut classes = Vec::with_capacity(points.len());
                    for p in &points {
                        p.check_dim(n)?;
                        let c = quotient.canonical_unchecked(p);
                        if !seen.insert(c.clone()) {
                            return Err(PartitionError::DuplicatePoint { block: i, point: p.clone() });
                        }
                        classes.push(c);
                    }
                    out.push(QuotientBlock::Finite(normalize_finite(&quotient, &classes)));
                }
                QuotientBlock::Coset(m) => {
                    if m.ambient_dim() != n {
                        return Err(LatticeError::DimensionMismatch { expected: n, found: m.ambient_dim() }.into());
                    }
                    if !quotient.lattice().is_sublattice_of(&m)? {
                        return Err(PartitionError::CosetBelowQuotient { block: i });
                    }
                    out.push(QuotientBlock::Coset(m));
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(QuotientGeneratorSet { quotient, d, blocks: out })
    }

    pub fn quotient(&self) -> &QuotientGroup {
        &self.quotient
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[QuotientBlock] {
        &self.blocks
    }

    pub fn ambient_dim(&self) -> usize {
        self.quotient.ambient_dim()
    }

    /// Keeps the listed blocks only.
    pub fn sublist(&self, keep: &[usize]) -> QuotientGeneratorSet {
        let blocks = keep.iter().filter_map(|&i| self.blocks.get(i).cloned()).collect();
        QuotientGeneratorSet { quotient: self.quotient.clone(), d: self.d, blocks }
    }

    /// Checks (A1)–(A3), including each block against its own nonzero shifts.
    pub fn check_axioms(&self) -> AxiomCheck {
        let ctx = match Context::build(self) {
            Ok(c) => c,
            Err(v) => return AxiomCheck::Violation(v),
        };
        for i in 0..self.blocks.len() {
            for j in i..self.blocks.len() {
                if let Some(v) = ctx.check_pair(i, j) {
                    return AxiomCheck::Violation(v);
                }
            }
        }
        AxiomCheck::Valid
    }
}

/// Cached per-block lookup data.
#[derive(Debug, Clone)]
enum BlockData {
    Finite(HashSet<IntVector>),
    Coset { group: QuotientGroup, size: Option<BigInt> },
}

#[derive(Debug, Clone)]
struct Context<'a> {
    gens: &'a QuotientGeneratorSet,
    data: Vec<BlockData>,
}

/// `[M : L]` when finite. Uses `|T(Z^n/L)| = |T(Z^n/M)| · [M : L]` for equal ranks.
fn coset_size(l: &QuotientGroup, m: &IntegerLattice) -> Option<BigInt> {
    if m.rank() != l.lattice().rank() {
        return None;
    }
    let tl: BigInt = l.invariant_factors().iter().product();
    let tm: BigInt = m.quotient().invariant_factors().iter().product();
    Some(tl / tm)
}

impl<'a> Context<'a> {
    fn build(gens: &'a QuotientGeneratorSet) -> Result<Self, AxiomViolation> {
        let d = BigInt::from(gens.d);
        let group_order = gens.quotient.order();
        let mut data = Vec::with_capacity(gens.blocks.len());
        for (i, b) in gens.blocks.iter().enumerate() {
            match b {
                QuotientBlock::Finite(points) => {
                    if group_order.as_ref().is_some_and(|o| BigInt::from(points.len()) == *o) {
                        return Err(AxiomViolation::A1 { block: i });
                    }
                    if points.len() < gens.d {
                        return Err(AxiomViolation::A2 { block: i, size: points.len() });
                    }
                    data.push(BlockData::Finite(points.iter().cloned().collect()));
                }
                QuotientBlock::Coset(m) => {
                    if m.is_full() {
                        return Err(AxiomViolation::A1 { block: i });
                    }
                    let size = coset_size(&gens.quotient, m);
                    if let Some(s) = &size {
                        if *s < d {
                            return Err(AxiomViolation::A2 { block: i, size: s.to_usize().unwrap_or(0) });
                        }
                    }
                    data.push(BlockData::Coset { group: m.quotient(), size });
                }
            }
        }
        Ok(Context { gens, data })
    }

    fn q(&self) -> &QuotientGroup {
        &self.gens.quotient
    }

    fn check_pair(&self, i: usize, j: usize) -> Option<AxiomViolation> {
        let d = self.gens.d;
        match (&self.gens.blocks[i], &self.gens.blocks[j]) {
            (QuotientBlock::Finite(a1), QuotientBlock::Finite(a2)) => {
                let mut counts: BTreeMap<IntVector, usize> = BTreeMap::new();
                for a in a1 {
                    for b in a2 {
                        *counts.entry(self.q().canonical_unchecked(&(a - b))).or_default() += 1;
                    }
                }
                let BlockData::Finite(set1) = &self.data[i] else { unreachable!() };
                for (u, c) in counts {
                    if c < d {
                        continue;
                    }
                    let shifted: Vec<IntVector> = a2.iter().map(|b| self.q().canonical_unchecked(&(&u + b))).collect();
                    let equal = a1.len() == a2.len() && shifted.iter().all(|p| set1.contains(p));
                    if !equal {
                        let overlap = shifted.into_iter().filter(|p| set1.contains(p)).take(d).collect();
                        return Some(AxiomViolation::A3 { first: i, second: j, shift: u, overlap });
                    }
                }
                None
            }
            (QuotientBlock::Finite(f), QuotientBlock::Coset(_)) => self.finite_vs_coset(i, j, f, j, false),
            (QuotientBlock::Coset(_), QuotientBlock::Finite(f)) => self.finite_vs_coset(j, i, f, i, true),
            (QuotientBlock::Coset(m1), QuotientBlock::Coset(m2)) => {
                if m1 == m2 {
                    return None;
                }
                let meet = m1.intersect(m2).ok()?;
                let big_enough = if meet.rank() > self.q().lattice().rank() {
                    true
                } else {
                    coset_size(self.q(), &meet).is_some_and(|s| s >= BigInt::from(d))
                };
                if !big_enough {
                    return None;
                }
                // the cosets through the identity overlap in (M1 ∩ M2) / L
                let overlap = overlap_sample(self.q(), &meet, d);
                Some(AxiomViolation::A3 { first: i, second: j, shift: self.q().identity(), overlap })
            }
        }
    }

    /// Finite block `f` (index `fi`) against coset block `ci`. Reports in
    /// (first, second) order of the pair being checked.
    fn finite_vs_coset(
        &self,
        fi: usize,
        ci: usize,
        f: &[IntVector],
        _coset_index: usize,
        coset_first: bool,
    ) -> Option<AxiomViolation> {
        let d = self.gens.d;
        let BlockData::Coset { group, size } = &self.data[ci] else { unreachable!() };
        let mut groups: BTreeMap<IntVector, Vec<IntVector>> = BTreeMap::new();
        for p in f {
            groups.entry(group.canonical_unchecked(p)).or_default().push(p.clone());
        }
        for (rep, pts) in groups {
            if pts.len() < d {
                continue;
            }
            let equal = size.as_ref().is_some_and(|s| *s == BigInt::from(pts.len())) && pts.len() == f.len();
            if equal {
                continue;
            }
            let overlap: Vec<IntVector> = pts.into_iter().take(d).collect();
            let (first, second, shift) = if coset_first {
                // A1 = M/L, A2 = f: u + f meets M/L when u = -rep
                (ci, fi, self.q().canonical_unchecked(&-&rep))
            } else {
                (fi, ci, self.q().canonical_unchecked(&rep))
            };
            let overlap = if coset_first {
                overlap.iter().map(|p| self.q().canonical_unchecked(&(p + &shift))).collect()
            } else {
                overlap
            };
            return Some(AxiomViolation::A3 { first, second, shift, overlap });
        }
        None
    }
}

/// Up to `d` distinct classes of `meet / L`, for witness reporting.
fn overlap_sample(q: &QuotientGroup, meet: &IntegerLattice, d: usize) -> Vec<IntVector> {
    let mut out: Vec<IntVector> = vec![q.identity()];
    let mut frontier = vec![q.identity()];
    while out.len() < d && !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for b in meet.basis() {
                for c in [q.canonical_unchecked(&(p + b)), q.canonical_unchecked(&(p - b))] {
                    if !out.contains(&c) {
                        out.push(c.clone());
                        next.push(c);
                    }
                }
            }
        }
        frontier = next;
    }
    out.truncate(d);
    out
}

/// A quotient generator set that passed the axiom check, with lookup caches.
#[derive(Debug, Clone)]
pub struct QuotientInvariantPartition {
    gens: QuotientGeneratorSet,
    data: Vec<BlockData>,
}

impl PartialEq for QuotientInvariantPartition {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}
impl Eq for QuotientInvariantPartition {}

impl QuotientInvariantPartition {
    pub fn new(gens: QuotientGeneratorSet) -> Result<Self, PartitionError> {
        if let AxiomCheck::Violation(v) = gens.check_axioms() {
            return Err(PartitionError::Invalid(v));
        }
        let data = Context::build(&gens).map_err(PartitionError::Invalid)?.data;
        Ok(QuotientInvariantPartition { gens, data })
    }

    pub fn generators(&self) -> &QuotientGeneratorSet {
        &self.gens
    }

    pub fn quotient(&self) -> &QuotientGroup {
        &self.gens.quotient
    }

    pub fn d(&self) -> usize {
        self.gens.d
    }

    pub fn ambient_dim(&self) -> usize {
        self.gens.ambient_dim()
    }

    /// Reduces points to classes, rejecting repeated classes.
    pub fn classes_of(&self, points: &[IntVector]) -> Result<Vec<IntVector>, PartitionError> {
        let n = self.ambient_dim();
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(points.len());
        for p in points {
            p.check_dim(n)?;
            let c = self.quotient().canonical_unchecked(p);
            if !seen.insert(c.clone()) {
                return Err(PartitionError::RepeatedPoint { point: p.clone() });
            }
            out.push(c);
        }
        out.sort();
        Ok(out)
    }

    /// Locates the unique block containing a d-set of distinct classes.
    pub fn find_block(&self, points: &[IntVector]) -> Result<BlockHit, PartitionError> {
        if points.len() != self.d() {
            return Err(PartitionError::WrongCardinality { expected: self.d(), found: points.len() });
        }
        let classes = self.classes_of(points)?;
        Ok(self.find_block_classes(&classes))
    }

    /// `classes` must be sorted, distinct canonical classes; any length ≥ 1.
    /// Returns the first listed translate containing all of them.
    pub(crate) fn find_block_classes(&self, classes: &[IntVector]) -> BlockHit {
        let q = self.quotient();
        let anchor = &classes[0];
        for (bi, (block, data)) in self.gens.blocks.iter().zip(&self.data).enumerate() {
            match (block, data) {
                (QuotientBlock::Finite(points), BlockData::Finite(set)) => {
                    if points.len() < classes.len() {
                        continue;
                    }
                    for p in points {
                        let shift = q.canonical_unchecked(&(anchor - p));
                        if classes.iter().all(|c| set.contains(&q.canonical_unchecked(&(c - &shift)))) {
                            return BlockHit::Listed { block: bi, shift };
                        }
                    }
                }
                (QuotientBlock::Coset(_), BlockData::Coset { group, .. }) => {
                    let base = group.canonical_unchecked(anchor);
                    if classes.iter().all(|c| group.canonical_unchecked(c) == base) {
                        return BlockHit::Listed { block: bi, shift: base };
                    }
                }
                _ => unreachable!(),
            }
        }
        BlockHit::Default
    }

    /// The block translate containing all of `points` (at least d of them), if any.
    pub fn contains_in_block(&self, points: &[IntVector]) -> Result<Option<BlockHit>, PartitionError> {
        if points.len() < self.d() {
            return Err(PartitionError::TooFewPoints { expected: self.d(), found: points.len() });
        }
        let classes = self.classes_of(points)?;
        Ok(self.contains_in_block_classes(&classes))
    }

    pub(crate) fn contains_in_block_classes(&self, classes: &[IntVector]) -> Option<BlockHit> {
        let d = self.d();
        debug_assert!(classes.len() >= d);
        match self.find_block_classes(&classes[..d]) {
            BlockHit::Default => (classes.len() == d).then_some(BlockHit::Default),
            BlockHit::Listed { block, shift } => {
                let inside = classes[d..].iter().all(|c| self.translate_contains(block, &shift, c));
                inside.then_some(BlockHit::Listed { block, shift })
            }
        }
    }

    /// Whether `class` lies in `shift + blocks[block]`.
    pub fn translate_contains(&self, block: usize, shift: &IntVector, class: &IntVector) -> bool {
        let q = self.quotient();
        match &self.data[block] {
            BlockData::Finite(set) => set.contains(&q.canonical_unchecked(&(class - shift))),
            BlockData::Coset { group, .. } => group.canonical_unchecked(&(class - shift)).is_zero(),
        }
    }

    /// Whether two hits name the same translate.
    pub fn same_translate(&self, a: &BlockHit, b: &BlockHit) -> bool {
        match (a, b) {
            (BlockHit::Default, BlockHit::Default) => true,
            (BlockHit::Listed { block: i, shift: s }, BlockHit::Listed { block: j, shift: t }) => {
                if i != j {
                    return false;
                }
                match &self.data[*i] {
                    BlockData::Finite(_) => self.quotient().canonical_unchecked(&(s - t)).is_zero(),
                    BlockData::Coset { group, .. } => group.canonical_unchecked(&(s - t)).is_zero(),
                }
            }
            _ => false,
        }
    }

    /// Every translate of a listed block holding at least `min_classes` distinct
    /// classes of `points`, sorted by block and shift.
    pub fn blocks_meeting(&self, points: &[IntVector], min_classes: usize) -> Result<Vec<BlockTrace>, PartitionError> {
        let n = self.ambient_dim();
        let q = self.quotient();
        let mut by_class: BTreeMap<IntVector, Vec<IntVector>> = BTreeMap::new();
        for p in points {
            p.check_dim(n)?;
            by_class.entry(q.canonical_unchecked(p)).or_default().push(p.clone());
        }
        let min_classes = min_classes.max(1);
        let mut out = Vec::new();
        for (bi, (block, data)) in self.gens.blocks.iter().zip(&self.data).enumerate() {
            match (block, data) {
                (QuotientBlock::Finite(bpoints), BlockData::Finite(_)) => {
                    let mut shifts = BTreeSet::new();
                    for c in by_class.keys() {
                        for b in bpoints {
                            shifts.insert(q.canonical_unchecked(&(c - b)));
                        }
                    }
                    for shift in shifts {
                        let classes: Vec<IntVector> = bpoints
                            .iter()
                            .map(|b| q.canonical_unchecked(&(&shift + b)))
                            .filter(|c| by_class.contains_key(c))
                            .collect::<BTreeSet<_>>()
                            .into_iter()
                            .collect();
                        if classes.len() >= min_classes {
                            out.push(make_trace(bi, shift, classes, &by_class));
                        }
                    }
                }
                (QuotientBlock::Coset(_), BlockData::Coset { group, .. }) => {
                    let mut groups: BTreeMap<IntVector, Vec<IntVector>> = BTreeMap::new();
                    for c in by_class.keys() {
                        groups.entry(group.canonical_unchecked(c)).or_default().push(c.clone());
                    }
                    for (shift, classes) in groups {
                        if classes.len() >= min_classes {
                            out.push(make_trace(bi, shift, classes, &by_class));
                        }
                    }
                }
                _ => unreachable!(),
            }
        }
        Ok(out)
    }
}

fn make_trace(
    block: usize,
    shift: IntVector,
    classes: Vec<IntVector>,
    by_class: &BTreeMap<IntVector, Vec<IntVector>>,
) -> BlockTrace {
    let mut points: Vec<IntVector> = classes.iter().flat_map(|c| by_class[c].iter().cloned()).collect();
    points.sort();
    BlockTrace { block, shift, classes, points }
}

/// Whether `shift + classes == classes` in the quotient.
pub fn shift_fixes(q: &QuotientGroup, classes: &[IntVector], shift: &IntVector) -> Result<bool, PartitionError> {
    let set: HashSet<IntVector> = classes.iter().map(|c| q.canonical_rep(c)).collect::<Result<_, _>>()?;
    let mut moved = HashSet::with_capacity(set.len());
    for c in &set {
        moved.insert(q.canonical_rep(&(c + shift))?);
    }
    Ok(moved == set)
}

/// Whether a finite set of classes is a coset `[v] + K` of a subgroup `K`.
pub fn is_subgroup_coset(q: &QuotientGroup, classes: &[IntVector]) -> Result<bool, PartitionError> {
    let set: BTreeSet<IntVector> = classes.iter().map(|c| q.canonical_rep(c)).collect::<Result<_, _>>()?;
    let Some(base) = set.iter().next().cloned() else { return Ok(false) };
    let k: HashSet<IntVector> = set.iter().map(|c| q.canonical_unchecked(&(c - &base))).collect();
    for a in &k {
        for b in &k {
            if !k.contains(&q.canonical_unchecked(&(a - b))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff no nonzero translate of `points` meets it in `d` or more points.
/// Counts each nonzero difference over ordered pairs.
pub fn is_d_sparse(points: &[IntVector], d: usize) -> bool {
    let mut counts: HashMap<IntVector, usize> = HashMap::new();
    for a in points {
        for b in points {
            if a == b {
                continue;
            }
            let c = counts.entry(a - b).or_default();
            *c += 1;
            if *c >= d {
                return false;
            }
        }
    }
    d > 0 || points.len() <= 1
}

/// Smallest `k` with `m^k (m - 1) > diameter`: truncating an exponent set at
/// `k` leaves every in-window answer of the `m^S` family unchanged, since
/// powers at or beyond `k` are further than `diameter` from all smaller ones.
pub fn m_power_truncation_index(m: u32, diameter: &BigInt) -> u32 {
    assert!(m >= 2, "base must be at least 2");
    let m_big = BigInt::from(m);
    let mut power = BigInt::from(1);
    let mut k = 0;
    while &power * (&m_big - 1) <= *diameter {
        power *= &m_big;
        k += 1;
    }
    k
}

// ---------------------------------------------------------------------------
// Z^n vocabulary

/// A listed block of a `Z^n`-invariant partition, stored as an orbit representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    /// Sorted points, translated so the smallest is the origin.
    Finite(Vec<IntVector>),
    /// An affine sublattice of rank ≥ 1; the orbit representative has offset zero.
    Affine(AffineLattice),
}

impl Block {
    pub fn finite(points: Vec<IntVector>) -> Block {
        Block::Finite(points)
    }

    pub fn affine(lattice: IntegerLattice) -> Block {
        let n = lattice.ambient_dim();
        Block::Affine(AffineLattice::new(IntVector::zeros(n), lattice).expect("zero offset has the right dimension"))
    }

    /// Points of a finite block.
    pub fn points(&self) -> Option<&[IntVector]> {
        match self {
            Block::Finite(p) => Some(p),
            Block::Affine(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    n: usize,
    d: usize,
    blocks: Vec<Block>,
    inner: QuotientGeneratorSet,
}

impl GeneratorSet {
    pub fn new(n: usize, d: usize, blocks: Vec<Block>) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(LatticeError::ZeroDimension.into());
        }
        let mut qblocks = Vec::with_capacity(blocks.len());
        for (i, b) in blocks.into_iter().enumerate() {
            match b {
                Block::Finite(points) => qblocks.push(QuotientBlock::Finite(points)),
                Block::Affine(a) => {
                    if a.lattice().ambient_dim() != n {
                        return Err(
                            LatticeError::DimensionMismatch { expected: n, found: a.lattice().ambient_dim() }.into()
                        );
                    }
                    if a.lattice().is_zero() {
                        return Err(PartitionError::RankZeroAffine { block: i });
                    }
                    qblocks.push(QuotientBlock::Coset(a.lattice().clone()));
                }
            }
        }
        let inner = QuotientGeneratorSet::new(IntegerLattice::zero(n).quotient(), d, qblocks)?;
        let blocks = inner.blocks.iter().map(to_block).collect();
        Ok(GeneratorSet { n, d, blocks, inner })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn check_axioms(&self) -> AxiomCheck {
        self.inner.check_axioms()
    }

    pub fn sublist(&self, keep: &[usize]) -> GeneratorSet {
        let inner = self.inner.sublist(keep);
        let blocks = inner.blocks.iter().map(to_block).collect();
        GeneratorSet { n: self.n, d: self.d, blocks, inner }
    }

    pub fn as_quotient(&self) -> &QuotientGeneratorSet {
        &self.inner
    }
}

fn to_block(b: &QuotientBlock) -> Block {
    match b {
        QuotientBlock::Finite(p) => Block::Finite(p.clone()),
        QuotientBlock::Coset(m) => Block::affine(m.clone()),
    }
}

pub fn check_generator_axioms(gens: &GeneratorSet) -> AxiomCheck {
    gens.check_axioms()
}

/// The partition `P_d(A)` of `Z^n` generated by a valid generator set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantPartition {
    gens: GeneratorSet,
    inner: QuotientInvariantPartition,
}

impl InvariantPartition {
    pub fn new(gens: GeneratorSet) -> Result<Self, PartitionError> {
        let inner = QuotientInvariantPartition::new(gens.inner.clone())?;
        Ok(InvariantPartition { gens, inner })
    }

    /// The partition with no listed blocks: every d-subset is its own block.
    pub fn uniform(n: usize, d: usize) -> Result<Self, PartitionError> {
        Self::new(GeneratorSet::new(n, d, Vec::new())?)
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn d(&self) -> usize {
        self.gens.d
    }

    pub fn ambient_dim(&self) -> usize {
        self.gens.n
    }

    pub fn as_quotient(&self) -> &QuotientInvariantPartition {
        &self.inner
    }

    pub fn find_block(&self, points: &[IntVector]) -> Result<BlockHit, PartitionError> {
        self.inner.find_block(points)
    }

    pub fn contains_in_block(&self, points: &[IntVector]) -> Result<Option<BlockHit>, PartitionError> {
        self.inner.contains_in_block(points)
    }

    pub fn same_translate(&self, a: &BlockHit, b: &BlockHit) -> bool {
        self.inner.same_translate(a, b)
    }

    /// Translates `u + block` with `|(u + block) ∩ W| ≥ min_points`.
    pub fn blocks_meeting_window(
        &self,
        window: &Window,
        min_points: usize,
        limit: usize,
    ) -> Result<Vec<BlockTrace>, PartitionError> {
        let points = window.points(limit)?;
        self.inner.blocks_meeting(&points, min_points)
    }

    pub fn blocks_meeting(&self, points: &[IntVector], min_points: usize) -> Result<Vec<BlockTrace>, PartitionError> {
        self.inner.blocks_meeting(points, min_points)
    }
}
