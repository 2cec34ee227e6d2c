//! Explicit matroids on finite labeled ground sets.
//!
//! Circuits are the stored representation. Everything else (rank, closure,
//! hyperplanes, simplification) is derived from them. The `verify_*`
//! functions are brute-force checkers meant to be used as oracles, so they
//! do not rely on any of the derived data.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::lattice::IntVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatroidError {
    #[error("label {0} appears twice in the ground set")]
    DuplicateLabel(Label),
    #[error("unknown label {0}")]
    UnknownLabel(Label),
    #[error("index {index} is outside a ground set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("empty circuit")]
    EmptyCircuit,
    #[error("element {0} is a loop")]
    Loop(Label),
    #[error("not a valid hyperplane family: {0}")]
    InvalidHyperplanes(String),
    #[error("ground set of size {size} is too large for {what} (limit {limit})")]
    TooLarge { what: &'static str, size: usize, limit: usize },
}

/// Ground set label: an exponent vector or an opaque token.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Label {
    Point(IntVector),
    Token(String),
}

impl Label {
    pub fn token(s: impl Into<String>) -> Label {
        Label::Token(s.into())
    }

    pub fn as_point(&self) -> Option<&IntVector> {
        match self {
            Label::Point(p) => Some(p),
            Label::Token(_) => None,
        }
    }
}

impl From<IntVector> for Label {
    fn from(p: IntVector) -> Self {
        Label::Point(p)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Point(p) => write!(f, "{p:?}"),
            Label::Token(s) => f.write_str(s),
        }
    }
}

/// Outcome of an axiom check. `failures` is capped; `total_failures` is not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub failures: Vec<AxiomFailure>,
    pub total_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub detail: String,
    /// Witness sets as ground indices.
    pub witness: Vec<Vec<usize>>,
}

const MAX_REPORTED: usize = 16;

impl AxiomReport {
    pub fn pass() -> Self {
        AxiomReport { passed: true, failures: Vec::new(), total_failures: 0 }
    }

    pub fn fail(&mut self, axiom: &str, detail: impl Into<String>, witness: Vec<Vec<usize>>) {
        self.passed = false;
        self.total_failures += 1;
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(AxiomFailure { axiom: axiom.to_string(), detail: detail.into(), witness });
        }
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.passed &= other.passed;
        self.total_failures += other.total_failures;
        for f in other.failures {
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(f);
            }
        }
    }
}

/// Fixed-width bit set over ground indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(size: usize) -> Self {
        Bits(vec![0; size.div_ceil(64).max(1)])
    }

    fn from_indices(size: usize, xs: &[usize]) -> Self {
        let mut b = Bits::new(size);
        for &x in xs {
            b.insert(x);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn union(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn intersect(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.0.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let t = w.trailing_zeros() as usize;
                out.push(wi * 64 + t);
                w &= w - 1;
            }
        }
        out
    }
}

fn check_indices(size: usize, sets: &[Vec<usize>]) -> Result<(), MatroidError> {
    for s in sets {
        for &i in s {
            if i >= size {
                return Err(MatroidError::IndexOutOfRange { index: i, size });
            }
        }
    }
    Ok(())
}

fn normalize_sets(sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = sets
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMatroid {
    ground: Vec<Label>,
    rank: usize,
    circuits: Vec<Vec<usize>>,
    by_element: Vec<Vec<usize>>,
}

/// Parallel classes of a loopless matroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMap {
    /// Class members, each sorted; classes ordered by their smallest member.
    pub classes: Vec<Vec<Label>>,
    /// For each ground index of the original matroid, its class index.
    pub class_of: Vec<usize>,
}

impl FiniteMatroid {
    /// Builds a matroid from its circuits, given as index sets into `ground`.
    /// The ground set is sorted and indices remapped. Circuit axioms are not
    /// checked here; see [`verify_circuit_axioms`].
    pub fn from_index_circuits(ground: Vec<Label>, circuits: Vec<Vec<usize>>) -> Result<Self, MatroidError> {
        check_indices(ground.len(), &circuits)?;
        if circuits.iter().any(|c| c.is_empty()) {
            return Err(MatroidError::EmptyCircuit);
        }
        let mut order: Vec<usize> = (0..ground.len()).collect();
        order.sort_by(|&a, &b| ground[a].cmp(&ground[b]));
        for w in order.windows(2) {
            if ground[w[0]] == ground[w[1]] {
                return Err(MatroidError::DuplicateLabel(ground[w[0]].clone()));
            }
        }
        let mut new_index = vec![0; ground.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let sorted_ground: Vec<Label> = order.iter().map(|&i| ground[i].clone()).collect();
        let circuits = normalize_sets(circuits.into_iter().map(|c| c.into_iter().map(|i| new_index[i]).collect()).collect());
        Ok(Self::assemble(sorted_ground, circuits))
    }

    /// Builds a matroid from circuits given by label.
    pub fn from_circuits(ground: Vec<Label>, circuits: &[Vec<Label>]) -> Result<Self, MatroidError> {
        let index: HashMap<&Label, usize> = ground.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut idx = Vec::with_capacity(circuits.len());
        for c in circuits {
            let mut v = Vec::with_capacity(c.len());
            for l in c {
                v.push(*index.get(l).ok_or_else(|| MatroidError::UnknownLabel(l.clone()))?);
            }
            idx.push(v);
        }
        Self::from_index_circuits(ground, idx)
    }

    /// `ground` sorted and distinct, circuits normalized.
    fn assemble(ground: Vec<Label>, circuits: Vec<Vec<usize>>) -> Self {
        let mut by_element = vec![Vec::new(); ground.len()];
        for (ci, c) in circuits.iter().enumerate() {
            for &e in c {
                by_element[e].push(ci);
            }
        }
        let mut m = FiniteMatroid { ground, rank: 0, circuits, by_element };
        let all: Vec<usize> = (0..m.ground.len()).collect();
        m.rank = m.rank_of_indices(&all);
        m
    }

    /// The uniform matroid `U_{r,E}`: circuits are all (r+1)-subsets.
    pub fn uniform(rank: usize, ground: Vec<Label>) -> Result<Self, MatroidError> {
        let n = ground.len();
        let circuits = if rank < n { (0..n).combinations(rank + 1).collect() } else { Vec::new() };
        Self::from_index_circuits(ground, circuits)
    }

    pub fn ground(&self) -> &[Label] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Circuits as sorted index sets, in sorted order.
    pub fn circuits(&self) -> &[Vec<usize>] {
        &self.circuits
    }

    pub fn circuit_labels(&self) -> Vec<Vec<Label>> {
        self.circuits.iter().map(|c| self.labels(c)).collect()
    }

    pub fn labels(&self, indices: &[usize]) -> Vec<Label> {
        indices.iter().map(|&i| self.ground[i].clone()).collect()
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.ground.binary_search(label).ok()
    }

    pub fn indices_of(&self, labels: &[Label]) -> Result<Vec<usize>, MatroidError> {
        labels
            .iter()
            .map(|l| self.index_of(l).ok_or_else(|| MatroidError::UnknownLabel(l.clone())))
            .collect()
    }

    pub fn rank_of(&self, labels: &[Label]) -> Result<usize, MatroidError> {
        Ok(self.rank_of_indices(&self.indices_of(labels)?))
    }

    /// Greedy: add elements one at a time unless they close a circuit.
    pub fn rank_of_indices(&self, xs: &[usize]) -> usize {
        let mut inside = vec![false; self.ground.len()];
        let mut r = 0;
        for &e in xs {
            if inside[e] {
                continue;
            }
            let closes = self.by_element[e]
                .iter()
                .any(|&ci| self.circuits[ci].iter().all(|&x| x == e || inside[x]));
            if !closes {
                inside[e] = true;
                r += 1;
            }
        }
        r
    }

    pub fn is_independent(&self, xs: &[usize]) -> bool {
        let distinct: BTreeSet<usize> = xs.iter().copied().collect();
        self.rank_of_indices(xs) == distinct.len()
    }

    /// Elements whose addition does not raise the rank.
    pub fn closure(&self, xs: &[usize]) -> Vec<usize> {
        let r = self.rank_of_indices(xs);
        let mut with = xs.to_vec();
        let mut out = Vec::new();
        for e in 0..self.ground.len() {
            with.push(e);
            if self.rank_of_indices(&with) == r {
                out.push(e);
            }
            with.pop();
        }
        out
    }

    /// Hyperplanes (maximal sets of rank r − 1), sorted.
    pub fn hyperplanes(&self) -> Vec<Vec<usize>> {
        if self.rank == 0 {
            return Vec::new();
        }
        let n = self.ground.len();
        let mut found: Vec<Bits> = Vec::new();
        let mut out = BTreeSet::new();
        for xs in (0..n).combinations(self.rank - 1) {
            let bits = Bits::from_indices(n, &xs);
            if found.iter().any(|h| bits.is_subset(h)) || !self.is_independent(&xs) {
                continue;
            }
            let h = self.closure(&xs);
            found.push(Bits::from_indices(n, &h));
            out.insert(h);
        }
        out.into_iter().collect()
    }

    pub fn hyperplane_labels(&self) -> Vec<Vec<Label>> {
        self.hyperplanes().iter().map(|h| self.labels(h)).collect()
    }

    /// Every circuit has size rank or rank + 1.
    pub fn is_paving(&self) -> bool {
        self.circuits.iter().all(|c| c.len() >= self.rank)
    }

    pub fn restrict(&self, labels: &[Label]) -> Result<FiniteMatroid, MatroidError> {
        let idx = self.indices_of(labels)?;
        Ok(self.restrict_indices(&idx))
    }

    /// Restriction to a subset: the circuits lying inside it.
    pub fn restrict_indices(&self, xs: &[usize]) -> FiniteMatroid {
        let keep: BTreeSet<usize> = xs.iter().copied().collect();
        let mut new_index = vec![usize::MAX; self.ground.len()];
        for (new, &old) in keep.iter().enumerate() {
            new_index[old] = new;
        }
        let ground = keep.iter().map(|&i| self.ground[i].clone()).collect();
        let circuits = self
            .circuits
            .iter()
            .filter(|c| c.iter().all(|e| keep.contains(e)))
            .map(|c| c.iter().map(|&e| new_index[e]).collect())
            .collect();
        Self::assemble(ground, circuits)
    }

    /// Loops, as indices.
    pub fn loops(&self) -> Vec<usize> {
        self.circuits.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect()
    }

    /// `si(M)`: the matroid on parallel classes, labeled by each class's
    /// smallest member.
    pub fn simplification(&self) -> Result<(FiniteMatroid, ClassMap), MatroidError> {
        if let Some(&l) = self.loops().first() {
            return Err(MatroidError::Loop(self.ground[l].clone()));
        }
        let n = self.ground.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for c in self.circuits.iter().filter(|c| c.len() == 2) {
            let (a, b) = (find(&mut parent, c[0]), find(&mut parent, c[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
        let reps: Vec<usize> = (0..n).filter(|&x| roots[x] == x).collect();
        let rep_pos: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut classes = vec![Vec::new(); reps.len()];
        let class_of: Vec<usize> = (0..n).map(|x| rep_pos[&roots[x]]).collect();
        for x in 0..n {
            classes[class_of[x]].push(self.ground[x].clone());
        }
        Ok((self.restrict_indices(&reps), ClassMap { classes, class_of }))
    }
}

impl fmt::Display for FiniteMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "matroid of rank {} on {} elements, {} circuits", self.rank, self.len(), self.circuits.len())
    }
}

/// Circuits of the paving matroid of rank d + 1 whose hyperplanes are the
/// given d-partition: (d+1)-subsets of a block and (d+2)-subsets containing
/// no such (d+1)-subset.
pub fn paving_circuits(size: usize, d: usize, blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut small: HashSet<Vec<usize>> = HashSet::new();
    for b in blocks {
        let mut b = b.clone();
        b.sort_unstable();
        if b.len() > d {
            small.extend(b.iter().copied().combinations(d + 1));
        }
    }
    let mut out: Vec<Vec<usize>> = small.iter().cloned().collect();
    for s in (0..size).combinations(d + 2) {
        let free = (0..s.len()).all(|skip| {
            let sub: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
            !small.contains(&sub)
        });
        if free {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Rebuilds a matroid from its hyperplanes. A d-partition goes through the
/// paving construction; anything else through cocircuits, for grounds of at
/// most 20 elements.
pub fn matroid_from_hyperplanes(ground: Vec<Label>, hyperplanes: &[Vec<usize>]) -> Result<FiniteMatroid, MatroidError> {
    let n = ground.len();
    check_indices(n, hyperplanes)?;
    let hyperplanes = normalize_sets(hyperplanes.to_vec());
    let report = verify_hyperplane_axioms(n, &hyperplanes);
    if !report.passed {
        let why = report.failures.first().map(|f| format!("({}) {}", f.axiom, f.detail)).unwrap_or_default();
        return Err(MatroidError::InvalidHyperplanes(why));
    }
    if let Some(d) = hyperplanes.iter().map(|h| h.len()).min() {
        if d >= 1 && n > d && verify_d_partition(n, &hyperplanes, d).passed {
            return FiniteMatroid::from_index_circuits(ground, paving_circuits(n, d, &hyperplanes));
        }
    }
    const LIMIT: usize = 20;
    if n > LIMIT {
        return Err(MatroidError::TooLarge { what: "non-paving hyperplane reconstruction", size: n, limit: LIMIT });
    }
    // circuits are the minimal nonempty sets meeting no cocircuit in exactly one element
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let cocircuits: Vec<u32> = hyperplanes
        .iter()
        .map(|h| full & !h.iter().fold(0u32, |m, &i| m | 1 << i))
        .collect();
    let mut masks: Vec<u32> = (1..=full).filter(|&m| cocircuits.iter().all(|&c| (m & c).count_ones() != 1)).collect();
    masks.sort_by_key(|m| m.count_ones());
    let mut minimal: Vec<u32> = Vec::new();
    for m in masks {
        if !minimal.iter().any(|&c| c & m == c) {
            minimal.push(m);
        }
    }
    let circuits = minimal.iter().map(|&m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect();
    FiniteMatroid::from_index_circuits(ground, circuits)
}

/// Grounds up to this size are checked through a table over all subsets.
pub const TABLE_LIMIT: usize = 24;

/// `dep[mask]`: whether `mask` contains one of the circuit masks.
pub fn dependent_table(size: usize, circuit_masks: &[u32]) -> Vec<bool> {
    assert!(size <= TABLE_LIMIT);
    let mut dep = vec![false; 1 << size];
    for &c in circuit_masks {
        dep[c as usize] = true;
    }
    for m in 0..dep.len() {
        if !dep[m] {
            let mut rest = m;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                if dep[m ^ bit] {
                    dep[m] = true;
                    break;
                }
                rest ^= bit;
            }
        }
    }
    dep
}

/// Checks (C0) nonempty, (C1) incomparable and (C2) circuit elimination
/// exhaustively over all pairs.
pub fn verify_circuit_axioms(size: usize, circuits: &[Vec<usize>]) -> AxiomReport {
    let mut report = AxiomReport::pass();
    if let Err(e) = check_indices(size, circuits) {
        report.fail("C0", e.to_string(), Vec::new());
        return report;
    }
    for c in circuits.iter().filter(|c| c.is_empty()) {
        report.fail("C0", "empty circuit", vec![c.clone()]);
    }
    if size <= TABLE_LIMIT {
        verify_circuits_by_table(size, circuits, &mut report);
        return report;
    }
    let bits: Vec<Bits> = circuits.iter().map(|c| Bits::from_indices(size, c)).collect();
    for i in 0..bits.len() {
        for j in 0..bits.len() {
            if i != j && bits[i].is_subset(&bits[j]) && (i < j || bits[i] != bits[j]) {
                report.fail("C1", "circuit contained in another", vec![circuits[i].clone(), circuits[j].clone()]);
            }
        }
    }
    for i in 0..bits.len() {
        for j in i + 1..bits.len() {
            let shared = bits[i].intersect(&bits[j]);
            if shared.count() == 0 || bits[i] == bits[j] {
                continue;
            }
            let union = bits[i].union(&bits[j]);
            for e in shared.indices() {
                let mut target = union.clone();
                target.remove(e);
                if !bits.iter().any(|c| c.is_subset(&target)) {
                    report.fail(
                        "C2",
                        format!("no circuit inside the union without element {e}"),
                        vec![circuits[i].clone(), circuits[j].clone()],
                    );
                }
            }
        }
    }
    report
}

fn verify_circuits_by_table(size: usize, circuits: &[Vec<usize>], report: &mut AxiomReport) {
    let masks: Vec<u32> = circuits.iter().map(|c| c.iter().fold(0u32, |m, &i| m | 1 << i)).collect();
    let dep = dependent_table(size, &masks);
    let mut seen = HashSet::new();
    for (c, &m) in circuits.iter().zip(&masks) {
        if !seen.insert(m) {
            report.fail("C1", "circuit listed twice", vec![c.clone()]);
            continue;
        }
        let mut rest = m;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if m != 0 && dep[(m ^ bit) as usize] {
                report.fail("C1", "circuit contains a smaller circuit", vec![c.clone()]);
                break;
            }
            rest ^= bit;
        }
    }
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            let (a, b) = (masks[i], masks[j]);
            let mut shared = a & b;
            if a == b {
                continue;
            }
            while shared != 0 {
                let e = shared & shared.wrapping_neg();
                shared ^= e;
                if !dep[((a | b) & !e) as usize] {
                    report.fail(
                        "C2",
                        format!("no circuit inside the union without element {}", e.trailing_zeros()),
                        vec![circuits[i].clone(), circuits[j].clone()],
                    );
                }
            }
        }
    }
}

/// Checks (H1)–(H3) exhaustively; (HF) is vacuous on finite grounds.
pub fn verify_hyperplane_axioms(size: usize, hyperplanes: &[Vec<usize>]) -> AxiomReport {
    let mut report = AxiomReport::pass();
    if let Err(e) = check_indices(size, hyperplanes) {
        report.fail("H1", e.to_string(), Vec::new());
        return report;
    }
    let bits: Vec<Bits> = hyperplanes.iter().map(|h| Bits::from_indices(size, h)).collect();
    for (h, b) in hyperplanes.iter().zip(&bits) {
        if b.count() == size {
            report.fail("H1", "the ground set is listed as a hyperplane", vec![h.clone()]);
        }
    }
    for i in 0..bits.len() {
        for j in i + 1..bits.len() {
            if bits[i].is_subset(&bits[j]) || bits[j].is_subset(&bits[i]) {
                report.fail("H2", "comparable hyperplanes", vec![hyperplanes[i].clone(), hyperplanes[j].clone()]);
            }
        }
    }
    for i in 0..bits.len() {
        for j in i + 1..bits.len() {
            if bits[i] == bits[j] {
                continue;
            }
            let meet = bits[i].intersect(&bits[j]);
            for x in 0..size {
                let mut want = meet.clone();
                want.insert(x);
                if !bits.iter().any(|h| want.is_subset(h)) {
                    report.fail(
                        "H3",
                        format!("no hyperplane contains the intersection together with {x}"),
                        vec![hyperplanes[i].clone(), hyperplanes[j].clone(), want.indices()],
                    );
                }
            }
        }
    }
    report
}

/// Checks (P1)–(P3) exhaustively over all d-subsets of the ground.
pub fn verify_d_partition(size: usize, blocks: &[Vec<usize>], d: usize) -> AxiomReport {
    let mut report = AxiomReport::pass();
    if let Err(e) = check_indices(size, blocks) {
        report.fail("P2", e.to_string(), Vec::new());
        return report;
    }
    if d == 0 || size < d + 1 {
        report.fail("P0", format!("a {d}-partition needs at least {} elements, ground has {size}", d + 1), Vec::new());
        return report;
    }
    if blocks.len() < 2 {
        report.fail("P1", format!("only {} block(s)", blocks.len()), blocks.to_vec());
    }
    let mut counts: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (bi, b) in blocks.iter().enumerate() {
        let mut sorted = b.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() < d {
            report.fail("P2", format!("block of size {} < {d}", sorted.len()), vec![b.clone()]);
            continue;
        }
        for s in sorted.into_iter().combinations(d) {
            counts.entry(s).or_default().push(bi);
        }
    }
    for s in (0..size).combinations(d) {
        match counts.get(&s).map(|v| v.len()).unwrap_or(0) {
            1 => {}
            0 => report.fail("P3", "d-subset lies in no block", vec![s]),
            _ => {
                let mut w = vec![s.clone()];
                w.extend(counts[&s].iter().map(|&bi| blocks[bi].clone()));
                report.fail("P3", "d-subset lies in several blocks", w);
            }
        }
    }
    report
}

/// The eight 3-point lines of the non-Pappus configuration on tokens 1..9.
pub const NON_PAPPUS_LINES: [[u8; 3]; 8] =
    [[1, 2, 3], [1, 5, 7], [1, 6, 8], [2, 4, 7], [2, 6, 9], [3, 4, 8], [3, 5, 9], [4, 5, 6]];

/// Rank-3 paving matroid whose nontrivial lines are [`NON_PAPPUS_LINES`].
pub fn non_pappus() -> FiniteMatroid {
    let ground: Vec<Label> = (1..=9).map(|i| Label::token(i.to_string())).collect();
    let lines: Vec<Vec<usize>> = NON_PAPPUS_LINES.iter().map(|l| l.iter().map(|&x| x as usize - 1).collect()).collect();
    let mut blocks = lines.clone();
    for pair in (0..9usize).combinations(2) {
        if !lines.iter().any(|l| pair.iter().all(|x| l.contains(x))) {
            blocks.push(pair);
        }
    }
    let report = verify_d_partition(9, &blocks, 2);
    assert!(report.passed, "shipped non-Pappus data is not a 2-partition: {report:?}");
    FiniteMatroid::from_index_circuits(ground, paving_circuits(9, 2, &blocks)).expect("indices are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tokens(n: usize) -> Vec<Label> {
        (0..n).map(|i| Label::token(format!("e{i:02}"))).collect()
    }

    fn t(s: &str) -> Label {
        Label::token(s)
    }

    /// Rank by brute force: largest subset containing no circuit.
    fn brute_rank(m: &FiniteMatroid, xs: &[usize]) -> usize {
        let mut best = 0;
        for k in 0..=xs.len() {
            for sub in xs.iter().copied().combinations(k) {
                if !m.circuits().iter().any(|c| c.iter().all(|e| sub.contains(e))) {
                    best = k;
                }
            }
        }
        best
    }

    #[test]
    fn empty_set_has_rank_zero() {
        let m = non_pappus();
        assert_eq!(m.rank_of(&[]).unwrap(), 0);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn non_pappus_structure() {
        let m = non_pappus();
        assert!(m.is_paving());
        assert_eq!(m.rank_of(&[t("1"), t("2"), t("3")]).unwrap(), 2);
        assert_eq!(m.rank_of(&[t("7"), t("8"), t("9")]).unwrap(), 3);
        let lines: Vec<_> = m.circuits().iter().filter(|c| c.len() == 3).collect();
        assert_eq!(lines.len(), 8);
        for (a, b) in lines.iter().tuple_combinations() {
            assert!(a.iter().filter(|x| b.contains(x)).count() <= 1);
        }
        // 126 four-sets, 48 of them contain a line
        assert_eq!(m.circuits().len(), 8 + 78);
        assert!(verify_circuit_axioms(9, m.circuits()).passed);
        let h = m.hyperplanes();
        assert!(verify_hyperplane_axioms(9, &h).passed);
        assert!(verify_d_partition(9, &h, 2).passed);
        assert_eq!(h.len(), 8 + 12);
    }

    #[test]
    fn uniform_ranks() {
        let m = FiniteMatroid::uniform(3, tokens(6)).unwrap();
        for k in 0..=6 {
            for s in (0..6).combinations(k) {
                assert_eq!(m.rank_of_indices(&s), k.min(3));
            }
        }
        assert!(m.is_paving());
        let u24 = FiniteMatroid::uniform(2, tokens(4)).unwrap();
        assert!(u24.is_paving());
    }

    #[test]
    fn small_circuit_breaks_paving() {
        let m = FiniteMatroid::from_index_circuits(tokens(5), vec![vec![0, 1], vec![2, 3, 4, 0]]).unwrap();
        assert_eq!(m.rank(), 3);
        assert!(!m.is_paving());
    }

    #[test]
    fn circuit_axiom_examples() {
        assert!(verify_circuit_axioms(2, &[vec![0, 1]]).passed);
        let r = verify_circuit_axioms(3, &[vec![0, 1, 2], vec![0, 1]]);
        assert!(!r.passed);
        assert_eq!(r.failures[0].axiom, "C1");
        // {0,1} and {1,2} need a circuit inside {0,2}
        let r = verify_circuit_axioms(3, &[vec![0, 1], vec![1, 2]]);
        assert_eq!(r.failures[0].axiom, "C2");
    }

    #[test]
    fn hyperplane_axiom_examples() {
        assert!(verify_hyperplane_axioms(3, &[vec![0], vec![1], vec![2]]).passed);
        let r = verify_hyperplane_axioms(4, &[vec![0, 1], vec![1, 2]]);
        assert!(!r.passed);
        assert!(r.failures.iter().any(|f| f.axiom == "H3" && f.witness[2] == vec![1, 3]));
    }

    #[test]
    fn d_partition_examples() {
        assert!(verify_d_partition(2, &[vec![0], vec![1]], 1).passed);
        let r = verify_d_partition(5, &[vec![0, 1, 2], vec![0, 1, 3]], 2);
        assert!(r.failures.iter().any(|f| f.axiom == "P3"));
    }

    #[test]
    fn uniform_from_all_d_subsets() {
        let blocks: Vec<Vec<usize>> = (0..5).combinations(2).collect();
        let m = matroid_from_hyperplanes(tokens(5), &blocks).unwrap();
        assert_eq!(m, FiniteMatroid::uniform(3, tokens(5)).unwrap());
    }

    #[test]
    fn hyperplane_round_trip_non_pappus() {
        let m = non_pappus();
        let back = matroid_from_hyperplanes(m.ground().to_vec(), &m.hyperplanes()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn hyperplane_round_trip_non_paving() {
        // a triangle plus a parallel pair: rank 3 on 5 elements
        let m = FiniteMatroid::from_index_circuits(tokens(5), vec![vec![0, 1, 2], vec![3, 4]]).unwrap();
        let back = matroid_from_hyperplanes(m.ground().to_vec(), &m.hyperplanes()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn simplification_of_cosets() {
        // 2Z on {0..5}: classes {0,2,4} and {1,3,5}
        let ground: Vec<Label> = (0..6).map(|x| Label::Point(IntVector::from_i64s(&[x]))).collect();
        let mut circuits = Vec::new();
        for (a, b) in (0..6usize).tuple_combinations() {
            if (b - a) % 2 == 0 {
                circuits.push(vec![a, b]);
            }
        }
        for s in (0..6usize).combinations(3) {
            if s.iter().tuple_combinations().all(|(a, b)| (b - a) % 2 == 1) {
                circuits.push(s);
            }
        }
        let m = FiniteMatroid::from_index_circuits(ground, circuits).unwrap();
        assert_eq!(m.rank(), 2);
        let (si, map) = m.simplification().unwrap();
        assert_eq!(si.len(), 2);
        assert_eq!(si.rank(), 2);
        assert!(si.circuits().is_empty());
        assert_eq!(map.class_of, vec![0, 1, 0, 1, 0, 1]);
        let (si2, _) = si.simplification().unwrap();
        assert_eq!(si2, si);
    }

    #[test]
    fn loops_block_simplification() {
        let m = FiniteMatroid::from_index_circuits(tokens(2), vec![vec![0]]).unwrap();
        assert!(matches!(m.simplification(), Err(MatroidError::Loop(_))));
    }

    #[test]
    fn rank_is_monotone_and_submodular() {
        let m = non_pappus();
        let n = m.len();
        let rank = |mask: u32| m.rank_of_indices(&(0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>());
        let ranks: Vec<usize> = (0..1u32 << n).map(rank).collect();
        for a in 0..1u32 << n {
            assert_eq!(ranks[a as usize], brute_rank(&m, &(0..n).filter(|&i| a >> i & 1 == 1).collect::<Vec<_>>()));
            for b in (0..1u32 << n).step_by(7) {
                let (a, b) = (a as usize, b as usize);
                assert!(ranks[a | b] + ranks[a & b] <= ranks[a] + ranks[b]);
                if a & b == a {
                    assert!(ranks[a] <= ranks[b]);
                }
            }
        }
    }

    #[test]
    fn restrictions_of_paving_are_paving() {
        let m = non_pappus();
        for k in 0..=9 {
            for s in (0..9).combinations(k) {
                let r = m.restrict_indices(&s);
                assert!(r.is_paving());
            }
        }
    }

    #[test]
    fn labels_are_checked() {
        let m = non_pappus();
        assert!(matches!(m.rank_of(&[t("10")]), Err(MatroidError::UnknownLabel(_))));
        assert!(matches!(
            FiniteMatroid::from_index_circuits(vec![t("a"), t("a")], vec![]),
            Err(MatroidError::DuplicateLabel(_))
        ));
    }
}
