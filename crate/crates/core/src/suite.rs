//! Brute-force verification of an ideal on a finite window.
//!
//! The window matroid comes from circuit enumeration (block traces). The
//! checks compare it against the axioms and against the rank oracle and the
//! membership test, which run through a different code path (block lookup).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ideal::{IdealError, Limits, Support, TropicalIdeal};
use crate::lattice::IntVector;
use crate::matroid::{verify_circuit_axioms, verify_d_partition, AxiomReport, FiniteMatroid};
use crate::partition::Window;

/// Subsets are enumerated exhaustively up to this many points, sampled above it.
pub const EXHAUSTIVE_POINTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteOptions {
    pub seed: u64,
    pub limits: Limits,
    pub samples: usize,
    pub translation_samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0x5eed, limits: Limits::default(), samples: 2000, translation_samples: 200 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSection {
    pub name: String,
    pub report: AxiomReport,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowSuiteReport {
    pub kind: String,
    pub degree: usize,
    pub points: usize,
    pub circuits: usize,
    pub passed: bool,
    pub sections: Vec<SuiteSection>,
}

impl WindowSuiteReport {
    pub fn section(&self, name: &str) -> Option<&SuiteSection> {
        self.sections.iter().find(|s| s.name == name)
    }
}

pub fn verify_window_suite(ideal: &TropicalIdeal, window: &Window, opts: &SuiteOptions) -> Result<WindowSuiteReport, IdealError> {
    let points = window.points(opts.limits.max_window_points)?;
    verify_point_suite(ideal, &points, opts)
}

/// Runs every check on an arbitrary finite set of monomials.
pub fn verify_point_suite(ideal: &TropicalIdeal, points: &[IntVector], opts: &SuiteOptions) -> Result<WindowSuiteReport, IdealError> {
    let m = ideal.restrict_to_points(points, &opts.limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut sections = vec![
        SuiteSection { name: "circuit-axioms".into(), report: verify_circuit_axioms(m.len(), m.circuits()), note: None },
    ];
    sections.extend(paving_sections(ideal, &m)?);
    sections.push(trace_coherence(ideal, &m)?);
    sections.push(rank_agreement(ideal, &m, opts, &mut rng)?);
    sections.push(elimination(&m, opts, &mut rng));
    sections.push(membership(ideal, &m, opts, &mut rng)?);
    sections.push(translation(ideal, &m, opts, &mut rng)?);
    let passed = sections.iter().all(|s| s.report.passed);
    Ok(WindowSuiteReport {
        kind: ideal.kind().to_string(),
        degree: ideal.degree(),
        points: m.len(),
        circuits: m.circuits().len(),
        passed,
        sections,
    })
}

/// Paving and d-partition checks. Ideals with parallel classes are checked
/// on the simplification.
fn paving_sections(ideal: &TropicalIdeal, m: &FiniteMatroid) -> Result<Vec<SuiteSection>, IdealError> {
    let (target, note) = match ideal {
        TropicalIdeal::Quotient(_) => (m.simplification()?.0, Some("checked on the simplification".to_string())),
        _ => (m.clone(), None),
    };
    let mut paving = AxiomReport::pass();
    if !target.is_paving() {
        let bad: Vec<Vec<usize>> = target.circuits().iter().filter(|c| c.len() < target.rank()).take(4).cloned().collect();
        paving.fail("paving", format!("circuit smaller than the rank {}", target.rank()), bad);
    }
    let r = target.rank();
    let (report, part_note) = if r >= 2 {
        (verify_d_partition(target.len(), &target.hyperplanes(), r - 1), note.clone())
    } else {
        (AxiomReport::pass(), Some(format!("rank {r}: no d-partition to check")))
    };
    Ok(vec![
        SuiteSection { name: "paving".into(), report: paving, note },
        SuiteSection { name: "hyperplane-d-partition".into(), report, note: part_note },
    ])
}

/// Hyperplanes with at least d + 1 classes are exactly the traces of listed
/// block translates with at least d + 1 classes.
fn trace_coherence(ideal: &TropicalIdeal, m: &FiniteMatroid) -> Result<SuiteSection, IdealError> {
    let d = ideal.d();
    let mut report = AxiomReport::pass();
    if m.rank() != d + 1 {
        return Ok(SuiteSection {
            name: "trace-coherence".into(),
            report,
            note: Some(format!("window rank {} is below the degree", m.rank())),
        });
    }
    let points: Vec<IntVector> = m.ground().iter().filter_map(|l| l.as_point().cloned()).collect();
    let q = ideal.view().quotient();
    let class_count = |h: &[usize]| {
        let set: std::collections::BTreeSet<IntVector> = h.iter().map(|&i| q.canonical_unchecked(&points[i])).collect();
        set.len()
    };
    let mut from_matroid: Vec<Vec<usize>> = m.hyperplanes().into_iter().filter(|h| class_count(h) > d).collect();
    from_matroid.sort();
    let mut from_blocks: Vec<Vec<usize>> = ideal
        .view()
        .blocks_meeting(&points, d + 1)?
        .into_iter()
        .map(|t| t.points.iter().map(|p| points.binary_search(p).expect("trace points come from the window")).collect())
        .collect();
    from_blocks.sort();
    from_blocks.dedup();
    for h in from_matroid.iter().filter(|h| from_blocks.binary_search(h).is_err()) {
        report.fail("trace", "hyperplane is not a block trace", vec![h.clone()]);
    }
    for t in from_blocks.iter().filter(|t| from_matroid.binary_search(t).is_err()) {
        report.fail("trace", "block trace is not a hyperplane", vec![t.clone()]);
    }
    Ok(SuiteSection { name: "trace-coherence".into(), report, note: None })
}

fn mask_of(xs: &[usize]) -> u64 {
    xs.iter().fold(0, |m, &i| m | 1 << i)
}

fn indices_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len.min(n));
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(len);
    all.sort_unstable();
    all
}

/// Rank of every subset from the circuit list: the largest subset that
/// contains no circuit.
fn brute_rank_table(m: &FiniteMatroid) -> Vec<u8> {
    let n = m.len();
    let mut dependent = vec![false; 1 << n];
    for c in m.circuits() {
        dependent[mask_of(c) as usize] = true;
    }
    let mut rank = vec![0u8; 1 << n];
    for mask in 1..1usize << n {
        let mut dep = dependent[mask];
        let mut best = 0;
        let mut rest = mask;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            dep |= dependent[mask ^ bit];
            best = best.max(rank[mask ^ bit]);
            rest ^= bit;
        }
        dependent[mask] = dep;
        rank[mask] = if dep { best } else { mask.count_ones() as u8 };
    }
    rank
}

fn rank_agreement(ideal: &TropicalIdeal, m: &FiniteMatroid, opts: &SuiteOptions, rng: &mut ChaCha8Rng) -> Result<SuiteSection, IdealError> {
    let n = m.len();
    let points: Vec<IntVector> = m.ground().iter().filter_map(|l| l.as_point().cloned()).collect();
    let mut report = AxiomReport::pass();
    let pick = |xs: &[usize]| -> Vec<IntVector> { xs.iter().map(|&i| points[i].clone()).collect() };
    let note;
    if n <= EXHAUSTIVE_POINTS {
        let table = brute_rank_table(m);
        for mask in 0..1u64 << n {
            let xs = indices_of(mask);
            let oracle = ideal.rank_oracle(&pick(&xs))?;
            if oracle != table[mask as usize] as usize {
                report.fail("rank", format!("oracle {oracle}, brute force {}", table[mask as usize]), vec![xs]);
            }
        }
        note = Some(format!("all {} subsets", 1u64 << n));
    } else {
        for _ in 0..opts.samples {
            let xs = random_subset(rng, n, 2 * ideal.degree() + 2);
            let oracle = ideal.rank_oracle(&pick(&xs))?;
            let brute = m.rank_of_indices(&xs);
            if oracle != brute {
                report.fail("rank", format!("oracle {oracle}, circuit greedy {brute}"), vec![xs]);
            }
        }
        note = Some(format!("{} sampled subsets", opts.samples));
    }
    Ok(SuiteSection { name: "rank-oracle".into(), report, note })
}

/// Largest cycle inside a set: the union of the circuits it contains.
enum CycleOracle {
    Table(Vec<u32>),
    Scan(Vec<u64>),
}

const CYCLE_TABLE_LIMIT: usize = 22;

impl CycleOracle {
    fn new(m: &FiniteMatroid) -> Self {
        let circuits: Vec<u64> = m.circuits().iter().map(|c| mask_of(c)).collect();
        if m.len() > CYCLE_TABLE_LIMIT {
            return CycleOracle::Scan(circuits);
        }
        let mut table = vec![0u32; 1 << m.len()];
        for &c in &circuits {
            table[c as usize] = c as u32;
        }
        for mask in 1..table.len() {
            let mut acc = table[mask];
            let mut rest = mask;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                acc |= table[mask ^ bit];
                rest ^= bit;
            }
            table[mask] = acc;
        }
        CycleOracle::Table(table)
    }

    fn max_cycle(&self, z: u64) -> u64 {
        match self {
            CycleOracle::Table(t) => t[z as usize] as u64,
            CycleOracle::Scan(cs) => cs.iter().filter(|&&c| c & !z == 0).fold(0, |acc, &c| acc | c),
        }
    }
}

/// Above this many circuits, circuit pairs are sampled instead of exhausted.
const MAX_EXHAUSTIVE_CIRCUITS: usize = 3000;

/// Monomial elimination on the cycle family: for cycles f, g sharing u,
/// some cycle h has f Δ g ⊆ h ⊆ (f ∪ g) − u.
fn elimination(m: &FiniteMatroid, opts: &SuiteOptions, rng: &mut ChaCha8Rng) -> SuiteSection {
    let mut report = AxiomReport::pass();
    if m.len() > 64 {
        return SuiteSection { name: "elimination".into(), report, note: Some("skipped: more than 64 points".into()) };
    }
    let oracle = CycleOracle::new(m);
    let circuits: Vec<u64> = m.circuits().iter().map(|c| mask_of(c)).collect();
    let check = |f: u64, g: u64, report: &mut AxiomReport| {
        let mut shared = f & g;
        while shared != 0 {
            let u = shared & shared.wrapping_neg();
            shared ^= u;
            let h = oracle.max_cycle((f | g) & !u);
            if (f ^ g) & !h != 0 {
                report.fail("elimination", "no cycle between f Δ g and (f ∪ g) − u", vec![indices_of(f), indices_of(g), indices_of(u)]);
            }
        }
    };
    let circuit_note = if circuits.len() <= MAX_EXHAUSTIVE_CIRCUITS {
        for (i, &f) in circuits.iter().enumerate() {
            for &g in &circuits[i + 1..] {
                check(f, g, &mut report);
            }
        }
        "all circuit pairs".to_string()
    } else {
        let pairs = opts.samples * 10;
        for _ in 0..pairs {
            let f = circuits[rng.gen_range(0..circuits.len())];
            let g = circuits[rng.gen_range(0..circuits.len())];
            check(f, g, &mut report);
        }
        format!("{pairs} sampled circuit pairs")
    };
    // unions of two circuits with at most 8 points, sampled
    let mut unions = Vec::new();
    if circuits.len() >= 2 {
        for _ in 0..opts.samples * 4 {
            let a = circuits[rng.gen_range(0..circuits.len())];
            let b = circuits[rng.gen_range(0..circuits.len())];
            if (a | b).count_ones() <= 8 {
                unions.push(a | b);
            }
            if unions.len() >= opts.samples {
                break;
            }
        }
    }
    let family: Vec<u64> = circuits.iter().copied().chain(unions.iter().copied()).collect();
    let mut tried = 0;
    if !unions.is_empty() {
        for _ in 0..opts.samples {
            let f = unions[rng.gen_range(0..unions.len())];
            let g = family[rng.gen_range(0..family.len())];
            check(f, g, &mut report);
            tried += 1;
        }
    }
    SuiteSection {
        name: "elimination".into(),
        report,
        note: Some(format!("{circuit_note} plus {tried} sampled pairs involving unions")),
    }
}

fn membership(ideal: &TropicalIdeal, m: &FiniteMatroid, opts: &SuiteOptions, rng: &mut ChaCha8Rng) -> Result<SuiteSection, IdealError> {
    let n = m.len();
    let mut report = AxiomReport::pass();
    if n > 64 {
        return Ok(SuiteSection { name: "membership".into(), report, note: Some("skipped: more than 64 points".into()) });
    }
    let points: Vec<IntVector> = m.ground().iter().filter_map(|l| l.as_point().cloned()).collect();
    let oracle = CycleOracle::new(m);
    let masks: Vec<u64> = if n <= EXHAUSTIVE_POINTS {
        (0..1u64 << n).collect()
    } else {
        (0..opts.samples).map(|_| mask_of(&random_subset(rng, n, 8))).collect()
    };
    for &mask in &masks {
        let support = Support::new(indices_of(mask).iter().map(|&i| points[i].clone()).collect())?;
        let cycle = oracle.max_cycle(mask) == mask;
        if ideal.contains(&support)? != cycle {
            report.fail("membership", format!("contains() disagrees with the cycle family (cycle: {cycle})"), vec![indices_of(mask)]);
        }
    }
    let note = Some(format!("{} supports", masks.len()));
    Ok(SuiteSection { name: "membership".into(), report, note })
}

fn translation(ideal: &TropicalIdeal, m: &FiniteMatroid, opts: &SuiteOptions, rng: &mut ChaCha8Rng) -> Result<SuiteSection, IdealError> {
    let points: Vec<IntVector> = m.ground().iter().filter_map(|l| l.as_point().cloned()).collect();
    let dim = ideal.ambient_dim();
    let mut report = AxiomReport::pass();
    for _ in 0..opts.translation_samples {
        let xs = random_subset(rng, points.len(), 7);
        let s = Support::new(xs.iter().map(|&i| points[i].clone()).collect())?;
        let v = IntVector::from_i64s(&(0..dim).map(|_| rng.gen_range(-50..=50)).collect::<Vec<_>>());
        let moved = s.translate(&v);
        if ideal.contains(&s)? != ideal.contains(&moved)? || ideal.rank_oracle(s.points())? != ideal.rank_oracle(moved.points())? {
            report.fail("translation", format!("shift {v:?} changes the answer"), vec![xs]);
        }
    }
    Ok(SuiteSection { name: "translation".into(), report, note: Some(format!("{} shifts", opts.translation_samples)) })
}
