//! Ideals from powers of m: circuits on a window and injectivity in S.
use paving_ideals::ideal::{Limits, TropicalIdeal};
use paving_ideals::lattice::IntVector;

fn main() {
    let window: Vec<IntVector> = (-8..=8).map(|x| IntVector::from_i64s(&[x])).collect();
    let limits = Limits::default();
    for s in [vec![0u32, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![0, 1, 2, 3]] {
        let ideal = TropicalIdeal::m_s_ideal(2, &s).unwrap();
        let sig = ideal.circuit_signature(&window, &limits).unwrap();
        let m = ideal.restrict_to_points(&window, &limits).unwrap();
        println!(
            "S={s:?}: degree {}, {} small circuits on [-8,8], window rank {}, paving {}",
            ideal.degree(),
            sig.small.len(),
            m.rank(),
            m.is_paving()
        );
    }
}
