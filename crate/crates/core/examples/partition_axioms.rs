//! Checking generator sets of invariant d-partitions.
use paving_ideals::lattice::{IntVector, IntegerLattice};
use paving_ideals::partition::{Block, GeneratorSet, InvariantPartition};

fn pts(xs: &[i64]) -> Vec<IntVector> {
    xs.iter().map(|&x| IntVector::from_i64s(&[x])).collect()
}

fn main() {
    let good = GeneratorSet::new(1, 2, vec![Block::finite(pts(&[0, 1, 3]))]).unwrap();
    println!("{{0,1,3}} with d=2: {:?}", good.check_axioms());

    // {0,1,2} meets its own translate by 1 in two points
    let bad = GeneratorSet::new(1, 2, vec![Block::finite(pts(&[0, 1, 2]))]).unwrap();
    match bad.check_axioms() {
        paving_ideals::partition::AxiomCheck::Violation(v) => println!("{{0,1,2}} with d=2: {v}"),
        c => println!("{{0,1,2}} with d=2: {c:?}"),
    }

    let affine = GeneratorSet::new(2, 1, vec![Block::affine(IntegerLattice::from_rows(2, &[&[3, 1]]).unwrap())]).unwrap();
    println!("1-partition by <(3,1)>: {:?}", affine.check_axioms());

    let p = InvariantPartition::new(good).unwrap();
    for pair in [[5, 6], [10, 12], [4, 9]] {
        println!("block of {pair:?}: {:?}", p.find_block(&pts(&pair)).unwrap());
    }
}
