//! Hermite form, quotient structure and canonical representatives.
use paving_ideals::lattice::{IntVector, IntegerLattice};

fn main() {
    let rows = [IntVector::from_i64s(&[4, 6]), IntVector::from_i64s(&[2, 8]), IntVector::from_i64s(&[6, 14])];
    let l = IntegerLattice::hnf(2, &rows).expect("lattice");
    println!("L = {l}");
    let q = l.quotient();
    println!("invariant factors {:?}, order {:?}", q.invariant_factors(), q.order());
    for p in [[7, 3], [3, 9], [-1, -5]] {
        let v = IntVector::from_i64s(&p);
        println!("{v} -> {}", q.canonical_rep(&v).unwrap());
    }
    let m = IntegerLattice::from_rows(2, &[&[2, 0], &[0, 4]]).unwrap();
    println!("L + M = {}", l.sum(&m).unwrap());
    println!("L ∩ M = {}", l.intersect(&m).unwrap());
    println!("x-axis section of L = {}", l.coordinate_section(&[0]).unwrap());
}
