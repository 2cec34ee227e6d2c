//! Searching for commuting 2x2 matrices whose monomial identities match a lattice.
use paving_ideals::lattice::IntegerLattice;
use paving_ideals::realize::{check_quadratic_gap, search_degree2_realization, FiniteField};

fn main() {
    let target = IntegerLattice::from_rows(1, &[&[4]]).unwrap();
    for q in [2, 3, 4, 5, 7] {
        let f = FiniteField::gf(q).unwrap();
        let report = search_degree2_realization(&target, &f).unwrap();
        print!("{}: {} witnesses over {} candidates", f.name(), report.witness_count(), report.candidates_scanned);
        if let Some(w) = report.witnesses.first() {
            let a = w.matrices()[0];
            print!("; first {}", a.show(&f));
        }
        println!();
    }
    let f = FiniteField::gf(3).unwrap();
    for a in f.nonzero() {
        for b in f.nonzero() {
            println!("gap of x^2+{}x+{} over GF(3): {:?}", f.show(a), f.show(b), check_quadratic_gap(&f, a, b).unwrap());
        }
    }
}
