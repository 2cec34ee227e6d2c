//! Restricting a degree-2 lattice ideal to coordinate subsets.
use paving_ideals::ideal::TropicalIdeal;
use paving_ideals::lattice::IntegerLattice;

fn main() {
    let l = IntegerLattice::from_rows(3, &[&[4, 0, 0], &[0, 2, 0], &[0, 0, 2]]).unwrap();
    let ideal = TropicalIdeal::degree2_from_lattice(l).unwrap();
    for axes in [vec![0], vec![1, 2], vec![0, 1]] {
        match ideal.restrict_vars(&axes) {
            Ok(r) => println!("axes {axes:?}: {} lattice {}", r.kind(), r.binomial_lattice()),
            Err(e) => println!("axes {axes:?}: {e}"),
        }
    }
}
