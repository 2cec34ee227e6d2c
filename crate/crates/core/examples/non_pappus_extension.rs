//! Extending the non-Pappus matroid to a tropical ideal and restricting back.
use paving_ideals::cli::pointed;
use paving_ideals::ideal::{Limits, TropicalIdeal};
use paving_ideals::lattice::IntVector;
use paving_ideals::matroid::non_pappus;

fn main() {
    let m = non_pappus();
    println!("non-Pappus: {} elements, rank {}, {} circuits", m.len(), m.rank(), m.circuits().len());
    let p = pointed(&m, 2);
    let ideal = TropicalIdeal::extend_point_matroid(&p).unwrap();
    println!("extension: kind {}, degree {}", ideal.kind(), ideal.degree());
    let points: Vec<IntVector> = p.ground().iter().map(|l| l.as_point().unwrap().clone()).collect();
    let back = ideal.restrict_to_points(&points, &Limits::default()).unwrap();
    println!("restriction to 2^0..2^8 equals the original: {}", back == p);
}
