//! The quotient example with a block invariant under a shift but not a coset.
use paving_ideals::ideal::{remark_block, remark_facts, Limits, TropicalIdeal};
use paving_ideals::partition::Window;

fn main() {
    let d = 3;
    let ideal = TropicalIdeal::remark_example(d).unwrap();
    println!("block S = {:?}", remark_block(d).iter().map(|v| v.to_string()).collect::<Vec<_>>());
    println!("binomial lattice {}", ideal.binomial_lattice());
    println!("{:?}", remark_facts(d).unwrap());
    let w = Window::from_bounds(&[0, 0], &[5, 1]).unwrap();
    let check = ideal.verify_degree_on_window(&w, &Limits::default()).unwrap();
    println!("degree on [0,5]x[0,1]: expected {}, observed {}", check.expected, check.observed);
}
