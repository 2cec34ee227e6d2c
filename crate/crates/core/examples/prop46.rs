//! The trivariate lattice whose restrictions are realizable but which is not.
use paving_ideals::realize::prop46_experiment;

fn main() {
    let r = prop46_experiment().unwrap();
    println!("L = {}", r.lattice);
    println!("restriction to x1: {}", r.restriction_x1);
    println!("restriction to x2,x3: {}", r.restriction_x2x3);
    for run in r.runs() {
        println!("{}", run.render());
    }
    println!("all expectations hold: {}", r.matches);
}
