//! Running the axiom suite on a finite window.
use paving_ideals::cli::{example_ideal, ExampleName};
use paving_ideals::partition::Window;
use paving_ideals::suite::{verify_window_suite, SuiteOptions};

fn main() {
    let ideal = example_ideal(ExampleName::MPower).unwrap();
    let w = Window::interval(0, 11).unwrap();
    let report = verify_window_suite(&ideal, &w, &SuiteOptions::default()).unwrap();
    println!("{} degree {} on {} points, {} circuits", report.kind, report.degree, report.points, report.circuits);
    for s in &report.sections {
        println!("  {:<24} {}", s.name, if s.report.passed { "ok" } else { "FAILED" });
    }
    println!("passed: {}", report.passed);
}
