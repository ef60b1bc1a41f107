//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use compat_linf::testkit::criteria::*;

type Criterion = (&'static str, Box<dyn Fn() -> Verdict>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("sign/shuffle kernel", Box::new(|| signs_and_shuffles(1, 3))),
        ("bracket axioms", Box::new(|| bracket_axioms(2, 50))),
        ("coderivation oracle", Box::new(|| coderivation_oracle(3, 25))),
        ("formulation equivalence", Box::new(|| formulation_equivalence(4, 40))),
        ("compatible CE complex", Box::new(|| ce_complex(5, 10))),
        ("cohomology regression", Box::new(cohomology_regression)),
        ("deformation theory", Box::new(|| deformation_theory(7, 25, 10))),
        ("Nijenhuis", Box::new(|| nijenhuis(8, 10))),
        ("skew-symmetrization", Box::new(|| skew_symmetrization(9, 25))),
        ("classification round trips", Box::new(|| classification_round_trips(10, 25))),
        ("Lie-2 correspondence", Box::new(|| lie2_correspondence(11, 25))),
        ("Rota-Baxter", Box::new(rota_baxter_search)),
        ("CLI round trip", Box::new(common::cli_round_trip)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {} {name}: PASS ({secs:.1}s) {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({secs:.1}s) {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
