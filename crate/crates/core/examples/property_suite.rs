//! Runs two property suites on a seeded sample of S_5 pairs, the library
//! equivalent of `bip check lifting --n 5 --sample 200 --seed 7`.

use bruhat_polytopes::checks::{run_checks, CheckConfig, Suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = CheckConfig { jobs: 4, ..CheckConfig::sampled(5, 200, 7) };
    let report = run_checks(&[Suite::Lifting, Suite::Rpoly], &cfg)?;
    for s in &report.suites {
        for prop in &s.properties {
            println!("{:<8} {:<30} {}/{}", s.suite, prop.name, prop.held, prop.checked);
        }
    }
    println!("passed: {}", report.passed());
    Ok(())
}
