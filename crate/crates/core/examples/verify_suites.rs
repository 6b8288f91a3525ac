// The built-in verification suites.

use torsion_lab::verify::{run_suite, Suite};

/// Number of failing checks across all suites.
pub fn run() -> usize {
    let report = run_suite(Suite::All, 42);
    for c in &report.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        println!("{mark} [{}] {} {:?}", c.suite, c.name, c.deviation);
    }
    report.failures().count()
}

fn main() {
    std::process::exit(i32::from(run() > 0));
}
