//! Run two of the seeded verification suites and print their summaries.

use bfredholm::report::{emit_checks, Format};
use bfredholm::suites::{run_suite, Suite};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for suite in [Suite::Fedosov, Suite::Loglaw] {
        let cases = run_suite(suite, 7, 20);
        let text = emit_checks(&suite.to_string(), 7, &cases, Format::Text);
        print!("{}", text.lines().last().map(|l| format!("{l}\n")).unwrap_or_default());
        assert!(cases.iter().all(|c| c.passed));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
