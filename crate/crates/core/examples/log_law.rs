//! `i(a1 a2) = i(a1) + i(a2)` for commuting operators with a Bezout identity
//! `u1 a1 + u2 a2 = e`.

use bfredholm::dsl::{eval, parse};
use bfredholm::engine::verify_log_law;
use bfredholm::error::EngineError;

fn op(s: &str) -> bfredholm::operator::BlockOperator {
    eval(&parse(s).expect("valid expression")).expect("evaluates")
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let r = verify_log_law(&op("T(z)"), &op("T(z - 1/2)"), &op("2 * I"), &op("(-2) * I"))?;
    println!("{}: {}", r.name, r.details.join("; "));
    assert!(r.passed);

    match verify_log_law(&op("T(z)"), &op("T(z - 2)"), &op("I"), &op("I")) {
        Err(EngineError::NotBezout) => println!("u1 = u2 = e is rejected: not a Bezout pair"),
        other => return Err(format!("unexpected: {other:?}").into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
