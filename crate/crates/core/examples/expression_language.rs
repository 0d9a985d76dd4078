//! Parsing, printing and evaluating operator expressions.

use bfredholm::dsl::{eval, infer_signature, parse};
use bfredholm::operator::signature_string;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let src = "(1/2+i) * T(2z^-1(z - 1/2)) * FR{e0|geo(1/3); fin[1,(-2)]|e2} - I (++) M[[1,2],[3,4]]";
    let e = parse(src)?;
    println!("printed:   {e}");
    assert_eq!(parse(&e.to_string())?, e);
    let sig = infer_signature(&e)?.unwrap_or_default();
    println!("signature: {}", signature_string(&sig));
    let a = eval(&e)?;
    println!("value:     {a}");

    for bad in ["T(z", "T(z) + M[[1]]", "T(1/(z - 1))"] {
        let err = parse(bad).and_then(|e| eval(&e).map(|_| ()));
        if let Err(err) = err {
            println!("{bad:<16} -> {err} (usage error: {})", err.is_usage());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
