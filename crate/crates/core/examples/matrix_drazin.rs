//! Exact Drazin inverse of a matrix with a nilpotent part.

use bfredholm::matrix::ExactMatrix;
use bfredholm::scalar::GaussianRational as GR;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let core = ExactMatrix::from_ints(&[&[2, 1], &[0, 3]]);
    let nil = ExactMatrix::jordan_block(2, &GR::zero());
    let p = ExactMatrix::from_ints(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
    let a = p.mul(&ExactMatrix::block_diag(&core, &nil))?.mul(&p.inverse()?)?;

    let (d, k) = a.drazin()?;
    println!("index k = {k}");
    for row in d.to_rows() {
        println!("  {}", row.iter().map(GR::to_string).collect::<Vec<_>>().join("  "));
    }
    assert_eq!(k, 2);
    assert_eq!(a.mul(&d)?, d.mul(&a)?);
    assert_eq!(d.mul(&a)?.mul(&d)?, d);
    assert_eq!(a.pow(3)?.mul(&d)?, a.pow(2)?);
    println!("spectral trace check: {}", a.spectral_trace_check()?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
