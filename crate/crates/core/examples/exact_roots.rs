//! Exact root counting and factoring over ℚ(i).
//!
//! ```text
//! cargo run --example exact_roots
//! ```

use bfredholm::poly::Polynomial;
use bfredholm::roots::{count_zeros_in_disk, gaussian_roots, has_zero_on_circle};
use bfredholm::scalar::GaussianRational as GR;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // (z - 1/2)^2 (z - 3) (z - (1+i)/2)
    let p = Polynomial::from_roots(&[(GR::ratio(1, 2), 2), (GR::from_int(3), 1), (GR::from_parts(1, 2, 1, 2), 1)]);
    println!("p(z) = {p}");
    println!("zeros on the circle: {}", has_zero_on_circle(&p)?);
    println!("zeros inside the disk: {}", count_zeros_in_disk(&p)?);
    let roots = gaussian_roots(&p, &[]).ok_or("p should split over Q(i)")?;
    for (r, m) in &roots {
        println!("  root {r} with multiplicity {m}, |r|^2 = {}", r.abs2());
    }
    assert_eq!(count_zeros_in_disk(&p)?, 3);

    let q = Polynomial::from_roots(&[(GR::from_parts(3, 5, 4, 5), 1)]);
    println!("(z - (3/5+4/5i)) touches the circle: {}", has_zero_on_circle(&q)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
