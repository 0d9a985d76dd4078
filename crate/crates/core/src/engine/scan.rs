//! Punctured-neighbourhood scans `λ ↦ A - λe` and the nonstability sweep.

use rayon::prelude::*;
use serde::Serialize;

use super::{classify, drazin_witness, index_winding, Classification};
use crate::error::EngineError;
use crate::operator::BlockOperator;
use crate::scalar::{GaussianRational as GR, Rational};
use crate::symbol::RationalSymbol;

/// Gaussian-rational points of modulus one: `±1, ±i, (±3±4i)/5`, then
/// further Pythagorean points when more are requested.
pub fn scan_directions(count: usize) -> Vec<GR> {
    let mut out = vec![GR::one(), -GR::one(), GR::i(), -GR::i()];
    let triples = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29), (12, 35, 37)];
    for (idx, &(a, b, c)) in triples.iter().enumerate() {
        let mut pts = vec![
            GR::from_parts(a, c, b, c),
            GR::from_parts(a, c, -b, c),
            GR::from_parts(-a, c, b, c),
            GR::from_parts(-a, c, -b, c),
        ];
        if idx > 0 {
            pts.extend([
                GR::from_parts(b, c, a, c),
                GR::from_parts(b, c, -a, c),
                GR::from_parts(-b, c, a, c),
                GR::from_parts(-b, c, -a, c),
            ]);
        }
        out.extend(pts);
        if out.len() >= count {
            break;
        }
    }
    out.truncate(count);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanSample {
    pub lambda: GR,
    pub radius: GR,
    pub classification: Classification,
    /// Winding-route index of `A - λe`.
    pub index: Option<i64>,
    /// Trace-route index, when the shifted symbols still split over ℚ(i).
    pub index_trace: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanTable {
    pub classification_at_zero: Classification,
    pub index_at_zero: Option<i64>,
    /// Largest tested radius with every sample at or below it Fredholm of
    /// the index at zero.
    pub r_star: Option<GR>,
    pub samples: Vec<ScanSample>,
}

fn sample(a: &BlockOperator, lambda: GR, radius: Rational) -> ScanSample {
    let b = a.scalar_shift(&lambda);
    let classification = classify(&b);
    let index = index_winding(&b).ok();
    let index_trace = match drazin_witness(&b) {
        Ok(w) => super::commutator_trace(&w.defects[0]).ok(),
        Err(_) => None,
    };
    ScanSample { lambda, radius: GR::real(radius), classification, index, index_trace }
}

pub fn punctured_scan(a: &BlockOperator, radii: &[Rational], directions: usize) -> Result<ScanTable, EngineError> {
    let classification_at_zero = classify(a);
    if classification_at_zero == Classification::NotInClass {
        return Err(EngineError::NotBFredholm);
    }
    let index_at_zero = Some(index_winding(a)?);
    let mut radii: Vec<Rational> = radii.to_vec();
    radii.sort();
    radii.dedup();
    let dirs = scan_directions(directions);
    let points: Vec<(GR, Rational)> = radii
        .iter()
        .flat_map(|r| dirs.iter().map(move |d| (d.scale(r), r.clone())))
        .collect();
    // indexed parallel collect keeps the input order
    let samples: Vec<ScanSample> = points.into_par_iter().map(|(l, r)| sample(a, l, r)).collect();
    let mut r_star = None;
    for r in radii.iter().filter(|r| **r > Rational::from_integer(0.into())) {
        let good = samples
            .iter()
            .filter(|s| s.radius.re == *r)
            .all(|s| s.classification.is_fredholm() && s.index == index_at_zero);
        if !good {
            break;
        }
        r_star = Some(GR::real(r.clone()));
    }
    Ok(ScanTable { classification_at_zero, index_at_zero, r_star, samples })
}

#[derive(Clone, Debug, Serialize)]
pub struct NonstabilityReport {
    pub operator: String,
    pub samples: Vec<ScanSample>,
    pub summary: Vec<String>,
}

/// `T(z - 1)` is outside the class while `T(z - 1) - λe` is Fredholm for
/// every small `λ ≠ 0` off the circle `|1 + λ| = 1`, with an index that
/// depends on the side: the class is not stable under small perturbations.
pub fn nonstability_demo() -> NonstabilityReport {
    let f = RationalSymbol::monomial(GR::one(), 1).sub_scalar(&GR::one());
    let a = BlockOperator::toeplitz(f);
    let mut samples = vec![sample(&a, GR::zero(), Rational::from_integer(0.into()))];
    for k in [8, 16, 32] {
        let r = crate::scalar::rat(1, k);
        for d in scan_directions(4) {
            samples.push(sample(&a, d.scale(&r), r.clone()));
        }
    }
    let mut summary = vec![format!("lambda=0: {}", samples[0].classification)];
    let nearby_fredholm = samples[1..].iter().filter(|s| s.classification.is_fredholm()).count();
    summary.push(format!("{} of {} nearby samples are Fredholm", nearby_fredholm, samples.len() - 1));
    let mut indices: Vec<i64> = samples[1..].iter().filter_map(|s| s.index).collect();
    indices.sort();
    indices.dedup();
    summary.push(format!("indices seen near 0: {indices:?}"));
    NonstabilityReport { operator: a.to_string(), samples, summary }
}
