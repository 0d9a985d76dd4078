//! One verifier per theorem; each returns a report or the first failure.

use serde::Serialize;

use super::{
    analyze, classify, drazin_witness, drazin_witness_with, index_winding, trace_index_with, Classification,
    MatrixWitness,
};
use crate::error::EngineError;
use crate::operator::BlockOperator;
use crate::random;

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CheckReport {
    fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), passed: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.passed &= ok;
        self.details.push(if ok { detail } else { format!("FAILED: {detail}") });
    }
}

/// Trace index equals winding index.
pub fn verify_fedosov(a: &BlockOperator) -> Result<CheckReport, EngineError> {
    let mut r = CheckReport::new(format!("fedosov {a}"));
    let report = analyze(a)?;
    let (Some(t), Some(w)) = (report.index_trace, report.index_winding) else {
        return Err(EngineError::Precondition(format!("both index routes are needed for {a}")));
    };
    r.check(t == w, format!("trace {t}, winding {w}"));
    Ok(r)
}

/// The trace index is unchanged when the witness is moved by ideal elements,
/// and when matrix blocks use the zero witness instead of the Drazin inverse.
pub fn verify_well_defined(a: &BlockOperator, trials: usize, seed: u64) -> Result<CheckReport, EngineError> {
    let mut r = CheckReport::new(format!("well-defined {a}"));
    let w = drazin_witness(a)?;
    let base = trace_index_with(a, &w.inverse)?;
    let mut rng = random::rng(seed);
    let sig = a.signature();
    for k in 0..trials {
        let j = random::ideal_element(&mut rng, &sig, 2);
        let v = trace_index_with(a, &w.inverse.add(&j)?)?;
        r.check(v == base, format!("trial {k}: {v} vs {base}"));
    }
    let z = drazin_witness_with(a, MatrixWitness::Zero)?;
    let v = trace_index_with(a, &z.inverse)?;
    r.check(v == base, format!("zero matrix witness: {v} vs {base}"));
    Ok(r)
}

/// Index of the product is the sum of indices for commuting Bezout pairs.
pub fn verify_log_law(
    a1: &BlockOperator,
    a2: &BlockOperator,
    u1: &BlockOperator,
    u2: &BlockOperator,
) -> Result<CheckReport, EngineError> {
    let mut r = CheckReport::new(format!("log law a1={a1}, a2={a2}"));
    let ops = [("a1", a1), ("a2", a2), ("u1", u1), ("u2", u2)];
    for (i, (ni, x)) in ops.iter().enumerate() {
        for (nj, y) in &ops[i + 1..] {
            if !x.mul(y)?.op_equal(&y.mul(x)?)? {
                return Err(EngineError::NotCommuting(format!("{ni} and {nj}")));
            }
        }
    }
    let e = BlockOperator::identity(&a1.signature());
    if !u1.mul(a1)?.add(&u2.mul(a2)?)?.op_equal(&e)? {
        return Err(EngineError::NotBezout);
    }
    let prod = a1.mul(a2)?;
    let (i1, i2, i12) = (analyze(a1)?, analyze(a2)?, analyze(&prod)?);
    let idx = |rep: &super::IndexReport| rep.index_winding.ok_or(EngineError::NotBFredholm);
    let (w1, w2, w12) = (idx(&i1)?, idx(&i2)?, idx(&i12)?);
    r.check(w12 == w1 + w2, format!("winding route: {w12} = {w1} + {w2}"));
    if let (Some(t1), Some(t2), Some(t12)) = (i1.index_trace, i2.index_trace, i12.index_trace) {
        r.check(t12 == t1 + t2, format!("trace route: {t12} = {t1} + {t2}"));
    }
    Ok(r)
}

/// Adding an ideal element keeps the class and the index.
pub fn verify_ideal_perturbation(a: &BlockOperator, j: &BlockOperator) -> Result<CheckReport, EngineError> {
    let mut r = CheckReport::new(format!("ideal perturbation {a}"));
    let c = classify(a);
    if !matches!(c, Classification::Fredholm | Classification::InvertibleModJ | Classification::BFredholm) {
        return Err(EngineError::NotBFredholm);
    }
    if !j.in_ideal() {
        return Err(EngineError::Precondition("perturbation is not an ideal element".into()));
    }
    let b = a.add(j)?;
    let (ra, rb) = (analyze(a)?, analyze(&b)?);
    r.check(ra.classification == rb.classification, format!("class {} -> {}", ra.classification, rb.classification));
    r.check(ra.index() == rb.index(), format!("index {:?} -> {:?}", ra.index(), rb.index()));
    if let (Some(x), Some(y)) = (ra.index_trace, rb.index_trace) {
        r.check(x == y, format!("trace route {x} -> {y}"));
    }
    Ok(r)
}

/// `ind(A^p) = p·ind(A)` by both routes.
pub fn verify_power_law(a: &BlockOperator, p: u32) -> Result<CheckReport, EngineError> {
    let mut r = CheckReport::new(format!("power law {a}, p={p}"));
    if p == 0 {
        return Err(EngineError::Precondition("p must be at least 1".into()));
    }
    if !classify(a).is_fredholm() {
        return Err(EngineError::Precondition(format!("{a} is not Fredholm")));
    }
    let ap = a.pow(p)?;
    let base_w = index_winding(a)?;
    let pow_w = index_winding(&ap)?;
    r.check(pow_w == p as i64 * base_w, format!("winding route: {pow_w} = {p}·{base_w}"));
    let base_t = super::index_trace(a)?;
    let pow_t = super::index_trace(&ap)?;
    r.check(pow_t == p as i64 * base_t, format!("trace route: {pow_t} = {p}·{base_t}"));
    Ok(r)
}
