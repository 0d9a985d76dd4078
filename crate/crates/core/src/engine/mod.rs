//! Classification, Drazin witnesses modulo the finite-rank ideal, and the two
//! index routes: `τ([a, a₀])` and minus the total winding number.

mod scan;
mod verify;

use std::fmt;

use serde::Serialize;

use crate::error::{EngineError, OperatorError};
use crate::matrix::ExactMatrix;
use crate::operator::{Block, BlockOperator, ToeplitzBlock};

pub use scan::{nonstability_demo, punctured_scan, scan_directions, NonstabilityReport, ScanSample, ScanTable};
pub use verify::{
    verify_fedosov, verify_ideal_perturbation, verify_log_law, verify_power_law, verify_well_defined, CheckReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    InvertibleModJ,
    Fredholm,
    BFredholm,
    NotInClass,
}

impl Classification {
    /// Invertible modulo the ideal (the first two classes).
    pub fn is_fredholm(self) -> bool {
        matches!(self, Classification::InvertibleModJ | Classification::Fredholm)
    }

    pub fn is_b_fredholm(self) -> bool {
        self != Classification::NotInClass
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::InvertibleModJ => "InvertibleModJ",
            Classification::Fredholm => "Fredholm",
            Classification::BFredholm => "BFredholm",
            Classification::NotInClass => "NotInClass",
        };
        f.write_str(s)
    }
}

pub fn classify(a: &BlockOperator) -> Classification {
    let mut any_zero = false;
    let mut all_invertible = true;
    for b in a.blocks() {
        let Block::Toeplitz(t) = b else { continue };
        let f = &t.symbol;
        if f.is_zero() {
            any_zero = true;
            continue;
        }
        if f.has_zero_on_circle() {
            return Classification::NotInClass;
        }
        if f.zeros().is_none() || f.winding_number() != Ok(0) {
            all_invertible = false;
        }
    }
    match (any_zero, all_invertible) {
        (true, _) => Classification::BFredholm,
        (false, true) => Classification::InvertibleModJ,
        (false, false) => Classification::Fredholm,
    }
}

/// What the witness uses on matrix blocks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MatrixWitness {
    /// The exact matrix Drazin inverse.
    #[default]
    Drazin,
    /// The zero matrix (the block lies in the ideal anyway).
    Zero,
}

/// Candidate Drazin inverse modulo the ideal with its certificate.
#[derive(Clone, Debug)]
pub struct DrazinWitness {
    pub inverse: BlockOperator,
    pub quotient_index: usize,
    /// `a a₀ - a₀ a`, `a₀ a a₀ - a₀`, `a^{p+1} a₀ - a^p`.
    pub defects: [BlockOperator; 3],
    pub defects_in_ideal: bool,
}

pub fn drazin_witness(a: &BlockOperator) -> Result<DrazinWitness, EngineError> {
    drazin_witness_with(a, MatrixWitness::Drazin)
}

pub fn drazin_witness_with(a: &BlockOperator, mode: MatrixWitness) -> Result<DrazinWitness, EngineError> {
    if classify(a) == Classification::NotInClass {
        return Err(EngineError::NotBFredholm);
    }
    let mut p = 0;
    let mut blocks = Vec::with_capacity(a.blocks().len());
    for b in a.blocks() {
        blocks.push(match b {
            Block::Toeplitz(t) if t.symbol.is_zero() => {
                p = p.max(1);
                Block::Toeplitz(ToeplitzBlock::pure(t.symbol.clone()))
            }
            Block::Toeplitz(t) => Block::Toeplitz(ToeplitzBlock::pure(t.symbol.invert()?)),
            Block::Matrix(m) => {
                let (d, k) = m.drazin()?;
                p = p.max(k);
                Block::Matrix(match mode {
                    MatrixWitness::Drazin => d,
                    MatrixWitness::Zero => ExactMatrix::zeros(m.rows(), m.cols()),
                })
            }
        });
    }
    let a0 = BlockOperator::new(blocks);
    let d1 = a.mul(&a0)?.sub(&a0.mul(a)?)?;
    let d2 = a0.mul(a)?.mul(&a0)?.sub(&a0)?;
    let ap = a.pow(p as u32)?;
    let d3 = ap.mul(a)?.mul(&a0)?.sub(&ap)?;
    let defects_in_ideal = d1.in_ideal() && d2.in_ideal() && d3.in_ideal();
    if !defects_in_ideal {
        return Err(EngineError::Consistency(format!("witness defects leave the ideal for {a}")));
    }
    Ok(DrazinWitness { inverse: a0, quotient_index: p, defects: [d1, d2, d3], defects_in_ideal })
}

/// `τ(a a₀ - a₀ a)` for a given candidate `a₀`, required to be an integer.
pub fn trace_index_with(a: &BlockOperator, a0: &BlockOperator) -> Result<i64, EngineError> {
    let c = a.mul(a0)?.sub(&a0.mul(a)?)?;
    commutator_trace(&c)
}

fn commutator_trace(c: &BlockOperator) -> Result<i64, EngineError> {
    let t = c.ideal_trace().map_err(|e| match e {
        OperatorError::NotInIdeal(k) => EngineError::Consistency(format!("commutator block {k} is not in the ideal")),
        e => e.into(),
    })?;
    match t.to_integer().and_then(|n| i64::try_from(n).ok()) {
        Some(n) => Ok(n),
        None => Err(EngineError::NonIntegerTrace { value: t.to_string(), dump: c.to_string() }),
    }
}

/// Index by the trace formula.
pub fn index_trace(a: &BlockOperator) -> Result<i64, EngineError> {
    let w = drazin_witness(a)?;
    commutator_trace(&w.defects[0])
}

/// Index as minus the total winding number of the nonzero symbols.
pub fn index_winding(a: &BlockOperator) -> Result<i64, EngineError> {
    if classify(a) == Classification::NotInClass {
        return Err(EngineError::NotBFredholm);
    }
    let mut total = 0;
    for b in a.blocks() {
        if let Block::Toeplitz(t) = b {
            if !t.symbol.is_zero() {
                total -= t.symbol.winding_number()?;
            }
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexReport {
    pub classification: Classification,
    pub index_trace: Option<i64>,
    pub index_winding: Option<i64>,
    pub quotient_index: Option<usize>,
    pub pathway_notes: Vec<String>,
    pub defects_in_ideal: bool,
    #[serde(skip)]
    pub witness: Option<DrazinWitness>,
}

impl IndexReport {
    /// The index by whichever route ran (they agree when both did).
    pub fn index(&self) -> Option<i64> {
        self.index_trace.or(self.index_winding)
    }
}

/// Runs every available route and cross-checks them.
pub fn analyze(a: &BlockOperator) -> Result<IndexReport, EngineError> {
    let classification = classify(a);
    let mut report = IndexReport {
        classification,
        index_trace: None,
        index_winding: None,
        quotient_index: None,
        pathway_notes: Vec::new(),
        defects_in_ideal: false,
        witness: None,
    };
    if classification == Classification::NotInClass {
        report.pathway_notes.push("a nonzero symbol vanishes on the unit circle; no index".into());
        return Ok(report);
    }
    report.index_winding = Some(index_winding(a)?);
    report.pathway_notes.push("index_winding: winding route".into());
    match drazin_witness(a) {
        Ok(w) => {
            report.index_trace = Some(commutator_trace(&w.defects[0])?);
            report.quotient_index = Some(w.quotient_index);
            report.defects_in_ideal = w.defects_in_ideal;
            report.witness = Some(w);
            report.pathway_notes.push("index_trace: trace route".into());
        }
        Err(EngineError::Operator(e)) if e.is_missing_split() => {
            report.pathway_notes.push(format!("trace route unavailable: {e}"));
        }
        Err(e) => return Err(e),
    }
    if let (Some(t), Some(w)) = (report.index_trace, report.index_winding) {
        if t != w {
            return Err(EngineError::Consistency(format!("trace index {t} differs from winding index {w} for {a}")));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as GR;
    use crate::finite_rank::FiniteRankOperator;
    use crate::sequence::RationalSequence;
    use crate::symbol::RationalSymbol;

    fn t(f: RationalSymbol) -> BlockOperator {
        BlockOperator::toeplitz(f)
    }

    fn zpow(k: i64) -> RationalSymbol {
        RationalSymbol::monomial(GR::one(), k)
    }

    fn jordan(n: usize) -> BlockOperator {
        BlockOperator::matrix(ExactMatrix::jordan_block(n, &GR::zero())).unwrap()
    }

    fn e0e0() -> FiniteRankOperator {
        FiniteRankOperator::rank_one(RationalSequence::unit(0), RationalSequence::unit(0))
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&t(zpow(1))), Classification::Fredholm);
        let b = BlockOperator::finite_rank(e0e0()).direct_sum(&jordan(3));
        assert_eq!(classify(&b), Classification::BFredholm);
        let bad = zpow(1).sub_scalar(&GR::one());
        assert_eq!(classify(&t(bad)), Classification::NotInClass);
        assert_eq!(classify(&t(zpow(0))), Classification::InvertibleModJ);
    }

    #[test]
    fn shift_index() {
        assert_eq!(index_trace(&t(zpow(1))).unwrap(), -1);
        assert_eq!(index_winding(&t(zpow(1))).unwrap(), -1);
        let w = drazin_witness(&t(zpow(1))).unwrap();
        assert_eq!(w.inverse, t(zpow(-1)));
        let a = t(zpow(2)).direct_sum(&jordan(3));
        assert_eq!(index_trace(&a).unwrap(), -2);
        assert_eq!(drazin_witness(&a).unwrap().quotient_index, 3);
        let fr = BlockOperator::finite_rank(e0e0()).direct_sum(&jordan(2));
        assert_eq!(index_trace(&fr).unwrap(), 0);
    }

    #[test]
    fn rational_symbol_index() {
        let f = RationalSymbol::factored(GR::one(), 0, &[(GR::ratio(1, 2), 2)], &[(GR::from_int(3), 1)]).unwrap();
        let r = analyze(&t(f)).unwrap();
        assert_eq!(r.index_trace, Some(-2));
        assert_eq!(r.index_winding, Some(-2));
    }
}
