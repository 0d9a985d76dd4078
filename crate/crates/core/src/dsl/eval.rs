use crate::error::SymbolError;
use crate::finite_rank::FiniteRankOperator;
use crate::matrix::ExactMatrix;
use crate::operator::{signature_string, BlockKind, BlockOperator};
use crate::scalar::GaussianRational as GR;
use crate::sequence::RationalSequence;
use crate::symbol::RationalSymbol;

use super::{DslError, OperatorExpr, SeqLit, SymExpr};

pub fn eval_symbol(e: &SymExpr) -> Result<RationalSymbol, SymbolError> {
    Ok(match e {
        SymExpr::Z => RationalSymbol::monomial(GR::one(), 1),
        SymExpr::Const(c) => RationalSymbol::constant(c.clone()),
        SymExpr::Neg(x) => eval_symbol(x)?.scale(&-GR::one()),
        SymExpr::Add(a, b) => eval_symbol(a)?.add(&eval_symbol(b)?),
        SymExpr::Sub(a, b) => eval_symbol(a)?.sub(&eval_symbol(b)?),
        SymExpr::Mul(a, b) => eval_symbol(a)?.mul(&eval_symbol(b)?),
        SymExpr::Div(a, b) => eval_symbol(a)?.div(&eval_symbol(b)?)?,
        SymExpr::Pow(x, k) => {
            let base = eval_symbol(x)?;
            let mut acc = RationalSymbol::constant(GR::one());
            for _ in 0..k.unsigned_abs() {
                acc = acc.mul(&base);
            }
            if *k < 0 {
                RationalSymbol::constant(GR::one()).div(&acc)?
            } else {
                acc
            }
        }
    })
}

fn eval_seq(s: &SeqLit) -> Result<RationalSequence, DslError> {
    Ok(match s {
        SeqLit::Fin(v) => RationalSequence::finite(v.clone()),
        SeqLit::Geo(r, start) => RationalSequence::geometric_from(r.clone(), *start)?,
        SeqLit::Unit(k) => RationalSequence::unit(*k),
    })
}

type Sig = Option<Vec<BlockKind>>;

fn unify(a: Sig, b: Sig, ctx: &OperatorExpr) -> Result<Sig, DslError> {
    match (a, b) {
        (None, x) | (x, None) => Ok(x),
        (Some(x), Some(y)) if x == y => Ok(Some(x)),
        (Some(x), Some(y)) => Err(DslError::Signature(format!(
            "{} vs {} in '{ctx}'",
            signature_string(&x),
            signature_string(&y)
        ))),
    }
}

/// Block signature of an expression; `None` when it is fixed only by
/// context (expressions built from `I` alone).
pub fn infer_signature(e: &OperatorExpr) -> Result<Option<Vec<BlockKind>>, DslError> {
    Ok(match e {
        OperatorExpr::Toeplitz(_) | OperatorExpr::FiniteRank(_) => Some(vec![BlockKind::Toeplitz]),
        OperatorExpr::Identity => None,
        OperatorExpr::Matrix(rows) => Some(vec![BlockKind::Matrix(rows.len())]),
        OperatorExpr::Scale(_, x) | OperatorExpr::Neg(x) => infer_signature(x)?,
        OperatorExpr::Add(a, b) | OperatorExpr::Sub(a, b) | OperatorExpr::Mul(a, b) => {
            unify(infer_signature(a)?, infer_signature(b)?, e)?
        }
        OperatorExpr::DirectSum(parts) => {
            let mut sig = Vec::new();
            for p in parts {
                sig.extend(infer_signature(p)?.unwrap_or_else(|| vec![BlockKind::Toeplitz]));
            }
            Some(sig)
        }
    })
}

/// Type-checks and evaluates an expression.
pub fn eval(e: &OperatorExpr) -> Result<BlockOperator, DslError> {
    let sig = infer_signature(e)?.unwrap_or_else(|| vec![BlockKind::Toeplitz]);
    eval_at(e, &sig)
}

fn eval_at(e: &OperatorExpr, sig: &[BlockKind]) -> Result<BlockOperator, DslError> {
    Ok(match e {
        OperatorExpr::Toeplitz(s) => BlockOperator::toeplitz(eval_symbol(s)?),
        OperatorExpr::Identity => BlockOperator::identity(sig),
        OperatorExpr::FiniteRank(pairs) => {
            let terms = pairs.iter().map(|(u, v)| Ok((eval_seq(u)?, eval_seq(v)?))).collect::<Result<_, DslError>>()?;
            BlockOperator::finite_rank(FiniteRankOperator::from_terms(terms))
        }
        OperatorExpr::Matrix(rows) => BlockOperator::matrix(ExactMatrix::from_rows(rows.clone()).map_err(
            |err| DslError::Signature(format!("bad matrix literal: {err}")),
        )?)?,
        OperatorExpr::Scale(c, x) => eval_at(x, sig)?.scale(c),
        OperatorExpr::Neg(x) => eval_at(x, sig)?.neg(),
        OperatorExpr::Add(a, b) => eval_at(a, sig)?.add(&eval_at(b, sig)?)?,
        OperatorExpr::Sub(a, b) => eval_at(a, sig)?.sub(&eval_at(b, sig)?)?,
        OperatorExpr::Mul(a, b) => eval_at(a, sig)?.mul(&eval_at(b, sig)?)?,
        OperatorExpr::DirectSum(parts) => {
            let mut acc: Option<BlockOperator> = None;
            for p in parts {
                let s = infer_signature(p)?.unwrap_or_else(|| vec![BlockKind::Toeplitz]);
                let op = eval_at(p, &s)?;
                acc = Some(match acc {
                    None => op,
                    Some(a) => a.direct_sum(&op),
                });
            }
            acc.expect("direct sums have at least two parts")
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use crate::engine::{index_trace, index_winding};

    fn run(s: &str) -> BlockOperator {
        eval(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn evaluates_and_indexes() {
        assert_eq!(index_winding(&run("T(z^3)")).unwrap(), -3);
        assert_eq!(index_trace(&run("T(z^2) (++) M[[0,1,0],[0,0,1],[0,0,0]]")).unwrap(), -2);
        assert_eq!(index_trace(&run("T((z-1/2)^2/(z-3))")).unwrap(), -2);
        let a = run("T(z)*T(z^-1)");
        let b = run("I - FR{e0|e0}");
        assert!(a.op_equal(&b).unwrap());
    }

    #[test]
    fn identity_takes_context() {
        let a = run("M[[1,2],[3,4]] - I");
        assert_eq!(a.entry(0, 0, 0).unwrap(), GR::zero());
        assert_eq!(run("I").signature(), vec![BlockKind::Toeplitz]);
        assert!(matches!(eval(&parse("T(z) + M[[1]]").unwrap()), Err(DslError::Signature(_))));
    }

    #[test]
    fn circle_errors_are_not_usage_errors() {
        let err = eval(&parse("T(1/(z-1))").unwrap()).unwrap_err();
        assert!(!err.is_usage());
    }
}
