//! The operator expression language.
//!
//! ```text
//! sum    := expr ('(++)' expr)*
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom | scalar '*' factor | '-' factor | '(' sum ')'
//! atom   := 'T' '(' symexpr ')' | 'I' | 'FR' '{' pair (';' pair)* '}' | 'M' matrix
//! pair   := seq '|' seq
//! seq    := 'fin' '[' scalars ']' | 'geo' '(' scalar (';' int)? ')' | 'e' int
//! ```
//!
//! Symbol expressions are rational expressions in `z` with `+ - * / ^`,
//! implicit multiplication by juxtaposition, and scalar literals such as
//! `3/2`, `1/2i` or `(3/2+1/2i)`. `I` takes its block signature from context
//! and defaults to a single ℓ² block.

mod eval;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

use crate::error::{OperatorError, SequenceError, SymbolError};
use crate::scalar::GaussianRational as GR;

pub use eval::{eval, eval_symbol, infer_signature};
pub use parser::{parse, parse_symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("parse error at {line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("signature mismatch: {0}")]
    Signature(String),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

impl DslError {
    fn parse(line: usize, col: usize, message: impl Into<String>) -> Self {
        DslError::Parse { line, col, message: message.into() }
    }

    /// Parse and signature errors are usage errors; the rest are
    /// mathematical preconditions.
    pub fn is_usage(&self) -> bool {
        matches!(self, DslError::Parse { .. } | DslError::Signature(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymExpr {
    Z,
    Const(GR),
    Neg(Box<SymExpr>),
    Add(Box<SymExpr>, Box<SymExpr>),
    Sub(Box<SymExpr>, Box<SymExpr>),
    Mul(Box<SymExpr>, Box<SymExpr>),
    Div(Box<SymExpr>, Box<SymExpr>),
    Pow(Box<SymExpr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqLit {
    Fin(Vec<GR>),
    /// `x_n = r^{n-s}` for `n >= s`.
    Geo(GR, usize),
    Unit(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorExpr {
    Toeplitz(SymExpr),
    Identity,
    FiniteRank(Vec<(SeqLit, SeqLit)>),
    Matrix(Vec<Vec<GR>>),
    Scale(GR, Box<OperatorExpr>),
    Neg(Box<OperatorExpr>),
    Add(Box<OperatorExpr>, Box<OperatorExpr>),
    Sub(Box<OperatorExpr>, Box<OperatorExpr>),
    Mul(Box<OperatorExpr>, Box<OperatorExpr>),
    DirectSum(Vec<OperatorExpr>),
}

/// Scalar literal as the parser reads it back.
pub fn scalar_literal(c: &GR) -> String {
    use num_traits::{Signed, Zero};
    if c.im.is_zero() && !c.re.is_negative() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

fn scalars(v: &[GR]) -> String {
    v.iter().map(scalar_literal).collect::<Vec<_>>().join(",")
}

// precedence levels: 0 sum/direct sum, 1 additive, 2 multiplicative, 3 unary, 4 power/atom

impl SymExpr {
    fn prec(&self) -> u8 {
        match self {
            SymExpr::Add(..) | SymExpr::Sub(..) => 1,
            SymExpr::Mul(..) | SymExpr::Div(..) => 2,
            SymExpr::Neg(_) => 3,
            SymExpr::Pow(..) => 4,
            SymExpr::Z | SymExpr::Const(_) => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.prec() < min;
        if paren {
            write!(f, "(")?;
        }
        match self {
            SymExpr::Z => write!(f, "z")?,
            SymExpr::Const(c) => write!(f, "({c})")?,
            SymExpr::Neg(x) => {
                write!(f, "-")?;
                x.write(f, 3)?;
            }
            SymExpr::Add(a, b) | SymExpr::Sub(a, b) => {
                a.write(f, 1)?;
                write!(f, "{}", if matches!(self, SymExpr::Add(..)) { " + " } else { " - " })?;
                b.write(f, 2)?;
            }
            SymExpr::Mul(a, b) | SymExpr::Div(a, b) => {
                a.write(f, 2)?;
                write!(f, "{}", if matches!(self, SymExpr::Mul(..)) { "*" } else { "/" })?;
                b.write(f, 3)?;
            }
            SymExpr::Pow(x, k) => {
                x.write(f, 5)?;
                write!(f, "^{k}")?;
            }
        }
        if paren {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

impl fmt::Display for SeqLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqLit::Fin(v) => write!(f, "fin[{}]", scalars(v)),
            SeqLit::Geo(r, 0) => write!(f, "geo({})", scalar_literal(r)),
            SeqLit::Geo(r, s) => write!(f, "geo({};{s})", scalar_literal(r)),
            SeqLit::Unit(k) => write!(f, "e{k}"),
        }
    }
}

impl OperatorExpr {
    fn prec(&self) -> u8 {
        match self {
            OperatorExpr::DirectSum(_) => 0,
            OperatorExpr::Add(..) | OperatorExpr::Sub(..) => 1,
            OperatorExpr::Mul(..) => 2,
            OperatorExpr::Scale(..) | OperatorExpr::Neg(_) => 3,
            _ => 4,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.prec() < min;
        if paren {
            write!(f, "(")?;
        }
        match self {
            OperatorExpr::Toeplitz(s) => write!(f, "T({s})")?,
            OperatorExpr::Identity => write!(f, "I")?,
            OperatorExpr::FiniteRank(pairs) => {
                let p: Vec<String> = pairs.iter().map(|(u, v)| format!("{u}|{v}")).collect();
                write!(f, "FR{{{}}}", p.join("; "))?;
            }
            OperatorExpr::Matrix(rows) => {
                let r: Vec<String> = rows.iter().map(|row| format!("[{}]", scalars(row))).collect();
                write!(f, "M[{}]", r.join(","))?;
            }
            OperatorExpr::Scale(c, x) => {
                write!(f, "({c}) * ")?;
                x.write(f, 3)?;
            }
            OperatorExpr::Neg(x) => {
                write!(f, "-")?;
                x.write(f, 3)?;
            }
            OperatorExpr::Add(a, b) | OperatorExpr::Sub(a, b) => {
                a.write(f, 1)?;
                write!(f, "{}", if matches!(self, OperatorExpr::Add(..)) { " + " } else { " - " })?;
                b.write(f, 2)?;
            }
            OperatorExpr::Mul(a, b) => {
                a.write(f, 2)?;
                write!(f, " * ")?;
                b.write(f, 3)?;
            }
            OperatorExpr::DirectSum(parts) => {
                for (k, p) in parts.iter().enumerate() {
                    if k > 0 {
                        write!(f, " (++) ")?;
                    }
                    p.write(f, 1)?;
                }
            }
        }
        if paren {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}
