//! Block-diagonal operators: Toeplitz-class blocks `T(f) + F` on ℓ²(ℕ) and
//! finite square matrix blocks.
//!
//! Products of Toeplitz blocks use `T(f)T(g) = T(fg) - H(f, g)`, where
//! `H(f, g)_{ij} = Σ_{m>=0} f̂(i+m+1) ĝ(-j-m-1)` is materialized exactly as a
//! finite-rank operator.

use std::fmt;

use crate::error::{OperatorError, SymbolError};
use crate::finite_rank::FiniteRankOperator;
use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational as GR;
use crate::sequence::RationalSequence;
use crate::symbol::RationalSymbol;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToeplitzBlock {
    pub symbol: RationalSymbol,
    pub correction: FiniteRankOperator,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Toeplitz(ToeplitzBlock),
    Matrix(ExactMatrix),
}

/// Shape of one block: a Toeplitz block or an `n × n` matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Toeplitz,
    Matrix(usize),
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockKind::Toeplitz => write!(f, "Toeplitz"),
            BlockKind::Matrix(n) => write!(f, "Matrix({n})"),
        }
    }
}

pub fn signature_string(sig: &[BlockKind]) -> String {
    let parts: Vec<String> = sig.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(" ++ "))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    Add,
    Sub,
    Mul,
}

/// `T(f) u`.
pub fn toeplitz_apply(f: &RationalSymbol, u: &RationalSequence) -> Result<RationalSequence, SymbolError> {
    if f.is_zero() || u.is_zero() {
        return Ok(RationalSequence::zero());
    }
    let pf = f.laurent()?.mul(&u.generating_function());
    Ok(RationalSequence::from_fractions(&pf))
}

/// `T(f)^T v = T(f(1/z)) v`.
pub fn toeplitz_apply_transpose(f: &RationalSymbol, v: &RationalSequence) -> Result<RationalSequence, SymbolError> {
    toeplitz_apply(&f.reflect(), v)
}

/// `H(f, g) = T(fg) - T(f)T(g)`.
pub fn hankel_defect(f: &RationalSymbol, g: &RationalSymbol) -> Result<FiniteRankOperator, SymbolError> {
    if f.is_zero() || g.is_zero() {
        return Ok(FiniteRankOperator::zero());
    }
    let a = RationalSequence::from_fractions(&f.laurent()?).shift_left(1);
    let b = RationalSequence::from_fractions(&g.reflect().laurent()?).shift_left(1);
    Ok(FiniteRankOperator::hankel_gram(&a, &b))
}

/// `T(f) ∘ F`.
pub fn toeplitz_compose_left(f: &RationalSymbol, fr: &FiniteRankOperator) -> Result<FiniteRankOperator, SymbolError> {
    let terms = fr
        .terms()
        .iter()
        .map(|(u, v)| Ok((toeplitz_apply(f, u)?, v.clone())))
        .collect::<Result<Vec<_>, SymbolError>>()?;
    Ok(FiniteRankOperator::from_terms(terms))
}

/// `F ∘ T(g)`.
pub fn toeplitz_compose_right(fr: &FiniteRankOperator, g: &RationalSymbol) -> Result<FiniteRankOperator, SymbolError> {
    if g.is_zero() || fr.is_zero() {
        return Ok(FiniteRankOperator::zero());
    }
    let gt = g.reflect();
    let terms = fr
        .terms()
        .iter()
        .map(|(u, v)| Ok((u.clone(), toeplitz_apply(&gt, v)?)))
        .collect::<Result<Vec<_>, SymbolError>>()?;
    Ok(FiniteRankOperator::from_terms(terms))
}

impl ToeplitzBlock {
    pub fn new(symbol: RationalSymbol, correction: FiniteRankOperator) -> Self {
        ToeplitzBlock { symbol, correction }
    }

    pub fn pure(symbol: RationalSymbol) -> Self {
        Self::new(symbol, FiniteRankOperator::zero())
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<GR, SymbolError> {
        Ok(&self.symbol.fourier_coeff(i as i64 - j as i64)? + &self.correction.entry(i, j))
    }

    fn mul(&self, other: &Self) -> Result<Self, SymbolError> {
        let (f, g) = (&self.symbol, &other.symbol);
        let mut corr = self.correction.compose(&other.correction);
        if !other.correction.is_zero() && !f.is_zero() {
            corr = corr.add(&toeplitz_compose_left(f, &other.correction)?);
        }
        if !self.correction.is_zero() && !g.is_zero() {
            corr = corr.add(&toeplitz_compose_right(&self.correction, g)?);
        }
        corr = corr.sub(&hankel_defect(f, g)?);
        Ok(ToeplitzBlock { symbol: f.mul(g), correction: corr })
    }
}

impl Block {
    pub fn kind(&self) -> BlockKind {
        match self {
            Block::Toeplitz(_) => BlockKind::Toeplitz,
            Block::Matrix(m) => BlockKind::Matrix(m.rows()),
        }
    }

    pub fn identity(kind: BlockKind) -> Self {
        match kind {
            BlockKind::Toeplitz => Block::Toeplitz(ToeplitzBlock::pure(RationalSymbol::constant(GR::one()))),
            BlockKind::Matrix(n) => Block::Matrix(ExactMatrix::identity(n)),
        }
    }

    pub fn zero(kind: BlockKind) -> Self {
        match kind {
            BlockKind::Toeplitz => Block::Toeplitz(ToeplitzBlock::pure(RationalSymbol::zero())),
            BlockKind::Matrix(n) => Block::Matrix(ExactMatrix::zeros(n, n)),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<GR, OperatorError> {
        match self {
            Block::Toeplitz(t) => Ok(t.entry(i, j)?),
            Block::Matrix(m) => Ok(m.entry(i, j)?),
        }
    }
}

/// Direct sum of blocks; the element `a` of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockOperator {
    blocks: Vec<Block>,
}

impl BlockOperator {
    pub fn new(blocks: Vec<Block>) -> Self {
        BlockOperator { blocks }
    }

    pub fn toeplitz(symbol: RationalSymbol) -> Self {
        Self::new(vec![Block::Toeplitz(ToeplitzBlock::pure(symbol))])
    }

    pub fn toeplitz_with(symbol: RationalSymbol, correction: FiniteRankOperator) -> Self {
        Self::new(vec![Block::Toeplitz(ToeplitzBlock::new(symbol, correction))])
    }

    /// A pure finite-rank operator on one ℓ² block.
    pub fn finite_rank(correction: FiniteRankOperator) -> Self {
        Self::toeplitz_with(RationalSymbol::zero(), correction)
    }

    pub fn matrix(m: ExactMatrix) -> Result<Self, OperatorError> {
        if !m.is_square() {
            return Err(OperatorError::Matrix(crate::error::MatrixError::NotSquare { rows: m.rows(), cols: m.cols() }));
        }
        Ok(Self::new(vec![Block::Matrix(m)]))
    }

    pub fn identity(sig: &[BlockKind]) -> Self {
        Self::new(sig.iter().map(|k| Block::identity(*k)).collect())
    }

    pub fn zero(sig: &[BlockKind]) -> Self {
        Self::new(sig.iter().map(|k| Block::zero(*k)).collect())
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn signature(&self) -> Vec<BlockKind> {
        self.blocks.iter().map(Block::kind).collect()
    }

    /// `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        Self::new(blocks)
    }

    fn check_signature(&self, other: &Self) -> Result<(), OperatorError> {
        let (a, b) = (self.signature(), other.signature());
        if a != b {
            return Err(OperatorError::SignatureMismatch(format!(
                "{} vs {}",
                signature_string(&a),
                signature_string(&b)
            )));
        }
        Ok(())
    }

    pub fn arith(&self, other: &Self, op: OpKind) -> Result<Self, OperatorError> {
        self.check_signature(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(x, y)| -> Result<Block, OperatorError> {
                Ok(match (x, y) {
                    (Block::Toeplitz(a), Block::Toeplitz(b)) => Block::Toeplitz(match op {
                        OpKind::Add => ToeplitzBlock::new(a.symbol.add(&b.symbol), a.correction.add(&b.correction)),
                        OpKind::Sub => ToeplitzBlock::new(a.symbol.sub(&b.symbol), a.correction.sub(&b.correction)),
                        OpKind::Mul => a.mul(b)?,
                    }),
                    (Block::Matrix(a), Block::Matrix(b)) => Block::Matrix(match op {
                        OpKind::Add => a.add(b)?,
                        OpKind::Sub => a.sub(b)?,
                        OpKind::Mul => a.mul(b)?,
                    }),
                    _ => unreachable!("signatures checked"),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self::new(blocks))
    }

    pub fn add(&self, other: &Self) -> Result<Self, OperatorError> {
        self.arith(other, OpKind::Add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, OperatorError> {
        self.arith(other, OpKind::Sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, OperatorError> {
        self.arith(other, OpKind::Mul)
    }

    pub fn scale(&self, c: &GR) -> Self {
        Self::new(
            self.blocks
                .iter()
                .map(|b| match b {
                    Block::Toeplitz(t) => Block::Toeplitz(ToeplitzBlock::new(t.symbol.scale(c), t.correction.scale(c))),
                    Block::Matrix(m) => Block::Matrix(m.scale(c)),
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GR::one())
    }

    pub fn pow(&self, k: u32) -> Result<Self, OperatorError> {
        let mut acc = Self::identity(&self.signature());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `A - λe`.
    pub fn scalar_shift(&self, lambda: &GR) -> Self {
        Self::new(
            self.blocks
                .iter()
                .map(|b| match b {
                    Block::Toeplitz(t) => {
                        Block::Toeplitz(ToeplitzBlock::new(t.symbol.sub_scalar(lambda), t.correction.clone()))
                    }
                    Block::Matrix(m) => Block::Matrix(
                        m.sub(&ExactMatrix::identity(m.rows()).scale(lambda)).expect("square block"),
                    ),
                })
                .collect(),
        )
    }

    /// Adds `j` to the correction of Toeplitz block `index`.
    pub fn perturb(&self, index: usize, j: &FiniteRankOperator) -> Result<Self, OperatorError> {
        let mut blocks = self.blocks.clone();
        match blocks.get_mut(index) {
            Some(Block::Toeplitz(t)) => t.correction = t.correction.add(j),
            Some(Block::Matrix(_)) => {
                return Err(OperatorError::SignatureMismatch(format!("block {index} is a matrix block")))
            }
            None => return Err(OperatorError::BlockOutOfRange(index)),
        }
        Ok(Self::new(blocks))
    }

    pub fn entry(&self, block: usize, i: usize, j: usize) -> Result<GR, OperatorError> {
        self.blocks.get(block).ok_or(OperatorError::BlockOutOfRange(block))?.entry(i, j)
    }

    /// Exact operator equality.
    pub fn op_equal(&self, other: &Self) -> Result<bool, OperatorError> {
        self.check_signature(other)?;
        // corrections are canonical, so structural equality decides
        Ok(self.blocks == other.blocks)
    }

    /// Equality modulo the finite-rank ideal.
    pub fn quotient_equal(&self, other: &Self) -> Result<bool, OperatorError> {
        self.check_signature(other)?;
        Ok(self.blocks.iter().zip(&other.blocks).all(|(a, b)| match (a, b) {
            (Block::Toeplitz(x), Block::Toeplitz(y)) => x.symbol == y.symbol,
            _ => true,
        }))
    }

    pub fn in_ideal(&self) -> bool {
        self.blocks.iter().all(|b| match b {
            Block::Toeplitz(t) => t.symbol.is_zero(),
            Block::Matrix(_) => true,
        })
    }

    /// `τ` on an ideal element: finite-rank traces plus matrix traces.
    pub fn ideal_trace(&self) -> Result<GR, OperatorError> {
        let mut acc = GR::zero();
        for (k, b) in self.blocks.iter().enumerate() {
            match b {
                Block::Toeplitz(t) => {
                    if !t.symbol.is_zero() {
                        return Err(OperatorError::NotInIdeal(k));
                    }
                    acc += &t.correction.trace();
                }
                Block::Matrix(m) => acc += &m.trace()?,
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for BlockOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| match b {
                Block::Toeplitz(t) if t.correction.is_zero() => format!("T({})", t.symbol),
                Block::Toeplitz(t) => format!("T({}) + [{}]", t.symbol, t.correction),
                Block::Matrix(m) => format!("M{m}"),
            })
            .collect();
        write!(f, "{}", parts.join(" (++) "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GR {
        GR::ratio(n, d)
    }

    fn s() -> BlockOperator {
        BlockOperator::toeplitz(RationalSymbol::monomial(GR::one(), 1))
    }

    fn s_star() -> BlockOperator {
        BlockOperator::toeplitz(RationalSymbol::monomial(GR::one(), -1))
    }

    fn e0e0() -> FiniteRankOperator {
        FiniteRankOperator::rank_one(RationalSequence::unit(0), RationalSequence::unit(0))
    }

    #[test]
    fn shift_products() {
        let ss = s().mul(&s_star()).unwrap();
        let want = BlockOperator::toeplitz_with(RationalSymbol::constant(GR::one()), e0e0().scale(&q(-1, 1)));
        assert!(ss.op_equal(&want).unwrap());
        let id = BlockOperator::identity(&[BlockKind::Toeplitz]);
        assert!(s_star().mul(&s()).unwrap().op_equal(&id).unwrap());
        assert!(!ss.op_equal(&id).unwrap());
        assert!(ss.quotient_equal(&id).unwrap());
    }

    #[test]
    fn entries() {
        assert_eq!(s().entry(0, 1, 0).unwrap(), q(1, 1));
        assert_eq!(s().entry(0, 0, 0).unwrap(), q(0, 1));
        let a = s().perturb(0, &e0e0()).unwrap();
        assert_eq!(a.entry(0, 0, 0).unwrap(), q(1, 1));
        let f = RationalSymbol::factored(GR::one(), 0, &[], &[(q(2, 1), 1)]).unwrap();
        assert_eq!(BlockOperator::toeplitz(f).entry(0, 0, 0).unwrap(), q(-1, 2));
    }

    #[test]
    fn scalar_shift_examples() {
        let a = s().scalar_shift(&q(1, 2));
        match &a.blocks()[0] {
            Block::Toeplitz(t) => assert_eq!(t.symbol.num().coeffs(), &[q(-1, 2), q(1, 1)]),
            _ => unreachable!(),
        }
        let m = BlockOperator::matrix(ExactMatrix::from_ints(&[&[0]])).unwrap().scalar_shift(&q(1, 1));
        assert_eq!(m.entry(0, 0, 0).unwrap(), q(-1, 1));
    }

    #[test]
    fn product_entries_match_window() {
        // T(f)T(g) with rational symbols, checked against a padded truncated product
        let f = RationalSymbol::factored(GR::one(), 0, &[(q(1, 3), 1)], &[(q(1, 2), 1), (q(3, 1), 1)]).unwrap();
        let g = RationalSymbol::factored(q(2, 1), -1, &[(q(4, 1), 1)], &[(GR::from_parts(0, 1, -1, 2), 2)]).unwrap();
        let p = BlockOperator::toeplitz(f.clone()).mul(&BlockOperator::toeplitz(g.clone())).unwrap();
        // Σ_{k>=0} f̂(i-k) ĝ(k-j) as a closed-form pairing of two sequences
        for i in 0..4i64 {
            for j in 0..4i64 {
                let fi = f.mul(&RationalSymbol::monomial(GR::one(), -i)).reflect();
                let gj = g.mul(&RationalSymbol::monomial(GR::one(), j));
                let x = RationalSequence::from_fractions(&fi.laurent().unwrap());
                let y = RationalSequence::from_fractions(&gj.laurent().unwrap());
                assert_eq!(p.entry(0, i as usize, j as usize).unwrap(), x.pairing(&y), "({i},{j})");
            }
        }
        // polynomial symbols: finite sums are exact
        let a = RationalSymbol::new(crate::poly::Polynomial::from_ints(&[1, 2, 3]), crate::poly::Polynomial::one(), -1).unwrap();
        let b = RationalSymbol::new(crate::poly::Polynomial::from_ints(&[2, 0, -1]), crate::poly::Polynomial::one(), -2).unwrap();
        let p = BlockOperator::toeplitz(a.clone()).mul(&BlockOperator::toeplitz(b.clone())).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let want: GR = (0..20)
                    .map(|k: i64| &a.fourier_coeff(i - k).unwrap() * &b.fourier_coeff(k - j).unwrap())
                    .sum();
                assert_eq!(p.entry(0, i as usize, j as usize).unwrap(), want);
            }
        }
    }

    #[test]
    fn finite_rank_against_toeplitz() {
        // (T(f) F)(i,j) and (F T(f))(i,j) by explicit sums for a polynomial symbol
        let f = RationalSymbol::new(crate::poly::Polynomial::from_ints(&[1, -1, 2]), crate::poly::Polynomial::one(), -1).unwrap();
        let fr = FiniteRankOperator::rank_one(
            RationalSequence::finite(vec![q(1, 1), q(2, 1)]),
            RationalSequence::finite(vec![q(0, 1), q(1, 1), q(-1, 1)]),
        );
        let t = BlockOperator::toeplitz(f.clone());
        let fb = BlockOperator::finite_rank(fr.clone());
        let left = t.mul(&fb).unwrap();
        let right = fb.mul(&t).unwrap();
        for i in 0..6i64 {
            for j in 0..6i64 {
                let l: GR = (0..12).map(|k: i64| &f.fourier_coeff(i - k).unwrap() * &fr.entry(k as usize, j as usize)).sum();
                let r: GR = (0..12).map(|k: i64| &fr.entry(i as usize, k as usize) * &f.fourier_coeff(k - j).unwrap()).sum();
                assert_eq!(left.entry(0, i as usize, j as usize).unwrap(), l);
                assert_eq!(right.entry(0, i as usize, j as usize).unwrap(), r);
            }
        }
    }
}
