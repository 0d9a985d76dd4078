//! Seeded generators for the verification suites and property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsl::{OperatorExpr, SeqLit, SymExpr};
use crate::finite_rank::FiniteRankOperator;
use crate::matrix::ExactMatrix;
use crate::operator::{Block, BlockKind, BlockOperator, ToeplitzBlock};
use crate::scalar::GaussianRational as GR;
use crate::sequence::RationalSequence;
use crate::symbol::RationalSymbol;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small Gaussian rational with numerators in `-3..=3` and denominators in `1..=4`.
pub fn small_scalar(rng: &mut impl Rng) -> GR {
    let re = GR::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=4));
    if rng.gen_bool(0.3) {
        &re + &(&GR::i() * &GR::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=4)))
    } else {
        re
    }
}

pub fn nonzero_scalar(rng: &mut impl Rng) -> GR {
    loop {
        let c = small_scalar(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A finitely supported sequence of length at most `len`.
pub fn finite_sequence(rng: &mut impl Rng, len: usize) -> RationalSequence {
    let n = rng.gen_range(1..=len);
    RationalSequence::finite((0..n).map(|_| small_scalar(rng)).collect())
}

/// A sequence that may carry one geometric tail.
pub fn tailed_sequence(rng: &mut impl Rng) -> RationalSequence {
    let head = finite_sequence(rng, 3);
    if rng.gen_bool(0.5) {
        return head;
    }
    let ratios = [GR::ratio(1, 2), GR::ratio(-1, 3), GR::from_parts(0, 1, 1, 2), GR::from_parts(1, 4, 1, 4)];
    let r = ratios.choose(rng).expect("nonempty").clone();
    head.add(&RationalSequence::geometric(r).expect("ratio inside the disk").scale(&nonzero_scalar(rng)))
}

/// Sum of at most `max_rank` outer products of finite sequences.
pub fn finite_rank(rng: &mut impl Rng, max_rank: usize, len: usize) -> FiniteRankOperator {
    let k = rng.gen_range(1..=max_rank);
    FiniteRankOperator::from_terms((0..k).map(|_| (finite_sequence(rng, len), finite_sequence(rng, len))).collect())
}

pub fn matrix(rng: &mut impl Rng, n: usize) -> ExactMatrix {
    let rows = (0..n).map(|_| (0..n).map(|_| small_scalar(rng)).collect()).collect();
    ExactMatrix::from_rows(rows).expect("square")
}

/// An ideal element of the given signature: random rank-≤`max_rank`
/// corrections on ℓ² blocks, random small matrices on matrix blocks.
pub fn ideal_element(rng: &mut impl Rng, sig: &[BlockKind], max_rank: usize) -> BlockOperator {
    BlockOperator::new(
        sig.iter()
            .map(|k| match k {
                BlockKind::Toeplitz => {
                    Block::Toeplitz(ToeplitzBlock::new(RationalSymbol::zero(), finite_rank(rng, max_rank, 4)))
                }
                BlockKind::Matrix(n) => Block::Matrix(matrix(rng, *n)),
            })
            .collect(),
    )
}

/// Invertible matrix with small entries: unit lower times unit upper triangular.
pub fn invertible_matrix(rng: &mut impl Rng, n: usize) -> ExactMatrix {
    let mut l = ExactMatrix::identity(n);
    let mut u = ExactMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, GR::from_int(rng.gen_range(-2..=2)));
            u.set(j, i, GR::from_int(rng.gen_range(-2..=2)));
        }
        u.set(i, i, nonzero_scalar(rng));
    }
    l.mul(&u).expect("square factors")
}

/// A Gaussian-rational point off the unit circle, inside or outside.
pub fn root_off_circle(rng: &mut impl Rng, inside: bool) -> GR {
    loop {
        let r = small_scalar(rng);
        let r = if inside { r } else { &r * &GR::from_int(3) };
        let m = r.abs2();
        let one = crate::scalar::rat(1, 1);
        if (inside && m < one && !r.is_zero()) || (!inside && m > one) {
            return r;
        }
    }
}

/// Symbol with a circle split: up to two zeros and two poles, random shift.
pub fn split_symbol(rng: &mut impl Rng) -> RationalSymbol {
    let mut zeros = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let inside = rng.gen_bool(0.5);
        zeros.push((root_off_circle(rng, inside), rng.gen_range(1..=2)));
    }
    let mut poles = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let inside = rng.gen_bool(0.5);
        poles.push((root_off_circle(rng, inside), 1));
    }
    let shift = rng.gen_range(-2..=2);
    RationalSymbol::factored(nonzero_scalar(rng), shift, &zeros, &poles).expect("roots chosen off the circle")
}

/// Random symbol expression. With `laurent_only` the result is a Laurent
/// polynomial; otherwise it may divide by linear factors off the circle.
pub fn sym_expr<R: Rng>(rng: &mut R, depth: usize, laurent_only: bool) -> SymExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 => SymExpr::Const(nonzero_scalar(rng)),
            1 => SymExpr::Pow(Box::new(SymExpr::Z), rng.gen_range(-2..=3)),
            _ => SymExpr::Z,
        };
    }
    let sub = |rng: &mut R| Box::new(sym_expr(rng, depth - 1, laurent_only));
    match rng.gen_range(0..if laurent_only { 5 } else { 6 }) {
        0 => SymExpr::Add(sub(rng), sub(rng)),
        1 => SymExpr::Sub(sub(rng), sub(rng)),
        2 => SymExpr::Mul(sub(rng), sub(rng)),
        3 => SymExpr::Neg(sub(rng)),
        4 => {
            let inside = rng.gen_bool(0.5);
            let c = SymExpr::Const(root_off_circle(rng, inside));
            SymExpr::Pow(Box::new(SymExpr::Sub(Box::new(SymExpr::Z), Box::new(c))), rng.gen_range(1..=2))
        }
        _ => {
            let inside = rng.gen_bool(0.5);
            let c = SymExpr::Const(root_off_circle(rng, inside));
            SymExpr::Div(sub(rng), Box::new(SymExpr::Sub(Box::new(SymExpr::Z), Box::new(c))))
        }
    }
}

fn seq_lit(rng: &mut impl Rng, finite_only: bool) -> SeqLit {
    match rng.gen_range(0..if finite_only { 2 } else { 3 }) {
        0 => SeqLit::Unit(rng.gen_range(0..=4)),
        1 => SeqLit::Fin((0..rng.gen_range(1..=4)).map(|_| small_scalar(rng)).collect()),
        _ => SeqLit::Geo(root_off_circle(rng, true), rng.gen_range(0..=2)),
    }
}

/// Random operator expression of depth at most `depth` on a single ℓ²
/// block. With `laurent_only` every atom has a finite band.
pub fn operator_expr<R: Rng>(rng: &mut R, depth: usize, laurent_only: bool) -> OperatorExpr {
    if depth <= 1 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..5) {
            0 => OperatorExpr::Identity,
            1 => OperatorExpr::FiniteRank(
                (0..rng.gen_range(1..=2)).map(|_| (seq_lit(rng, laurent_only), seq_lit(rng, laurent_only))).collect(),
            ),
            _ => OperatorExpr::Toeplitz(sym_expr(rng, 2, laurent_only)),
        };
    }
    let sub = |rng: &mut R| Box::new(operator_expr(rng, depth - 1, laurent_only));
    match rng.gen_range(0..6) {
        0 => OperatorExpr::Add(sub(rng), sub(rng)),
        1 => OperatorExpr::Sub(sub(rng), sub(rng)),
        2 | 3 => OperatorExpr::Mul(sub(rng), sub(rng)),
        4 => OperatorExpr::Neg(sub(rng)),
        _ => OperatorExpr::Scale(nonzero_scalar(rng), sub(rng)),
    }
}

/// Random expression that may also carry matrix blocks and direct sums.
pub fn block_expr<R: Rng>(rng: &mut R, depth: usize) -> OperatorExpr {
    let part = |rng: &mut R| {
        if rng.gen_bool(0.3) {
            let n = rng.gen_range(1..=3);
            OperatorExpr::Matrix(matrix(rng, n).to_rows())
        } else {
            operator_expr(rng, depth, false)
        }
    };
    if rng.gen_bool(0.4) {
        OperatorExpr::DirectSum((0..rng.gen_range(2..=3)).map(|_| part(rng)).collect())
    } else {
        part(rng)
    }
}
