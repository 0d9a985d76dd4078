//! The finite-rank ideal: sums of outer products `u ⊗ v` acting by
//! `x ↦ Σ pairing(v, x)·u`, with the trace `Σ pairing(v_k, u_k)`.
//!
//! Every operator is kept compressed: all vectors are expanded in the atom
//! basis (unit vectors and `n^s r^n`), the coefficient matrix
//! `M = Σ coef(u_k) coef(v_k)^T` is formed, and its reduced-row-echelon rank
//! factorization gives the stored terms. Since atoms are linearly
//! independent, `M` determines the operator, so the compressed form is
//! canonical: structural equality is operator equality and the term count is
//! the exact rank.

use std::collections::BTreeMap;
use std::fmt;

use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational as GR;
use crate::sequence::{Atom, RationalSequence};
use crate::series::{power_geometric_sums, split_shift};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FiniteRankOperator {
    terms: Vec<(RationalSequence, RationalSequence)>,
}

impl FiniteRankOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `u ⊗ v`.
    pub fn rank_one(u: RationalSequence, v: RationalSequence) -> Self {
        Self::from_terms(vec![(u, v)])
    }

    pub fn from_terms(terms: Vec<(RationalSequence, RationalSequence)>) -> Self {
        compress(terms)
    }

    pub fn terms(&self) -> &[(RationalSequence, RationalSequence)] {
        &self.terms
    }

    pub fn rank(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn entry(&self, i: usize, j: usize) -> GR {
        self.terms.iter().map(|(u, v)| &u.get(i) * &v.get(j)).sum()
    }

    pub fn apply(&self, x: &RationalSequence) -> RationalSequence {
        self.terms
            .iter()
            .fold(RationalSequence::zero(), |acc, (u, v)| acc.add(&u.scale(&v.pairing(x))))
    }

    pub fn add(&self, other: &Self) -> Self {
        compress(self.terms.iter().chain(&other.terms).cloned().collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-GR::one()))
    }

    pub fn scale(&self, c: &GR) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        compress(self.terms.iter().map(|(u, v)| (u.scale(c), v.clone())).collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (u, v) in &self.terms {
            for (u2, v2) in &other.terms {
                let c = v.pairing(u2);
                if !c.is_zero() {
                    terms.push((u.scale(&c), v2.clone()));
                }
            }
        }
        compress(terms)
    }

    /// `L ∘ self` for a linear map `L` given by its action on vectors.
    pub fn map_left(&self, l: impl Fn(&RationalSequence) -> RationalSequence) -> Self {
        compress(self.terms.iter().map(|(u, v)| (l(u), v.clone())).collect())
    }

    /// `self ∘ R`, where `rt` is the transpose action of `R`.
    pub fn map_right(&self, rt: impl Fn(&RationalSequence) -> RationalSequence) -> Self {
        compress(self.terms.iter().map(|(u, v)| (u.clone(), rt(v))).collect())
    }

    pub fn transpose(&self) -> Self {
        compress(self.terms.iter().map(|(u, v)| (v.clone(), u.clone())).collect())
    }

    /// `τ(F) = Σ pairing(v_k, u_k)`.
    pub fn trace(&self) -> GR {
        self.terms.iter().map(|(u, v)| v.pairing(u)).sum()
    }

    /// The operator `G_{ij} = Σ_{m>=0} a_{i+m} b_{j+m}`.
    pub fn hankel_gram(a: &RationalSequence, b: &RationalSequence) -> Self {
        let mut terms = Vec::new();
        // a's head against all of b
        for (d, c) in a.head().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..=d {
                terms.push((RationalSequence::unit(i), b.shift_left(d - i).scale(c)));
            }
        }
        let a_tail = RationalSequence::with_tails(
            Vec::new(),
            a.tails().iter().map(|t| (t.ratio.clone(), t.poly.clone(), 0)).collect(),
        )
        .expect("tails of a valid sequence");
        // a's tails against b's head
        for (e, c) in b.head().iter().enumerate() {
            if c.is_zero() || a_tail.is_zero() {
                continue;
            }
            for j in 0..=e {
                terms.push((a_tail.shift_left(e - j).scale(c), RationalSequence::unit(j)));
            }
        }
        // tail against tail: P(i+m) = Σ_s P_s(i) m^s, likewise Q
        for ta in a.tails() {
            for tb in b.tails() {
                let ps = split_shift(&ta.poly);
                let qs = split_shift(&tb.poly);
                let x = &ta.ratio * &tb.ratio;
                let sums = power_geometric_sums(ps.len() + qs.len(), &x);
                for (s, p_s) in ps.iter().enumerate() {
                    let u = RationalSequence::with_tails(Vec::new(), vec![(ta.ratio.clone(), p_s.clone(), 0)])
                        .expect("ratio already valid");
                    let mut w = crate::poly::Polynomial::zero();
                    for (t, q_t) in qs.iter().enumerate() {
                        w = &w + &q_t.scale(&sums[s + t]);
                    }
                    let w = RationalSequence::with_tails(Vec::new(), vec![(tb.ratio.clone(), w, 0)])
                        .expect("ratio already valid");
                    terms.push((u, w));
                }
            }
        }
        compress(terms)
    }
}

fn compress(terms: Vec<(RationalSequence, RationalSequence)>) -> FiniteRankOperator {
    let terms: Vec<_> = terms.into_iter().filter(|(u, v)| !u.is_zero() && !v.is_zero()).collect();
    if terms.is_empty() {
        return FiniteRankOperator::zero();
    }
    let coords: Vec<(Vec<(Atom, GR)>, Vec<(Atom, GR)>)> = terms.iter().map(|(u, v)| (u.atoms(), v.atoms())).collect();
    let mut left: BTreeMap<Atom, usize> = BTreeMap::new();
    let mut right: BTreeMap<Atom, usize> = BTreeMap::new();
    for (cu, cv) in &coords {
        for (a, _) in cu {
            left.entry(a.clone()).or_insert(0);
        }
        for (a, _) in cv {
            right.entry(a.clone()).or_insert(0);
        }
    }
    for (k, v) in left.values_mut().enumerate() {
        *v = k;
    }
    for (k, v) in right.values_mut().enumerate() {
        *v = k;
    }
    let mut m = ExactMatrix::zeros(left.len(), right.len());
    for (cu, cv) in &coords {
        for (a, x) in cu {
            for (b, y) in cv {
                let (i, j) = (left[a], right[b]);
                let cur = m.get(i, j).clone();
                m.set(i, j, &cur + &(x * y));
            }
        }
    }
    let (r, pivots) = m.rref();
    let left_atoms: Vec<&Atom> = left.keys().collect();
    let right_atoms: Vec<&Atom> = right.keys().collect();
    let terms = pivots
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            let u = RationalSequence::from_atoms(left_atoms.iter().enumerate().map(|(i, a)| (*a, m.get(i, p).clone())));
            let v = RationalSequence::from_atoms(right_atoms.iter().enumerate().map(|(j, a)| (*a, r.get(k, j).clone())));
            (u, v)
        })
        .collect();
    FiniteRankOperator { terms }
}

impl fmt::Display for FiniteRankOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(u, v)| format!("({u}) ⊗ ({v})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GR {
        GR::ratio(n, d)
    }

    fn e(k: usize) -> RationalSequence {
        RationalSequence::unit(k)
    }

    #[test]
    fn compose_examples() {
        let p = FiniteRankOperator::rank_one(e(0), e(0));
        assert_eq!(p.compose(&p), p);
        let n = FiniteRankOperator::rank_one(e(0), e(1));
        assert!(n.compose(&n).is_zero());
        assert!(p.add(&p.scale(&q(-1, 1))).is_zero());
    }

    #[test]
    fn trace_examples() {
        let g = RationalSequence::geometric(q(1, 2)).unwrap();
        assert_eq!(FiniteRankOperator::rank_one(e(0), e(0)).trace(), q(1, 1));
        assert_eq!(FiniteRankOperator::rank_one(g.clone(), g.clone()).trace(), q(4, 3));
        assert_eq!(FiniteRankOperator::rank_one(e(0), e(1)).trace(), q(0, 1));
        assert_eq!(FiniteRankOperator::rank_one(g, e(0)).entry(2, 0), q(1, 4));
    }

    #[test]
    fn cancellation_across_terms() {
        let u = RationalSequence::finite(vec![q(1, 1), q(2, 1)]);
        let v = RationalSequence::geometric(q(1, 3)).unwrap();
        let f = FiniteRankOperator::from_terms(vec![(u.clone(), v.clone()), (u.neg(), v.clone())]);
        assert!(f.is_zero());
        // u⊗v + u⊗w = u⊗(v+w) has rank one
        let w = e(4);
        let f = FiniteRankOperator::from_terms(vec![(u.clone(), v.clone()), (u.clone(), w.clone())]);
        assert_eq!(f.rank(), 1);
        assert_eq!(f.entry(1, 4), q(164, 81));
    }

    #[test]
    fn hankel_gram_matches_partial_sums() {
        let a = RationalSequence::with_tails(vec![q(1, 1), q(-1, 1)], vec![(q(1, 2), crate::poly::Polynomial::from_ints(&[1, 1]), 0)])
            .unwrap();
        let b = RationalSequence::with_tails(vec![q(0, 1), q(3, 1)], vec![(GR::from_parts(0, 1, 1, 3), crate::poly::Polynomial::one(), 0)])
            .unwrap();
        let g = FiniteRankOperator::hankel_gram(&a, &b);
        for i in 0..4 {
            for j in 0..4 {
                // exact value via pairing of shifted sequences
                let want = a.shift_left(i).pairing(&b.shift_left(j));
                assert_eq!(g.entry(i, j), want, "({i},{j})");
            }
        }
    }
}
