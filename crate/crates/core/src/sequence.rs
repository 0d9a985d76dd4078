//! Exact square-summable sequences: a finite head plus finitely many
//! polynomial×geometric tails, with the bilinear pairing `Σ v_n x_n`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::error::SequenceError;
use crate::fractions::{PartialFractions, PoleTerm};
use crate::poly::Polynomial;
use crate::scalar::GaussianRational as GR;
use crate::series::{binomial_poly, geometric_moment, to_rising_binomial_basis};

/// `x_n = poly(n) · ratio^n` for every `n >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tail {
    pub ratio: GR,
    pub poly: Polynomial,
}

/// `x_n = head[n] + Σ tails(n)`, where `head[n]` is zero past its length.
///
/// Canonical form: tails sorted by ratio with distinct nonzero ratios of
/// modulus below one and nonzero polynomials; no trailing zeros in `head`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalSequence {
    head: Vec<GR>,
    tails: Vec<Tail>,
}

/// Linearly independent building blocks: unit vectors and `n^s r^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Unit(usize),
    Power { ratio: GR, exponent: usize },
}

impl Atom {
    pub fn to_sequence(&self) -> RationalSequence {
        match self {
            Atom::Unit(k) => RationalSequence::unit(*k),
            Atom::Power { ratio, exponent } => RationalSequence {
                head: Vec::new(),
                tails: vec![Tail { ratio: ratio.clone(), poly: Polynomial::monomial(GR::one(), *exponent) }],
            },
        }
    }
}

impl RationalSequence {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `e_k`.
    pub fn unit(k: usize) -> Self {
        let mut head = vec![GR::zero(); k + 1];
        head[k] = GR::one();
        RationalSequence { head, tails: Vec::new() }
    }

    pub fn finite(values: Vec<GR>) -> Self {
        Self::build(values, Vec::new())
    }

    /// `x_n = r^n`.
    pub fn geometric(r: GR) -> Result<Self, SequenceError> {
        Self::with_tails(Vec::new(), vec![(r, Polynomial::one(), 0)])
    }

    /// `x_n = r^{n - start}` for `n >= start`, zero before.
    pub fn geometric_from(r: GR, start: usize) -> Result<Self, SequenceError> {
        let scale = if start == 0 { GR::one() } else { r.pow(-(start as i64)) };
        if r.is_zero() {
            return Ok(Self::unit(start));
        }
        Self::with_tails(Vec::new(), vec![(r, Polynomial::constant(scale), start as i64)])
    }

    /// Head plus tails `(ratio, poly, start)` meaning `poly(n)·ratio^n` for
    /// `n >= start`.
    pub fn with_tails(head: Vec<GR>, tails: Vec<(GR, Polynomial, i64)>) -> Result<Self, SequenceError> {
        let mut head = head;
        let mut out = Vec::new();
        for (ratio, poly, start) in tails {
            if start < 0 {
                return Err(SequenceError::NegativeStart(start));
            }
            if ratio.abs2() >= One::one() {
                return Err(SequenceError::NotSquareSummable(ratio.to_string()));
            }
            // subtract the part of the full tail that lies before `start`
            for n in 0..start as usize {
                let v = &poly.eval(&GR::from_int(n as i64)) * &ratio.pow(n as i64);
                if head.len() <= n {
                    head.resize(n + 1, GR::zero());
                }
                head[n] -= &v;
            }
            out.push(Tail { ratio, poly });
        }
        Ok(Self::build(head, out))
    }

    fn build(mut head: Vec<GR>, tails: Vec<Tail>) -> Self {
        let mut merged: BTreeMap<GR, Polynomial> = BTreeMap::new();
        for t in tails {
            if t.ratio.is_zero() {
                // 0^n contributes only at n = 0
                let v = t.poly.coeff(0);
                if head.is_empty() {
                    head.push(GR::zero());
                }
                head[0] += &v;
                continue;
            }
            let e = merged.entry(t.ratio).or_default();
            *e = &*e + &t.poly;
        }
        while head.last().is_some_and(GR::is_zero) {
            head.pop();
        }
        let tails = merged
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(ratio, poly)| Tail { ratio, poly })
            .collect();
        RationalSequence { head, tails }
    }

    pub fn head(&self) -> &[GR] {
        &self.head
    }

    pub fn tails(&self) -> &[Tail] {
        &self.tails
    }

    pub fn is_zero(&self) -> bool {
        self.head.is_empty() && self.tails.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.tails.is_empty()
    }

    /// Value at index `n`.
    pub fn get(&self, n: usize) -> GR {
        let mut v = self.head.get(n).cloned().unwrap_or_default();
        let x = GR::from_int(n as i64);
        for t in &self.tails {
            v += &(&t.poly.eval(&x) * &t.ratio.pow(n as i64));
        }
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.head.len().max(other.head.len());
        let head = (0..n)
            .map(|k| {
                let a = self.head.get(k).cloned().unwrap_or_default();
                let b = other.head.get(k).cloned().unwrap_or_default();
                &a + &b
            })
            .collect();
        let tails = self.tails.iter().chain(&other.tails).cloned().collect();
        Self::build(head, tails)
    }

    pub fn scale(&self, c: &GR) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalSequence {
            head: self.head.iter().map(|x| x * c).collect(),
            tails: self.tails.iter().map(|t| Tail { ratio: t.ratio.clone(), poly: t.poly.scale(c) }).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GR::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `n -> x_{n+s}`.
    pub fn shift_left(&self, s: usize) -> Self {
        let head = self.head.iter().skip(s).cloned().collect();
        let shift = GR::from_int(s as i64);
        let tails = self
            .tails
            .iter()
            .map(|t| Tail { ratio: t.ratio.clone(), poly: t.poly.taylor_shift(&shift).scale(&t.ratio.pow(s as i64)) })
            .collect();
        Self::build(head, tails)
    }

    /// `n -> x_{n-d}` for `n >= d`, zero before.
    pub fn shift_right(&self, d: usize) -> Self {
        if d == 0 {
            return self.clone();
        }
        let mut head = vec![GR::zero(); d];
        head.extend(self.head.iter().cloned());
        let back = GR::from_int(-(d as i64));
        let tails = self
            .tails
            .iter()
            .map(|t| (t.ratio.clone(), t.poly.taylor_shift(&back).scale(&t.ratio.pow(-(d as i64))), d as i64))
            .collect();
        Self::with_tails(head, tails).expect("ratios already validated")
    }

    /// Bilinear pairing `Σ_{n>=0} v_n x_n` in closed form.
    pub fn pairing(&self, x: &Self) -> GR {
        let mut acc = GR::zero();
        // head(v) against all of x
        for (n, v) in self.head.iter().enumerate() {
            if !v.is_zero() {
                acc += &(v * &x.get(n));
            }
        }
        // tails(v) against head(x)
        for (n, xv) in x.head.iter().enumerate() {
            if xv.is_zero() {
                continue;
            }
            let nn = GR::from_int(n as i64);
            for t in &self.tails {
                acc += &(&(&t.poly.eval(&nn) * &t.ratio.pow(n as i64)) * xv);
            }
        }
        for a in &self.tails {
            for b in &x.tails {
                acc += &geometric_moment(&(&a.poly * &b.poly), &(&a.ratio * &b.ratio));
            }
        }
        acc
    }

    /// Coordinates in the atom basis.
    pub fn atoms(&self) -> Vec<(Atom, GR)> {
        let mut out: Vec<(Atom, GR)> = self
            .head
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (Atom::Unit(k), v.clone()))
            .collect();
        for t in &self.tails {
            for (e, c) in t.poly.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((Atom::Power { ratio: t.ratio.clone(), exponent: e }, c.clone()));
                }
            }
        }
        out
    }

    pub fn from_atoms<'a>(coords: impl IntoIterator<Item = (&'a Atom, GR)>) -> Self {
        let mut head: Vec<GR> = Vec::new();
        let mut tails = Vec::new();
        for (atom, c) in coords {
            if c.is_zero() {
                continue;
            }
            match atom {
                Atom::Unit(k) => {
                    if head.len() <= *k {
                        head.resize(k + 1, GR::zero());
                    }
                    head[*k] += &c;
                }
                Atom::Power { ratio, exponent } => tails.push(Tail {
                    ratio: ratio.clone(),
                    poly: Polynomial::monomial(c, *exponent),
                }),
            }
        }
        Self::build(head, tails)
    }

    /// Generating function `Σ x_n z^n`; every pole lies outside the disk.
    pub fn generating_function(&self) -> PartialFractions {
        let mut poles = Vec::new();
        for t in &self.tails {
            // Σ C(n+k-1, k-1) r^n z^n = (1 - r z)^{-k} = (-r)^{-k} (z - 1/r)^{-k}
            let a = to_rising_binomial_basis(&t.poly);
            let neg_r = -&t.ratio;
            let coeffs: Vec<GR> = a.iter().enumerate().map(|(k, ak)| ak * &neg_r.pow(-(k as i64 + 1))).collect();
            poles.push(PoleTerm { pole: t.ratio.inv(), coeffs });
        }
        poles.sort_by(|x, y| x.pole.cmp(&y.pole));
        PartialFractions { poly: Polynomial::new(self.head.clone()), poles }
    }

    /// Nonnegative-index coefficients of a partial-fraction expansion: the
    /// polynomial part becomes the head and each pole outside the disk a
    /// tail. Poles inside the disk contribute only negative indices and are
    /// ignored.
    pub fn from_fractions(pf: &PartialFractions) -> Self {
        let mut tails = Vec::new();
        for t in pf.poles.iter().filter(|t| !t.is_inner()) {
            let b_inv = t.pole.inv();
            let mut poly = Polynomial::zero();
            for (k, c) in t.coeffs.iter().enumerate() {
                let k = k + 1;
                let sign = if k % 2 == 0 { GR::one() } else { -GR::one() };
                let w = &(c * &sign) * &b_inv.pow(k as i64);
                poly = &poly + &binomial_poly(k as i64 - 1, k - 1).scale(&w);
            }
            tails.push(Tail { ratio: b_inv, poly });
        }
        Self::build(pf.poly.coeffs().to_vec(), tails)
    }
}

impl fmt::Display for RationalSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self.head.iter().map(ToString::to_string).collect();
        write!(f, "fin[{}]", head.join(","))?;
        for t in &self.tails {
            write!(f, " + ({})·({})^n", t.poly, t.ratio)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GR {
        GR::ratio(n, d)
    }

    #[test]
    fn pairing_examples() {
        let e0 = RationalSequence::unit(0);
        assert_eq!(e0.pairing(&e0), q(1, 1));
        let g = RationalSequence::geometric(q(1, 2)).unwrap();
        assert_eq!(g.pairing(&g), q(4, 3));
        let fin = RationalSequence::finite(vec![q(1, 1), q(2, 1), q(3, 1)]);
        assert_eq!(RationalSequence::unit(3).pairing(&fin), q(0, 1));
    }

    #[test]
    fn rejects_non_square_summable() {
        assert!(RationalSequence::geometric(q(1, 1)).is_err());
        assert!(RationalSequence::geometric(GR::from_parts(3, 5, 4, 5)).is_err());
        assert!(RationalSequence::geometric(q(-9, 10)).is_ok());
    }

    #[test]
    fn canonical_merging() {
        let a = RationalSequence::geometric(q(1, 2)).unwrap();
        let z = a.sub(&a);
        assert!(z.is_zero());
        let b = a.add(&a);
        assert_eq!(b.tails().len(), 1);
        assert_eq!(b.get(3), q(2, 8));
    }

    #[test]
    fn start_offsets_and_shifts() {
        let g = RationalSequence::geometric_from(q(1, 3), 2).unwrap();
        assert_eq!(g.get(0), q(0, 1));
        assert_eq!(g.get(1), q(0, 1));
        assert_eq!(g.get(2), q(1, 1));
        assert_eq!(g.get(4), q(1, 9));
        let l = g.shift_left(3);
        for n in 0..6 {
            assert_eq!(l.get(n), g.get(n + 3));
        }
        let r = g.shift_right(2);
        for n in 0..8 {
            let want = if n < 2 { q(0, 1) } else { g.get(n - 2) };
            assert_eq!(r.get(n), want);
        }
    }

    #[test]
    fn generating_function_round_trip() {
        let s = RationalSequence::with_tails(
            vec![q(1, 1), q(0, 1), q(-2, 1)],
            vec![
                (q(1, 2), Polynomial::from_ints(&[1, 0, 3]), 0),
                (GR::from_parts(0, 1, 1, 3), Polynomial::from_ints(&[2, 1]), 1),
            ],
        )
        .unwrap();
        let pf = s.generating_function();
        for n in 0..10 {
            assert_eq!(pf.coefficient(n), s.get(n as usize));
        }
        assert_eq!(RationalSequence::from_fractions(&pf), s);
    }

    #[test]
    fn atoms_round_trip() {
        let s = RationalSequence::with_tails(vec![q(1, 1), q(5, 1)], vec![(q(1, 4), Polynomial::from_ints(&[0, 2]), 0)])
            .unwrap();
        let atoms = s.atoms();
        let back = RationalSequence::from_atoms(atoms.iter().map(|(a, c)| (a, c.clone())));
        assert_eq!(back, s);
    }
}
