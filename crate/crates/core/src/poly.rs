//! Dense univariate polynomials over ℚ(i), lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::GaussianRational as GR;

/// A polynomial with no trailing zero coefficients; the zero polynomial has
/// an empty coefficient list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<GR>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<GR>) -> Self {
        while coeffs.last().is_some_and(GR::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GR::one())
    }

    pub fn constant(c: GR) -> Self {
        Self::new(vec![c])
    }

    /// `c·z^k`.
    pub fn monomial(c: GR, k: usize) -> Self {
        let mut v = vec![GR::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::monomial(GR::one(), 1)
    }

    /// `z - a`.
    pub fn linear(a: &GR) -> Self {
        Self::new(vec![-a, GR::one()])
    }

    /// `Π (z - r)^m`.
    pub fn from_roots(roots: &[(GR, u32)]) -> Self {
        let mut p = Self::one();
        for (r, m) in roots {
            let lin = Self::linear(r);
            for _ in 0..*m {
                p = &p * &lin;
            }
        }
        p
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| GR::from_int(x)).collect())
    }

    pub fn coeffs(&self) -> &[GR] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<GR> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> GR {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> GR {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &GR) -> GR {
        let mut acc = GR::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn scale(&self, c: &GR) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GR::from_int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![GR::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs: v }
    }

    /// Multiplicity of `z = 0` as a root, and the cofactor.
    pub fn split_zero_root(&self) -> (usize, Self) {
        let v = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if self.is_zero() {
            return (0, Self::zero());
        }
        (v, Polynomial { coeffs: self.coeffs[v..].to_vec() })
    }

    /// Euclidean division. Panics when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv_lead = d.leading().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![GR::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv_lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient when `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Conjugate-reciprocal `z^n · conj(p(1/conj z))`, with `n` the degree.
    pub fn conj_reciprocal(&self) -> Self {
        Self::new(self.coeffs.iter().rev().map(GR::conj).collect())
    }

    /// Reversal `z^n · p(1/z)`.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// `p(z + b)`.
    pub fn taylor_shift(&self, b: &GR) -> Self {
        let lin = Self::new(vec![b.clone(), GR::one()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    /// Divides out `(z - r)` as often as possible; returns the multiplicity.
    pub fn deflate(&self, r: &GR) -> (u32, Self) {
        let lin = Self::linear(r);
        let mut p = self.clone();
        let mut m = 0;
        if p.is_zero() {
            return (0, p);
        }
        while !p.is_constant() && p.eval(r).is_zero() {
            p = p.exact_div(&lin).expect("root implies linear factor");
            m += 1;
        }
        (m, p)
    }
}

impl<'b> Add<&'b Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'b Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'b> Sub<&'b Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'b Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'b> Mul<&'b Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'b Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![GR::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})z", c)?,
                _ => write!(f, "({})z^{}", c, k)?,
            }
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
    fn normalizes_trailing_zeros() {
        let p = Polynomial::new(vec![q(1, 1), GR::zero(), GR::zero()]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Polynomial::new(vec![GR::zero()]).degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (z-1/2)(z-3) and (z-3)(z+1)
        let a = Polynomial::from_roots(&[(q(1, 2), 1), (q(3, 1), 1)]);
        let b = Polynomial::from_roots(&[(q(3, 1), 1), (q(-1, 1), 1)]);
        assert_eq!(a.gcd(&b), Polynomial::linear(&q(3, 1)));
        let (qq, r) = a.div_rem(&Polynomial::linear(&q(3, 1)));
        assert!(r.is_zero());
        assert_eq!(qq, Polynomial::linear(&q(1, 2)));
    }

    #[test]
    fn expand_product() {
        let p = &Polynomial::linear(&q(1, 2)) * &Polynomial::linear(&q(3, 1));
        assert_eq!(p.coeffs(), &[q(3, 2), q(-7, 2), q(1, 1)]);
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = Polynomial::from_ints(&[1, -2, 0, 5]);
        let b = GR::from_parts(1, 3, -1, 2);
        let s = p.taylor_shift(&b);
        for x in [q(0, 1), q(2, 1), q(-1, 3)] {
            assert_eq!(s.eval(&x), p.eval(&(&x + &b)));
        }
    }

    #[test]
    fn deflate_counts_multiplicity() {
        let p = Polynomial::from_roots(&[(q(1, 2), 3), (q(2, 1), 1)]);
        let (m, rest) = p.deflate(&q(1, 2));
        assert_eq!(m, 3);
        assert_eq!(rest, Polynomial::linear(&q(2, 1)));
    }

    #[test]
    fn conj_reciprocal_reflects_roots() {
        let a = GR::from_parts(1, 2, 1, 3);
        let p = Polynomial::linear(&a);
        let r = p.conj_reciprocal();
        // root of p* is 1/conj(a)
        assert!(r.eval(&a.conj().inv()).is_zero());
    }
}
