//! Rational Toeplitz symbols `z^w · num(z) / den(z)` over ℚ(i).
//!
//! A symbol remembers the exact roots of its numerator and denominator when
//! they are Gaussian rationals. Pole roots are enough for Fourier
//! coefficients and Toeplitz actions; inversion also needs the zeros.
//! Winding numbers never need roots.

use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::error::SymbolError;
use crate::fractions::{merge_poles, PartialFractions};
use crate::poly::Polynomial;
use crate::roots::{count_zeros_in_disk, gaussian_roots, has_zero_on_circle};
use crate::scalar::GaussianRational as GR;

/// Zeros and poles of a symbol sorted by position relative to the circle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircleSplit {
    pub scale: GR,
    pub inner_zeros: Vec<(GR, u32)>,
    pub outer_zeros: Vec<(GR, u32)>,
    pub inner_poles: Vec<(GR, u32)>,
    pub outer_poles: Vec<(GR, u32)>,
}

#[derive(Clone, Debug)]
pub struct RationalSymbol {
    num: Polynomial,
    den: Polynomial,
    shift: i64,
    zeros: Option<Vec<(GR, u32)>>,
    poles: Option<Vec<(GR, u32)>>,
}

impl PartialEq for RationalSymbol {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den && self.shift == other.shift
    }
}

impl Eq for RationalSymbol {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymOp {
    Add,
    Sub,
    Mul,
}

fn on_circle(r: &GR) -> bool {
    r.abs2() == One::one()
}

fn partition(rs: &[(GR, u32)]) -> (Vec<(GR, u32)>, Vec<(GR, u32)>) {
    rs.iter().cloned().partition(|(r, _)| r.abs2() < One::one())
}

impl RationalSymbol {
    pub fn zero() -> Self {
        RationalSymbol {
            num: Polynomial::zero(),
            den: Polynomial::one(),
            shift: 0,
            zeros: Some(Vec::new()),
            poles: Some(Vec::new()),
        }
    }

    pub fn constant(c: GR) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · z^k`.
    pub fn monomial(c: GR, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalSymbol {
            num: Polynomial::constant(c),
            den: Polynomial::one(),
            shift: k,
            zeros: Some(Vec::new()),
            poles: Some(Vec::new()),
        }
    }

    /// `z^shift · num / den` in reduced form.
    pub fn new(num: Polynomial, den: Polynomial, shift: i64) -> Result<Self, SymbolError> {
        Self::with_hints(num, den, shift, &[])
    }

    /// As [`RationalSymbol::new`], trying `hints` first when factoring.
    pub fn with_hints(num: Polynomial, den: Polynomial, shift: i64, hints: &[GR]) -> Result<Self, SymbolError> {
        if den.is_zero() {
            return Err(SymbolError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let (kn, num) = num.split_zero_root();
        let (kd, den) = den.split_zero_root();
        let lead = den.leading();
        let num = num.scale(&lead.inv());
        let den = den.monic();
        if has_zero_on_circle(&den)? {
            return Err(SymbolError::PoleOnCircle);
        }
        let zeros = gaussian_roots(&num, hints);
        let poles = gaussian_roots(&den, hints);
        Ok(RationalSymbol { num, den, shift: shift + kn as i64 - kd as i64, zeros, poles })
    }

    /// `scale · z^shift · Π (z - a)^m / Π (z - b)^n` with its split attached.
    pub fn factored(scale: GR, shift: i64, zeros: &[(GR, u32)], poles: &[(GR, u32)]) -> Result<Self, SymbolError> {
        if let Some((r, _)) = zeros.iter().chain(poles).find(|(r, _)| on_circle(r)) {
            return Err(SymbolError::FactorOnCircle(r.to_string()));
        }
        if scale.is_zero() {
            return Ok(Self::zero());
        }
        let mut shift = shift;
        let mut zs: Vec<(GR, u32)> = Vec::new();
        let mut ps: Vec<(GR, u32)> = Vec::new();
        for (r, m) in merge_poles(zeros, &[]) {
            if r.is_zero() {
                shift += m as i64;
            } else {
                zs.push((r, m));
            }
        }
        for (r, m) in merge_poles(poles, &[]) {
            if r.is_zero() {
                shift -= m as i64;
                continue;
            }
            // cancel against equal zeros
            let mut m = m;
            if let Some(z) = zs.iter_mut().find(|(a, _)| *a == r) {
                let c = z.1.min(m);
                z.1 -= c;
                m -= c;
            }
            if m > 0 {
                ps.push((r, m));
            }
        }
        zs.retain(|(_, m)| *m > 0);
        Ok(RationalSymbol {
            num: Polynomial::from_roots(&zs).scale(&scale),
            den: Polynomial::from_roots(&ps),
            shift,
            zeros: Some(zs),
            poles: Some(ps),
        })
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `true` when the symbol is a Laurent polynomial.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn zeros(&self) -> Option<&[(GR, u32)]> {
        self.zeros.as_deref()
    }

    pub fn poles(&self) -> Option<&[(GR, u32)]> {
        self.poles.as_deref()
    }

    pub fn has_poles_factored(&self) -> bool {
        self.poles.is_some()
    }

    pub fn split(&self) -> Option<CircleSplit> {
        let zeros = self.zeros.as_ref()?;
        let poles = self.poles.as_ref()?;
        let (inner_zeros, outer_zeros) = partition(zeros);
        let (inner_poles, outer_poles) = partition(poles);
        Some(CircleSplit { scale: self.num.leading(), inner_zeros, outer_zeros, inner_poles, outer_poles })
    }

    fn hints(&self) -> Vec<GR> {
        self.zeros.iter().chain(&self.poles).flatten().map(|(r, _)| r.clone()).collect()
    }

    pub fn arith(&self, other: &Self, op: SymOp) -> Self {
        let mut hints = self.hints();
        hints.extend(other.hints());
        let result = match op {
            SymOp::Mul => {
                if self.is_zero() || other.is_zero() {
                    return Self::zero();
                }
                Self::with_hints(&self.num * &other.num, &self.den * &other.den, self.shift + other.shift, &hints)
            }
            SymOp::Add | SymOp::Sub => {
                let w = self.shift.min(other.shift);
                let a = &self.num.shift_up((self.shift - w) as usize) * &other.den;
                let b = &other.num.shift_up((other.shift - w) as usize) * &self.den;
                let num = if op == SymOp::Add { &a + &b } else { &a - &b };
                Self::with_hints(num, &self.den * &other.den, w, &hints)
            }
        };
        result.expect("poles of the result divide the operand denominators")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.arith(other, SymOp::Add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.arith(other, SymOp::Sub)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.arith(other, SymOp::Mul)
    }

    pub fn scale(&self, c: &GR) -> Self {
        self.mul(&Self::constant(c.clone()))
    }

    /// `f - λ`.
    pub fn sub_scalar(&self, lambda: &GR) -> Self {
        self.sub(&Self::constant(lambda.clone()))
    }

    pub fn invert(&self) -> Result<Self, SymbolError> {
        if self.is_zero() {
            return Err(SymbolError::ZeroSymbol);
        }
        let zeros = self.zeros.clone().ok_or(SymbolError::MissingSplit("zeros of the numerator"))?;
        if zeros.iter().any(|(r, _)| on_circle(r)) {
            return Err(SymbolError::PoleOnCircle);
        }
        let lead = self.num.leading();
        Ok(RationalSymbol {
            num: self.den.scale(&lead.inv()),
            den: self.num.monic(),
            shift: -self.shift,
            zeros: self.poles.clone(),
            poles: Some(zeros),
        })
    }

    /// `f / g`; fails when `g` vanishes on the circle.
    pub fn div(&self, other: &Self) -> Result<Self, SymbolError> {
        if other.is_zero() {
            return Err(SymbolError::ZeroSymbol);
        }
        if other.zeros.is_some() {
            return Ok(self.mul(&other.invert()?));
        }
        let mut hints = self.hints();
        hints.extend(other.hints());
        Self::with_hints(&self.num * &other.den, &self.den * &other.num, self.shift - other.shift, &hints)
    }

    pub fn pow(&self, k: i64) -> Result<Self, SymbolError> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut acc = Self::constant(GR::one());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// `f(1/z)`.
    pub fn reflect(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.deg0() as i64;
        let dd = self.den.deg0() as i64;
        let invert_roots = |rs: &Vec<(GR, u32)>| rs.iter().map(|(r, _)| r.inv()).collect::<Vec<_>>();
        let mut hints = Vec::new();
        hints.extend(self.zeros.iter().flat_map(invert_roots));
        hints.extend(self.poles.iter().flat_map(invert_roots));
        Self::with_hints(self.num.reversed(), self.den.reversed(), dd - dn - self.shift, &hints)
            .expect("reflection keeps poles off the circle")
    }

    pub fn winding_number(&self) -> Result<i64, SymbolError> {
        if self.is_zero() {
            return Err(SymbolError::ZeroSymbol);
        }
        if has_zero_on_circle(&self.num)? {
            return Err(SymbolError::ZeroOnCircle);
        }
        let zn = count_zeros_in_disk(&self.num)? as i64;
        let zd = count_zeros_in_disk(&self.den)? as i64;
        Ok(self.shift + zn - zd)
    }

    /// `true` when the numerator vanishes somewhere on the circle.
    pub fn has_zero_on_circle(&self) -> bool {
        !self.is_zero() && has_zero_on_circle(&self.num).expect("nonzero numerator")
    }

    /// Partial-fraction model of the Laurent expansion on the circle.
    pub fn laurent(&self) -> Result<PartialFractions, SymbolError> {
        let poles = self.poles.as_ref().ok_or(SymbolError::MissingSplit("poles of the symbol"))?;
        if self.is_zero() {
            return Ok(PartialFractions::zero());
        }
        let g = self.num.shift_up(self.shift.max(0) as usize);
        let lead = self.den.leading();
        let mut all = poles.clone();
        if self.shift < 0 {
            all = merge_poles(&all, &[(GR::zero(), (-self.shift) as u32)]);
        }
        Ok(PartialFractions::decompose(&g.scale(&lead.inv()), &all))
    }

    pub fn fourier_coeff(&self, n: i64) -> Result<GR, SymbolError> {
        if self.is_laurent_polynomial() {
            let k = n - self.shift;
            let c = if k < 0 { GR::zero() } else { self.num.coeff(k as usize) };
            return Ok(&c * &self.den.leading().inv());
        }
        Ok(self.laurent()?.coefficient(n))
    }

    /// Exact value at `z`, or `None` at a pole.
    pub fn eval(&self, z: &GR) -> Option<GR> {
        let d = self.den.eval(z);
        if d.is_zero() || (z.is_zero() && self.shift < 0) {
            return None;
        }
        Some(&(&self.num.eval(z) / &d) * &z.pow(self.shift))
    }
}

impl fmt::Display for RationalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "({})", self.num)?;
        if !self.den.is_constant() || !self.den.leading().is_one() {
            write!(f, "/({})", self.den)?;
        }
        if self.shift != 0 {
            write!(f, "*z^{}", self.shift)?;
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

    fn z() -> RationalSymbol {
        RationalSymbol::monomial(GR::one(), 1)
    }

    fn lin(a: GR) -> RationalSymbol {
        RationalSymbol::factored(GR::one(), 0, &[(a, 1)], &[]).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(RationalSymbol::new(Polynomial::z(), Polynomial::one(), 0).unwrap(), z());
        let s = RationalSymbol::new(Polynomial::one(), Polynomial::linear(&q(1, 2)), 0).unwrap();
        assert_eq!(s.poles().unwrap(), &[(q(1, 2), 1)]);
        assert!(matches!(
            RationalSymbol::new(Polynomial::one(), Polynomial::linear(&q(1, 1)), 0),
            Err(SymbolError::PoleOnCircle)
        ));
        assert!(matches!(
            RationalSymbol::factored(GR::one(), 0, &[(GR::i(), 1)], &[]),
            Err(SymbolError::FactorOnCircle(_))
        ));
        let s = lin(q(1, 2));
        assert_eq!(s.split().unwrap().inner_zeros, vec![(q(1, 2), 1)]);
        assert_eq!(RationalSymbol::factored(GR::one(), 2, &[], &[]).unwrap(), RationalSymbol::monomial(GR::one(), 2));
    }

    #[test]
    fn arithmetic() {
        let zi = RationalSymbol::monomial(GR::one(), -1);
        assert_eq!(z().mul(&zi), RationalSymbol::constant(GR::one()));
        assert!(z().add(&z().scale(&q(-1, 1))).is_zero());
        let p = lin(q(1, 2)).mul(&lin(q(3, 1)));
        assert_eq!(p.num(), &Polynomial::new(vec![q(3, 2), q(-7, 2), q(1, 1)]));
        assert!(p.split().is_some());
    }

    #[test]
    fn inversion() {
        assert_eq!(z().invert().unwrap(), RationalSymbol::monomial(GR::one(), -1));
        let f = lin(q(1, 2));
        let g = f.invert().unwrap();
        assert_eq!(f.mul(&g), RationalSymbol::constant(GR::one()));
        assert!(matches!(RationalSymbol::zero().invert(), Err(SymbolError::ZeroSymbol)));
    }

    #[test]
    fn winding() {
        assert_eq!(z().winding_number().unwrap(), 1);
        assert_eq!(lin(q(1, 2)).mul(&lin(q(3, 1))).winding_number().unwrap(), 1);
        let f = RationalSymbol::factored(GR::one(), -1, &[(q(2, 1), 1)], &[]).unwrap();
        assert_eq!(f.winding_number().unwrap(), -1);
        let bad = RationalSymbol::new(Polynomial::linear(&q(1, 1)), Polynomial::one(), 0).unwrap();
        assert!(matches!(bad.winding_number(), Err(SymbolError::ZeroOnCircle)));
    }

    #[test]
    fn fourier_coefficients() {
        assert_eq!(z().fourier_coeff(1).unwrap(), q(1, 1));
        assert_eq!(z().fourier_coeff(0).unwrap(), q(0, 1));
        let f = RationalSymbol::new(Polynomial::one(), Polynomial::linear(&q(1, 2)), 0).unwrap();
        assert_eq!(f.fourier_coeff(-1).unwrap(), q(1, 1));
        assert_eq!(f.fourier_coeff(-2).unwrap(), q(1, 2));
        assert_eq!(f.fourier_coeff(0).unwrap(), q(0, 1));
        let g = RationalSymbol::new(Polynomial::one(), Polynomial::linear(&q(2, 1)), 0).unwrap();
        assert_eq!(g.fourier_coeff(0).unwrap(), q(-1, 2));
        assert_eq!(g.fourier_coeff(1).unwrap(), q(-1, 4));
    }

    #[test]
    fn reflection() {
        let f = RationalSymbol::factored(q(2, 1), -1, &[(q(1, 3), 2)], &[(q(5, 2), 1), (GR::from_parts(0, 1, 1, 2), 1)])
            .unwrap();
        let r = f.reflect();
        for n in -5..=5 {
            assert_eq!(r.fourier_coeff(n).unwrap(), f.fourier_coeff(-n).unwrap());
        }
        assert_eq!(r.reflect(), f);
    }

    #[test]
    fn repeated_factors_merge() {
        let f = RationalSymbol::factored(GR::one(), 0, &[], &[(q(1, 4), 1), (q(1, 4), 1)]).unwrap();
        assert_eq!(f.poles().unwrap(), &[(q(1, 4), 2)]);
        assert_eq!(f.fourier_coeff(-3).unwrap(), q(1, 2));
    }
}
