//! The exact scalar field ℚ(i).
//!
//! Every value in the workbench is a [`GaussianRational`]: a complex number
//! whose real and imaginary parts are arbitrary-precision rationals. Both
//! parts are kept in lowest terms by `num_rational`, so structural equality
//! is mathematical equality.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ExactError;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Builds the rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact complex number `re + im·i` with rational parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

/// Field operation selector for [`GaussianRational::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(n)))
    }

    /// `n/d` as a real Gaussian rational.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::real(rat(n, d))
    }

    /// `(a/b) + (c/d)·i`.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussianRational { re: rat(a, b), im: rat(c, d) }
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// Exact squared modulus `re² + im²`.
    pub fn abs2(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.abs2();
        Ok(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self * &other.checked_inv()?)
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self, ExactError> {
        Ok(match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
            ArithOp::Div => self.checked_div(other)?,
        })
    }

    /// Integer power; negative exponents invert (panics on `0^-k`).
    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.inv() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational { re: &self.re * r, im: &self.im * r }
    }

    /// Returns the integer value when `self` is a real integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.im.is_zero() && self.re.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    /// Exact square root in ℚ(i), if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.im.is_zero() {
            if !self.re.is_negative() {
                return rational_sqrt(&self.re).map(Self::real);
            }
            let s = rational_sqrt(&-&self.re)?;
            return Some(GaussianRational { re: Rational::zero(), im: s });
        }
        // x² - y² = a, 2xy = b, x² = (a + |z|)/2
        let m = rational_sqrt(&self.abs2())?;
        let two = rat(2, 1);
        let x = rational_sqrt(&((&self.re + &m) / &two))?;
        if x.is_zero() {
            return None;
        }
        let y = &self.im / (&two * &x);
        Some(GaussianRational { re: x, im: y })
    }

    /// Lossy conversion for floating-point oracles in tests and examples.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

impl<'b> Add<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'b GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'b> Sub<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'b GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'b> Mul<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'b GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'b> Div<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &'b GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for GaussianRational {
    fn sum<I: Iterator<Item = GaussianRational>>(iter: I) -> Self {
        iter.fold(GaussianRational::zero(), |acc, x| acc + x)
    }
}

/// Prints `re`, `im i`, or `re±im i` with exact fractions and no spaces,
/// e.g. `1/2-1/2i`. The output is accepted back by [`FromStr`] and by the
/// expression language.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, v: &Rational| -> fmt::Result {
            if v.is_one() {
                write!(f, "i")
            } else {
                write!(f, "{}i", v)
            }
        };
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-")?;
            }
            return imag(f, &self.im.abs());
        }
        write!(f, "{}", self.re)?;
        write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
        imag(f, &self.im.abs())
    }
}

impl FromStr for GaussianRational {
    type Err = ExactError;

    /// Accepts `a`, `a/b`, `ci`, `c/di`, `i`, `-i` and sums `x+yi` / `x-yi`,
    /// optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(s.to_string());
        let mut t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.starts_with('(') && t.ends_with(')') {
            t = t[1..t.len() - 1].to_string();
        }
        if t.is_empty() {
            return Err(bad());
        }
        // split at a +/- that is not the leading sign
        let split = t
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (first, second) = match split {
            Some(i) => (&t[..i], Some(&t[i..])),
            None => (t.as_str(), None),
        };
        let parse_term = |term: &str| -> Result<GaussianRational, ExactError> {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(term)),
            };
            let (imaginary, body) = match body.strip_suffix('i') {
                Some(b) => (true, b),
                None => (false, body),
            };
            let value = if body.is_empty() {
                if !imaginary {
                    return Err(bad());
                }
                Rational::one()
            } else {
                parse_rational(body).ok_or_else(bad)?
            };
            let value = if neg { -value } else { value };
            Ok(if imaginary {
                GaussianRational { re: Rational::zero(), im: value }
            } else {
                GaussianRational::real(value)
            })
        };
        let a = parse_term(first)?;
        match second {
            None => Ok(a),
            Some(rest) => {
                let b = parse_term(rest)?;
                if !a.im.is_zero() || !b.re.is_zero() {
                    return Err(bad());
                }
                Ok(a + b)
            }
        }
    }
}

/// Parses `n` or `n/d` with unsigned decimal digits.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
    match s.split_once('/') {
        Some((n, d)) if digits(n) && digits(d) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n.parse().ok()?, d))
        }
        None if digits(s) => Some(Rational::from_integer(s.parse().ok()?)),
        _ => None,
    }
}

/// Serialized as the exact display string, e.g. `"1/2-1/2i"`.
impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::from_parts(a, b, c, d)
    }

    #[test]
    fn arith_examples() {
        let one_plus_i = g(1, 1, 1, 1);
        let one_minus_i = g(1, 1, -1, 1);
        assert_eq!(one_plus_i.arith(&one_minus_i, ArithOp::Mul).unwrap(), GaussianRational::from_int(2));
        let x = g(3, 7, -2, 5);
        assert_eq!(x.arith(&GaussianRational::zero(), ArithOp::Add).unwrap(), x);
        assert_eq!(
            GaussianRational::one().arith(&one_plus_i, ArithOp::Div).unwrap(),
            g(1, 2, -1, 2)
        );
        assert_eq!(x.arith(&GaussianRational::zero(), ArithOp::Div), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn abs2_examples() {
        assert_eq!(g(1, 2, 1, 2).abs2(), rat(1, 2));
        assert_eq!(GaussianRational::zero().abs2(), rat(0, 1));
        assert_eq!(g(3, 5, 4, 5).abs2(), rat(1, 1));
    }

    #[test]
    fn canonical_form_is_structural() {
        assert_eq!(g(2, 4, -3, 6), g(1, 2, 1, -2));
        assert_eq!(g(2, 4, 0, 1).re.denom(), &BigInt::from(2));
    }

    #[test]
    fn display_and_parse_round_trip() {
        for (v, s) in [
            (g(1, 2, -1, 2), "1/2-1/2i"),
            (g(0, 1, 1, 1), "i"),
            (g(0, 1, -3, 4), "-3/4i"),
            (g(-5, 1, 0, 1), "-5"),
            (g(3, 2, 1, 1), "3/2+i"),
        ] {
            assert_eq!(v.to_string(), s);
            assert_eq!(s.parse::<GaussianRational>().unwrap(), v);
        }
        assert_eq!("(3/2+1/2i)".parse::<GaussianRational>().unwrap(), g(3, 2, 1, 2));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(GaussianRational::ratio(1, 16).sqrt(), Some(GaussianRational::ratio(1, 4)));
        assert_eq!(GaussianRational::from_int(-4).sqrt(), Some(g(0, 1, 2, 1)));
        // (1+2i)^2 = -3+4i
        let s = g(-3, 1, 4, 1).sqrt().unwrap();
        assert_eq!(&s * &s, g(-3, 1, 4, 1));
        assert_eq!(GaussianRational::from_int(2).sqrt(), None);
        assert_eq!(GaussianRational::i().sqrt(), None);
    }

    #[test]
    fn powers() {
        let h = GaussianRational::ratio(1, 2);
        assert_eq!(h.pow(3), GaussianRational::ratio(1, 8));
        assert_eq!(h.pow(-2), GaussianRational::from_int(4));
        assert_eq!(GaussianRational::i().pow(2), GaussianRational::from_int(-1));
    }
}
