//! Combinatorial helpers for polynomial×geometric sequences: binomial
//! polynomials, basis changes, and closed-form geometric moments.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::Polynomial;
use crate::scalar::{GaussianRational as GR, Rational};

/// Integer binomial coefficient `C(n, k)` (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

pub fn binomial_gr(n: u64, k: u64) -> GR {
    GR::real(Rational::from_integer(binomial(n, k)))
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, t| a * BigInt::from(t))
}

/// `C(n + offset, k)` as a polynomial in `n`.
pub fn binomial_poly(offset: i64, k: usize) -> Polynomial {
    let mut p = Polynomial::one();
    for t in 0..k as i64 {
        p = &p * &Polynomial::new(vec![GR::from_int(offset - t), GR::one()]);
    }
    let f = Rational::from_integer(factorial(k as u64));
    p.scale(&GR::real(Rational::one() / f))
}

/// Writes `p(n) = Σ_{k=1}^{d+1} a_k C(n+k-1, k-1)`; returns `[a_1, ..., a_{d+1}]`.
pub fn to_rising_binomial_basis(p: &Polynomial) -> Vec<GR> {
    let Some(d) = p.degree() else {
        return Vec::new();
    };
    let mut rem = p.clone();
    let mut out = vec![GR::zero(); d + 1];
    for k in (1..=d + 1).rev() {
        let lead = rem.coeff(k - 1);
        if lead.is_zero() {
            continue;
        }
        let a = lead.scale(&Rational::from_integer(factorial(k as u64 - 1)));
        rem = &rem - &binomial_poly(k as i64 - 1, k - 1).scale(&a);
        out[k - 1] = a;
    }
    debug_assert!(rem.is_zero());
    out
}

/// Stirling numbers of the second kind `S(j, k)` for `0 <= k <= j <= n`.
fn stirling2_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); n + 1]; n + 1];
    t[0][0] = BigInt::one();
    for j in 1..=n {
        for k in 1..=j {
            t[j][k] = BigInt::from(k) * &t[j - 1][k] + &t[j - 1][k - 1];
        }
    }
    t
}

/// `Σ_{n>=0} m^r x^m` for `r = 0..=max_r`, in closed form (`|x| < 1`).
pub fn power_geometric_sums(max_r: usize, x: &GR) -> Vec<GR> {
    let s2 = stirling2_table(max_r);
    let inv = (&GR::one() - x).inv();
    // x^k / (1-x)^{k+1}
    let mut basic = Vec::with_capacity(max_r + 1);
    let mut cur = inv.clone();
    for _ in 0..=max_r {
        basic.push(cur.clone());
        cur = &(&cur * x) * &inv;
    }
    (0..=max_r)
        .map(|r| {
            (0..=r)
                .filter(|&k| !s2[r][k].is_zero())
                .map(|k| {
                    let c = Rational::from_integer(&s2[r][k] * factorial(k as u64));
                    basic[k].scale(&c)
                })
                .sum()
        })
        .collect()
}

/// `Σ_{n>=0} p(n) x^n` for `|x| < 1`.
pub fn geometric_moment(p: &Polynomial, x: &GR) -> GR {
    if p.is_zero() {
        return GR::zero();
    }
    let sums = power_geometric_sums(p.deg0(), x);
    p.coeffs().iter().zip(&sums).map(|(c, s)| c * s).sum()
}

/// Taylor coefficients in the second argument: `p(i + m) = Σ_s P_s(i) m^s`.
pub fn split_shift(p: &Polynomial) -> Vec<Polynomial> {
    let d = p.deg0();
    if p.is_zero() {
        return Vec::new();
    }
    (0..=d)
        .map(|s| {
            Polynomial::new(
                (0..=d - s)
                    .map(|e| p.coeff(e + s).scale(&Rational::from_integer(binomial((e + s) as u64, s as u64))))
                    .collect(),
            )
        })
        .collect()
}
