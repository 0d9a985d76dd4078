//! Partial-fraction form of rational functions whose poles are known exactly.
//!
//! A value is `poly(z) + Σ_b Σ_k c_{b,k} / (z - b)^k`. On the unit circle
//! each term has an explicit Laurent expansion: poles inside the disk feed
//! negative indices, poles outside feed nonnegative ones. Fourier
//! coefficients of Toeplitz symbols, Toeplitz actions on sequences and the
//! generating functions of sequences all go through this form.

use crate::poly::Polynomial;
use crate::scalar::GaussianRational as GR;
use crate::series::binomial_gr;

/// Principal part at one pole: `coeffs[k-1]` multiplies `1/(z - pole)^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleTerm {
    pub pole: GR,
    pub coeffs: Vec<GR>,
}

impl PoleTerm {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_inner(&self) -> bool {
        self.pole.abs2() < num_traits::One::one()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialFractions {
    pub poly: Polynomial,
    pub poles: Vec<PoleTerm>,
}

/// Merges pole lists, adding multiplicities of equal poles.
pub fn merge_poles(a: &[(GR, u32)], b: &[(GR, u32)]) -> Vec<(GR, u32)> {
    let mut out: Vec<(GR, u32)> = Vec::new();
    for (p, m) in a.iter().chain(b) {
        match out.iter_mut().find(|(q, _)| q == p) {
            Some(e) => e.1 += m,
            None => out.push((p.clone(), *m)),
        }
    }
    out.retain(|(_, m)| *m > 0);
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// First `n` coefficients of the power series `a(t) / b(t)`, `b(0) != 0`.
fn series_div(a: &Polynomial, b: &Polynomial, n: usize) -> Vec<GR> {
    let b0_inv = b.coeff(0).inv();
    let mut out: Vec<GR> = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = a.coeff(j);
        for (i, h) in out.iter().enumerate() {
            let bj = b.coeff(j - i);
            if !bj.is_zero() {
                acc -= &(h * &bj);
            }
        }
        out.push(&acc * &b0_inv);
    }
    out
}

impl PartialFractions {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero() && self.poles.is_empty()
    }

    /// Decomposes `g / Π (z - b)^m`. Poles must be distinct.
    pub fn decompose(g: &Polynomial, poles: &[(GR, u32)]) -> Self {
        let denom = Polynomial::from_roots(poles);
        let (quot, rem) = g.div_rem(&denom);
        let mut terms = Vec::new();
        if !rem.is_zero() {
            for (idx, (b, m)) in poles.iter().enumerate() {
                let m = *m as usize;
                if m == 0 {
                    continue;
                }
                let others: Vec<(GR, u32)> = poles
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != idx)
                    .map(|(_, p)| p.clone())
                    .collect();
                let cofactor = Polynomial::from_roots(&others);
                let h = series_div(&rem.taylor_shift(b), &cofactor.taylor_shift(b), m);
                // h_j multiplies (z-b)^{j-m}
                let mut coeffs: Vec<GR> = (1..=m).map(|k| h[m - k].clone()).collect();
                while coeffs.last().is_some_and(GR::is_zero) {
                    coeffs.pop();
                }
                if !coeffs.is_empty() {
                    terms.push(PoleTerm { pole: b.clone(), coeffs });
                }
            }
        }
        terms.sort_by(|x, y| x.pole.cmp(&y.pole));
        PartialFractions { poly: quot, poles: terms }
    }

    /// Back to `numerator / Π (z - b)^m`.
    pub fn to_rational(&self) -> (Polynomial, Vec<(GR, u32)>) {
        let poles: Vec<(GR, u32)> = self.poles.iter().map(|t| (t.pole.clone(), t.order() as u32)).collect();
        let denom = Polynomial::from_roots(&poles);
        let mut num = &self.poly * &denom;
        for (idx, t) in self.poles.iter().enumerate() {
            let others: Vec<(GR, u32)> = poles
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != idx)
                .map(|(_, p)| p.clone())
                .collect();
            let cofactor = Polynomial::from_roots(&others);
            let m = t.order();
            for (k, c) in t.coeffs.iter().enumerate() {
                let k = k + 1;
                let part = &cofactor * &Polynomial::linear(&t.pole).pow((m - k) as u32);
                num = &num + &part.scale(c);
            }
        }
        (num, poles)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, pa) = self.to_rational();
        let (b, pb) = other.to_rational();
        Self::decompose(&(&a * &b), &merge_poles(&pa, &pb))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, pa) = self.to_rational();
        let (b, pb) = other.to_rational();
        let mult = |ps: &[(GR, u32)], p: &GR| ps.iter().find(|(q, _)| q == p).map_or(0, |x| x.1);
        // common denominator with the larger multiplicity at each pole
        let common: Vec<(GR, u32)> = merge_poles(&pa, &pb)
            .into_iter()
            .map(|(p, _)| {
                let m = mult(&pa, &p).max(mult(&pb, &p));
                (p, m)
            })
            .collect();
        let raise = |num: &Polynomial, own: &[(GR, u32)]| {
            let missing: Vec<(GR, u32)> =
                common.iter().map(|(p, m)| (p.clone(), m - mult(own, p))).collect();
            num * &Polynomial::from_roots(&missing)
        };
        Self::decompose(&(&raise(&a, &pa) + &raise(&b, &pb)), &common)
    }

    /// Laurent coefficient of index `n` in the annulus containing `|z| = 1`.
    pub fn coefficient(&self, n: i64) -> GR {
        let mut acc = if n >= 0 { self.poly.coeff(n as usize) } else { GR::zero() };
        for t in &self.poles {
            if t.pole.is_zero() {
                if n < 0 && (-n) as usize <= t.order() {
                    acc += &t.coeffs[(-n - 1) as usize];
                }
            } else if t.is_inner() {
                // 1/(z-b)^k = Σ_j C(j+k-1, k-1) b^j z^{-j-k}
                for (k, c) in t.coeffs.iter().enumerate() {
                    let k = k as i64 + 1;
                    if n <= -k {
                        let j = -n - k;
                        let term = &binomial_gr((j + k - 1) as u64, (k - 1) as u64) * &t.pole.pow(j);
                        acc += &(c * &term);
                    }
                }
            } else if n >= 0 {
                // 1/(z-b)^k = (-1)^k Σ_n C(n+k-1, k-1) b^{-n-k} z^n
                for (k, c) in t.coeffs.iter().enumerate() {
                    let k = k as i64 + 1;
                    let sign = if k % 2 == 0 { GR::one() } else { -GR::one() };
                    let term = &binomial_gr((n + k - 1) as u64, (k - 1) as u64) * &t.pole.pow(-n - k);
                    acc += &(&(c * &term) * &sign);
                }
            }
        }
        acc
    }

    /// Drops every principal part at a pole inside the disk (including `0`).
    pub fn outer_part(&self) -> Self {
        PartialFractions {
            poly: self.poly.clone(),
            poles: self.poles.iter().filter(|t| !t.is_inner()).cloned().collect(),
        }
    }

    /// Substitutes `z -> 1/z`.
    pub fn reflect(&self) -> Self {
        // poly(1/z) has a pole of order deg at 0; each 1/(z-b)^k becomes
        // z^k / (1 - b z)^k, handled through the rational form
        let (num, poles) = self.to_rational();
        let dn = num.deg0() as i64;
        let dd: i64 = poles.iter().map(|p| p.1 as i64).sum();
        // num(1/z)/den(1/z) = z^{dd-dn} rev(num)(z) / rev(den)(z)
        let mut rev_num = num.reversed();
        let mut new_poles: Vec<(GR, u32)> = Vec::new();
        let mut lead = GR::one();
        for (b, m) in &poles {
            if b.is_zero() {
                // (z - 0)^m reversed is the constant 1: contributes only the
                // z-power, already counted in dd
                continue;
            }
            // reverse of (z - b) is 1 - b z = -b (z - 1/b)
            new_poles.push((b.inv(), *m));
            lead = &lead * &(-b).pow(*m as i64);
        }
        rev_num = rev_num.scale(&lead.inv());
        let shift = dd - dn;
        if shift >= 0 {
            rev_num = rev_num.shift_up(shift as usize);
        } else {
            new_poles = merge_poles(&new_poles, &[(GR::zero(), (-shift) as u32)]);
        }
        Self::decompose(&rev_num, &new_poles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GR {
        GR::ratio(n, d)
    }

    #[test]
    fn simple_poles() {
        let pf = PartialFractions::decompose(&Polynomial::one(), &[(q(1, 2), 1)]);
        assert_eq!(pf.coefficient(-1), q(1, 1));
        assert_eq!(pf.coefficient(-2), q(1, 2));
        assert_eq!(pf.coefficient(0), q(0, 1));
        let pf = PartialFractions::decompose(&Polynomial::one(), &[(q(2, 1), 1)]);
        assert_eq!(pf.coefficient(0), q(-1, 2));
        assert_eq!(pf.coefficient(1), q(-1, 4));
        assert_eq!(pf.coefficient(-1), q(0, 1));
    }

    #[test]
    fn round_trip_rational_form() {
        let g = Polynomial::from_ints(&[1, 0, 3, 0, 0, 2]);
        let poles = vec![(q(1, 2), 2), (q(3, 1), 1), (GR::zero(), 1)];
        let pf = PartialFractions::decompose(&g, &poles);
        let (num, ps) = pf.to_rational();
        assert_eq!(ps, merge_poles(&poles, &[]));
        assert_eq!(num, g);
    }

    #[test]
    fn repeated_pole_expansion() {
        // 1/(z-1/2)^2 = z^-2 Σ (j+1) (1/2)^j z^-j
        let pf = PartialFractions::decompose(&Polynomial::one(), &[(q(1, 2), 2)]);
        assert_eq!(pf.coefficient(-2), q(1, 1));
        assert_eq!(pf.coefficient(-3), q(1, 1));
        assert_eq!(pf.coefficient(-4), q(3, 4));
    }

    #[test]
    fn reflect_swaps_indices() {
        let g = Polynomial::from_ints(&[2, -1, 1]);
        let pf = PartialFractions::decompose(&g, &[(q(1, 3), 1), (q(5, 2), 2), (GR::zero(), 1)]);
        let r = pf.reflect();
        for n in -6..=6 {
            assert_eq!(r.coefficient(n), pf.coefficient(-n), "n = {n}");
        }
    }

    #[test]
    fn add_and_mul_are_pointwise() {
        let a = PartialFractions::decompose(&Polynomial::from_ints(&[1, 1]), &[(q(1, 2), 1)]);
        let b = PartialFractions::decompose(&Polynomial::one(), &[(q(1, 2), 2), (q(3, 1), 1)]);
        let z = GR::from_parts(1, 7, 2, 3);
        let eval = |p: &PartialFractions| {
            let (n, ps) = p.to_rational();
            &n.eval(&z) / &Polynomial::from_roots(&ps).eval(&z)
        };
        assert_eq!(eval(&a.add(&b)), &eval(&a) + &eval(&b));
        assert_eq!(eval(&a.mul(&b)), &eval(&a) * &eval(&b));
    }
}
