//! Exact root location relative to the unit circle, and exact factorization
//! into linear factors over ℚ(i) where one exists.
//!
//! Circle zeros are detected through the Cayley map `z = (1+it)/(1-it)`,
//! which sends the real `t` axis onto the circle minus `z = -1`; real zeros
//! of the transformed polynomial are counted with Sturm sequences. Zeros
//! inside the disk are counted with the Schur–Cohn recursion; a degenerate
//! step (a reflection coefficient of modulus exactly one) falls back to a
//! Cauchy-index count on the Cayley transform, which never degenerates once
//! circle zeros have been excluded.

use num_traits::{Signed, Zero};

use crate::error::ExactError;
use crate::poly::Polynomial;
use crate::scalar::{GaussianRational as GR, Rational};

/// True iff `p` has a zero of modulus exactly one.
pub fn has_zero_on_circle(p: &Polynomial) -> Result<bool, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(false);
    }
    if p.eval(&GR::from_int(-1)).is_zero() {
        return Ok(true);
    }
    let q = cayley(p);
    let (a, b) = real_imag_parts(&q);
    let g = if b.is_zero() { a } else { a.gcd(&b) };
    if g.degree() == 0 {
        return Ok(false);
    }
    Ok(count_real_roots(&g) > 0)
}

/// Number of zeros of `p` in the open unit disk, with multiplicity.
pub fn count_zeros_in_disk(p: &Polynomial) -> Result<usize, ExactError> {
    if has_zero_on_circle(p)? {
        return Err(ExactError::ZeroOnCircle);
    }
    match schur_cohn(p) {
        Some(n) => Ok(n),
        None => Ok(cayley_count(p)),
    }
}

/// Same count as [`count_zeros_in_disk`] computed only through the Cayley
/// transform and a Cauchy index. Exposed for cross-checking.
pub fn count_zeros_in_disk_cayley(p: &Polynomial) -> Result<usize, ExactError> {
    if has_zero_on_circle(p)? {
        return Err(ExactError::ZeroOnCircle);
    }
    Ok(cayley_count(p))
}

/// Schur–Cohn count; `None` when a step degenerates.
fn schur_cohn(p: &Polynomial) -> Option<usize> {
    let (v, p) = p.split_zero_root();
    let n = p.deg0();
    if n == 0 {
        return Some(v);
    }
    let a0 = p.coeff(0);
    let an = p.leading();
    let gamma = a0.abs2() - an.abs2();
    if gamma.is_zero() {
        return None;
    }
    let t = &p.scale(&a0.conj()) - &p.conj_reciprocal().scale(&an);
    let inner = schur_cohn(&t)?;
    Some(v + if gamma.is_positive() { inner } else { n - inner })
}

/// Zeros in the disk = zeros of the Cayley transform in the upper half plane
/// = (n - Ind(B/A)) / 2 once the leading coefficient is made real.
fn cayley_count(p: &Polynomial) -> usize {
    let (zero_roots, p) = p.split_zero_root();
    let n = p.deg0();
    if n == 0 {
        return zero_roots;
    }
    let q = cayley(&p);
    let q = q.scale(&q.leading().conj());
    let (a, b) = real_imag_parts(&q);
    let ind = cauchy_index(&a, &b);
    let twice = n as i64 - ind;
    assert!(twice >= 0 && twice % 2 == 0, "Cauchy index parity violated");
    (twice / 2) as usize + zero_roots
}

/// `q(t) = (1-it)^n p((1+it)/(1-it))`.
fn cayley(p: &Polynomial) -> Polynomial {
    let n = p.deg0();
    let plus = Polynomial::new(vec![GR::one(), GR::i()]);
    let minus = Polynomial::new(vec![GR::one(), -GR::i()]);
    let mut plus_pows = vec![Polynomial::one()];
    let mut minus_pows = vec![Polynomial::one()];
    for k in 1..=n {
        plus_pows.push(&plus_pows[k - 1] * &plus);
        minus_pows.push(&minus_pows[k - 1] * &minus);
    }
    let mut q = Polynomial::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        let term = (&plus_pows[k] * &minus_pows[n - k]).scale(c);
        q = &q + &term;
    }
    q
}

fn real_imag_parts(q: &Polynomial) -> (RatPoly, RatPoly) {
    let re = RatPoly::new(q.coeffs().iter().map(|c| c.re.clone()).collect());
    let im = RatPoly::new(q.coeffs().iter().map(|c| c.im.clone()).collect());
    (re, im)
}

/// Distinct real roots of `g` (`g` nonzero).
fn count_real_roots(g: &RatPoly) -> usize {
    let chain = sturm_chain(g.clone(), g.derivative());
    let d = variations(&chain, false) as i64 - variations(&chain, true) as i64;
    d.max(0) as usize
}

/// Cauchy index of `b/a` over the whole real line.
fn cauchy_index(a: &RatPoly, b: &RatPoly) -> i64 {
    if b.is_zero() {
        return 0;
    }
    let chain = sturm_chain(a.clone(), b.clone());
    variations(&chain, false) as i64 - variations(&chain, true) as i64
}

fn sturm_chain(f0: RatPoly, f1: RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![f0];
    if f1.is_zero() {
        return chain;
    }
    chain.push(f1);
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    chain
}

/// Sign variations at `+∞` (`at_plus = true`) or `-∞`.
fn variations(chain: &[RatPoly], at_plus: bool) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let s = if p.lead().is_positive() { 1 } else { -1 };
            if !at_plus && p.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Minimal real-coefficient polynomial used by the Sturm machinery.
#[derive(Clone, Debug, PartialEq)]
struct RatPoly(Vec<Rational>);

impl RatPoly {
    fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        RatPoly(c)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    fn neg(&self) -> Self {
        RatPoly(self.0.iter().map(|c| -c).collect())
    }

    fn derivative(&self) -> Self {
        RatPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    fn rem(&self, d: &Self) -> Self {
        let dd = d.degree();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return self.clone();
        }
        let inv = Rational::from_integer(1.into()) / d.lead();
        for k in (0..r.len() - dd).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
        }
        r.truncate(dd);
        RatPoly::new(r)
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

/// Complete factorization of `p` into linear factors over ℚ(i), as
/// `(root, multiplicity)` pairs sorted by root, or `None` when some factor
/// cannot be split exactly.
///
/// `hints` are candidate roots tried first (typically the known roots of
/// the operands that produced `p`). Square-free parts of degree at most two
/// are solved directly; higher-degree residues give up.
pub fn gaussian_roots(p: &Polynomial, hints: &[GR]) -> Option<Vec<(GR, u32)>> {
    if p.is_zero() {
        return None;
    }
    let mut found: Vec<(GR, u32)> = Vec::new();
    let (z, mut rest) = p.split_zero_root();
    if z > 0 {
        found.push((GR::zero(), z as u32));
    }
    for h in hints {
        if h.is_zero() {
            continue;
        }
        let (m, r) = rest.deflate(h);
        if m > 0 {
            push_root(&mut found, h.clone(), m);
            rest = r;
        }
    }
    for (factor, mult) in square_free_decomposition(&rest) {
        for r in solve_square_free(&factor)? {
            push_root(&mut found, r, mult);
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Some(found)
}

fn push_root(found: &mut Vec<(GR, u32)>, r: GR, m: u32) {
    match found.iter_mut().find(|(x, _)| *x == r) {
        Some(e) => e.1 += m,
        None => found.push((r, m)),
    }
}

/// Yun's algorithm: `p = c · Π s_i^i` with square-free, pairwise coprime `s_i`.
fn square_free_decomposition(p: &Polynomial) -> Vec<(Polynomial, u32)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let f = p.monic();
    let df = f.derivative();
    let a = f.gcd(&df);
    let mut b = f.exact_div(&a).expect("gcd divides");
    let c = df.exact_div(&a).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let ai = b.gcd(&d);
        b = b.exact_div(&ai).expect("gcd divides");
        let ci = d.exact_div(&ai).expect("gcd divides");
        d = &ci - &b.derivative();
        if !ai.is_constant() {
            out.push((ai, i));
        }
        i += 1;
    }
    out
}

fn solve_square_free(p: &Polynomial) -> Option<Vec<GR>> {
    match p.deg0() {
        0 => Some(vec![]),
        1 => Some(vec![-(&p.coeff(0) / &p.coeff(1))]),
        2 => {
            let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
            let disc = &(&b * &b) - &(&(&a * &c) * &GR::from_int(4));
            let s = disc.sqrt()?;
            let two_a = &a * &GR::from_int(2);
            Some(vec![&(-&b + &s) / &two_a, &(-&b - &s) / &two_a])
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GR {
        GR::ratio(n, d)
    }

    fn roots(rs: &[GR]) -> Polynomial {
        Polynomial::from_roots(&rs.iter().map(|r| (r.clone(), 1)).collect::<Vec<_>>())
    }

    #[test]
    fn disk_count_examples() {
        // z^2 - 1/4
        let p = Polynomial::new(vec![q(-1, 4), GR::zero(), GR::one()]);
        assert_eq!(count_zeros_in_disk(&p), Ok(2));
        assert_eq!(count_zeros_in_disk(&Polynomial::linear(&q(3, 1))), Ok(0));
        let p = Polynomial::from_ints(&[1, -5, 4]);
        assert_eq!(count_zeros_in_disk(&p), Err(ExactError::ZeroOnCircle));
        assert_eq!(count_zeros_in_disk(&Polynomial::zero()), Err(ExactError::ZeroPolynomial));
    }

    #[test]
    fn circle_zero_examples() {
        assert_eq!(has_zero_on_circle(&Polynomial::linear(&q(1, 1))), Ok(true));
        assert_eq!(has_zero_on_circle(&Polynomial::linear(&q(1, 2))), Ok(false));
        assert_eq!(has_zero_on_circle(&Polynomial::from_ints(&[1, 0, 1])), Ok(true));
        assert_eq!(has_zero_on_circle(&Polynomial::linear(&q(-1, 1))), Ok(true));
        assert_eq!(has_zero_on_circle(&Polynomial::zero()), Err(ExactError::ZeroPolynomial));
        // 3-4-5 point
        assert_eq!(has_zero_on_circle(&Polynomial::linear(&GR::from_parts(3, 5, 4, 5))), Ok(true));
        // irrational circle zeros: z^2 - z + 1 has roots e^{±iπ/3}
        assert_eq!(has_zero_on_circle(&Polynomial::from_ints(&[1, -1, 1])), Ok(true));
        // z^2 - 2: roots ±√2, off the circle
        assert_eq!(has_zero_on_circle(&Polynomial::from_ints(&[-2, 0, 1])), Ok(false));
    }

    #[test]
    fn degenerate_schur_step_falls_back() {
        // (z - 1/2)(z - 2): |a0| = |an| = 1, reciprocal-symmetric roots
        let p = roots(&[q(1, 2), q(2, 1)]);
        assert_eq!(schur_cohn(&p), None);
        assert_eq!(count_zeros_in_disk(&p), Ok(1));
    }

    #[test]
    fn zero_root_counts() {
        let p = Polynomial::monomial(GR::one(), 3);
        assert_eq!(count_zeros_in_disk(&p), Ok(3));
        assert_eq!(count_zeros_in_disk_cayley(&p), Ok(3));
    }

    #[test]
    fn irrational_roots_are_counted() {
        // z^2 - 1/8 has roots ±1/(2√2), both inside
        let p = Polynomial::new(vec![q(-1, 8), GR::zero(), GR::one()]);
        assert_eq!(count_zeros_in_disk(&p), Ok(2));
        // z^3 - 2: all roots of modulus 2^(1/3) > 1
        assert_eq!(count_zeros_in_disk(&Polynomial::from_ints(&[-2, 0, 0, 1])), Ok(0));
    }

    #[test]
    fn factorization() {
        let a = GR::from_parts(1, 2, 1, 3);
        let p = Polynomial::from_roots(&[(a.clone(), 2), (q(3, 1), 1), (GR::zero(), 1)]);
        let f = gaussian_roots(&p, &[]).unwrap();
        assert_eq!(Polynomial::from_roots(&f), p.monic());
        // quadratic with Gaussian-rational roots ±(1+2i)
        let p = Polynomial::new(vec![GR::from_parts(3, 1, -4, 1), GR::zero(), GR::one()]);
        assert_eq!(gaussian_roots(&p, &[]).unwrap().len(), 2);
        // z^2 - 2 does not split over Q(i)
        assert_eq!(gaussian_roots(&Polynomial::from_ints(&[-2, 0, 1]), &[]), None);
        // hints handle higher degree
        let p = roots(&[q(1, 2), q(1, 3), q(1, 5), q(7, 1)]);
        assert_eq!(gaussian_roots(&p, &[]), None);
        assert!(gaussian_roots(&p, &[q(1, 2), q(7, 1)]).is_some());
    }
}
