//! Dense exact matrices over ℚ(i): elimination, inverses, the Drazin inverse
//! through the Fitting (core–nilpotent) decomposition, and the
//! characteristic polynomial.

use std::fmt;

use crate::error::MatrixError;
use crate::poly::Polynomial;
use crate::scalar::GaussianRational as GR;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GR>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GR>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<GR>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| GR::from_int(x)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![GR::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = GR::one();
        }
        m
    }

    /// Jordan block `J_n(λ)`: `λ` on the diagonal, ones above it.
    pub fn jordan_block(n: usize, lambda: &GR) -> Self {
        let mut m = Self::identity(n).scale(lambda);
        for i in 0..n.saturating_sub(1) {
            m.entries[i * n + i + 1] = GR::one();
        }
        m
    }

    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let (r, c) = (a.rows + b.rows, a.cols + b.cols);
        let mut m = Self::zeros(r, c);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.entries[i * c + j] = a.get(i, j).clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.entries[(a.rows + i) * c + a.cols + j] = b.get(i, j).clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GR {
        &self.entries[i * self.cols + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<GR, MatrixError> {
        if i >= self.rows || j >= self.cols {
            return Err(MatrixError::IndexOutOfRange(i, j));
        }
        Ok(self.get(i, j).clone())
    }

    pub fn set(&mut self, i: usize, j: usize, v: GR) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[GR] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<GR>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GR::is_zero)
    }

    fn require_square(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    fn same_shape(&self, other: &Self) -> Result<(), MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(ExactMatrix { entries, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(ExactMatrix { entries, ..*self })
    }

    pub fn scale(&self, c: &GR) -> Self {
        ExactMatrix { entries: self.entries.iter().map(|a| a * c).collect(), ..*self }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self, MatrixError> {
        let n = self.require_square()?;
        let mut acc = Self::identity(n);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Result<GR, MatrixError> {
        let n = self.require_square()?;
        Ok((0..n).map(|i| self.get(i, i).clone()).sum())
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<GR, MatrixError> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(GR::one());
        }
        let (rank, m, swaps) = self.bareiss();
        if rank < n {
            return Ok(GR::zero());
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if swaps % 2 == 1 { -d } else { d })
    }

    fn bareiss(&self) -> (usize, Self, usize) {
        let mut m = self.clone();
        let mut prev = GR::one();
        let mut r = 0;
        let mut swaps = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                m.swap_rows(p, r);
                swaps += 1;
            }
            let pivot = m.get(r, c).clone();
            for i in r + 1..m.rows {
                let lead = m.get(i, c).clone();
                for j in c + 1..m.cols {
                    let v = &(&(&pivot * m.get(i, j)) - &(&lead * m.get(r, j))) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, c, GR::zero());
            }
            prev = pivot;
            r += 1;
        }
        (r, m, swaps)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let n = self.require_square()?;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, GR::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(MatrixError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Basis of the null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<GR>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![GR::zero(); self.cols];
                v[f] = GR::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Basis of the column space (the pivot columns of `self`).
    pub fn column_basis(&self) -> Vec<Vec<GR>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| (0..self.rows).map(|i| self.get(i, c).clone()).collect()).collect()
    }

    fn from_columns(n: usize, cols: &[Vec<GR>]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Drazin inverse and index.
    ///
    /// `k` is the least exponent with `rank(A^k) = rank(A^{k+1})`. In the
    /// basis `range(A^k) ⊕ ker(A^k)` the matrix is `diag(C, N)` with `C`
    /// invertible and `N` nilpotent; the inverse is `diag(C⁻¹, 0)` carried
    /// back to the standard basis.
    pub fn drazin(&self) -> Result<(Self, usize), MatrixError> {
        let n = self.require_square()?;
        let mut k = 0;
        let mut power = Self::identity(n);
        let mut rank = n;
        loop {
            let next = power.mul(self)?;
            let next_rank = next.rank();
            if next_rank == rank {
                break;
            }
            power = next;
            rank = next_rank;
            k += 1;
        }
        if rank == n {
            return Ok((self.inverse()?, 0));
        }
        if rank == 0 {
            return Ok((Self::zeros(n, n), k));
        }
        let mut basis = power.column_basis();
        basis.extend(power.nullspace());
        let p = Self::from_columns(n, &basis);
        let p_inv = p.inverse()?;
        let b = p_inv.mul(self)?.mul(&p)?;
        let mut core = Self::zeros(rank, rank);
        for i in 0..rank {
            for j in 0..rank {
                core.set(i, j, b.get(i, j).clone());
            }
        }
        let core_inv = core.inverse()?;
        let mut mid = Self::zeros(n, n);
        for i in 0..rank {
            for j in 0..rank {
                mid.set(i, j, core_inv.get(i, j).clone());
            }
        }
        Ok((p.mul(&mid)?.mul(&p_inv)?, k))
    }

    /// Characteristic polynomial `det(zI - A)` by the Faddeev–LeVerrier
    /// recurrence.
    pub fn characteristic_polynomial(&self) -> Result<Polynomial, MatrixError> {
        let n = self.require_square()?;
        let mut c = vec![GR::zero(); n + 1];
        c[n] = GR::one();
        let mut m = Self::zeros(n, n);
        let id = Self::identity(n);
        for k in 1..=n {
            m = self.mul(&m)?.add(&id.scale(&c[n - k + 1]))?;
            let t = self.mul(&m)?.trace()?;
            c[n - k] = -(&t / &GR::from_int(k as i64));
        }
        Ok(Polynomial::new(c))
    }

    /// Checks `tr(A) = Σ m(λ)λ`, the latter read off the characteristic
    /// polynomial as `-c_{n-1}/c_n`.
    pub fn spectral_trace_check(&self) -> Result<bool, MatrixError> {
        let n = self.require_square()?;
        let chi = self.characteristic_polynomial()?;
        if n == 0 {
            return Ok(true);
        }
        let spectral = -(&chi.coeff(n - 1) / &chi.coeff(n));
        Ok(spectral == self.trace()?)
    }

    /// Least `p >= 1` with `A^p = 0`, or `None`.
    pub fn nilpotency_index(&self) -> Result<Option<usize>, MatrixError> {
        let n = self.require_square()?;
        let mut power = self.clone();
        for p in 1..=n.max(1) {
            if power.is_zero() {
                return Ok(Some(p));
            }
            power = power.mul(self)?;
        }
        Ok(None)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(3).rank(), 3);
        assert_eq!(ExactMatrix::zeros(2, 2).rank(), 0);
        assert_eq!(ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn drazin_examples() {
        let (d, k) = ExactMatrix::from_ints(&[&[2]]).drazin().unwrap();
        assert_eq!((d, k), (ExactMatrix::from_rows(vec![vec![GR::ratio(1, 2)]]).unwrap(), 0));
        let (d, k) = ExactMatrix::from_ints(&[&[0, 1], &[0, 0]]).drazin().unwrap();
        assert_eq!((d, k), (ExactMatrix::zeros(2, 2), 2));
        let e = ExactMatrix::from_ints(&[&[1, 0], &[0, 0]]);
        assert_eq!(e.drazin().unwrap(), (e.clone(), 1));
        assert!(matches!(
            ExactMatrix::zeros(2, 3).drazin(),
            Err(MatrixError::NotSquare { .. })
        ));
    }

    #[test]
    fn drazin_identities_on_mixed_matrix() {
        let a = ExactMatrix::block_diag(
            &ExactMatrix::from_ints(&[&[2, 1], &[1, 1]]),
            &ExactMatrix::jordan_block(3, &GR::zero()),
        );
        let p = ExactMatrix::from_ints(&[
            &[1, 2, 0, 0, 1],
            &[0, 1, 0, 3, 0],
            &[0, 0, 1, 0, 0],
            &[1, 0, 0, 1, 0],
            &[0, 0, 2, 0, 1],
        ]);
        let a = p.mul(&a).unwrap().mul(&p.inverse().unwrap()).unwrap();
        let (d, k) = a.drazin().unwrap();
        assert_eq!(k, 3);
        assert_eq!(a.mul(&d).unwrap(), d.mul(&a).unwrap());
        assert_eq!(d.mul(&a).unwrap().mul(&d).unwrap(), d);
        assert_eq!(a.pow(4).unwrap().mul(&d).unwrap(), a.pow(3).unwrap());
    }

    #[test]
    fn spectral_trace_examples() {
        assert!(ExactMatrix::from_ints(&[&[1, 0], &[0, 2]]).spectral_trace_check().unwrap());
        assert!(ExactMatrix::from_ints(&[&[0, 1], &[0, 0]]).spectral_trace_check().unwrap());
        let chi = ExactMatrix::from_ints(&[&[1, 0], &[0, 2]]).characteristic_polynomial().unwrap();
        assert_eq!(chi, Polynomial::from_ints(&[2, -3, 1]));
    }

    #[test]
    fn charpoly_matches_determinant() {
        let a = ExactMatrix::from_rows(vec![
            vec![GR::from_parts(1, 2, 1, 1), GR::from_int(3), GR::zero()],
            vec![GR::from_int(-1), GR::i(), GR::ratio(2, 3)],
            vec![GR::from_int(2), GR::zero(), GR::from_parts(0, 1, -1, 2)],
        ])
        .unwrap();
        let chi = a.characteristic_polynomial().unwrap();
        for z in [GR::from_int(0), GR::from_parts(1, 3, 2, 1), GR::from_int(-4)] {
            let zi = ExactMatrix::identity(3).scale(&z).sub(&a).unwrap();
            assert_eq!(chi.eval(&z), zi.determinant().unwrap());
        }
    }

    #[test]
    fn nilpotency() {
        assert_eq!(ExactMatrix::jordan_block(3, &GR::zero()).nilpotency_index().unwrap(), Some(3));
        assert_eq!(ExactMatrix::identity(3).nilpotency_index().unwrap(), None);
        assert_eq!(ExactMatrix::zeros(4, 4).nilpotency_index().unwrap(), Some(1));
    }

    #[test]
    fn nullspace_and_inverse() {
        let a = ExactMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        for v in a.nullspace() {
            let col = ExactMatrix::from_columns(3, &[v]);
            assert!(a.mul(&col).unwrap().is_zero());
        }
        assert_eq!(a.inverse(), Err(MatrixError::Singular));
        let b = ExactMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        assert_eq!(b.mul(&b.inverse().unwrap()).unwrap(), ExactMatrix::identity(2));
    }
}
