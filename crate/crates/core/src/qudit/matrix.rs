//! Dense row-major square complex matrices.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Pairwise sum of complex values, split at fixed midpoints in ascending index order.
///
/// Every trace, inner product and norm in the crate goes through this so that
/// results are bit-reproducible.
pub(crate) fn ordered_sum<I: IntoIterator<Item = Complex64>>(values: I) -> Complex64 {
    let values: Vec<Complex64> = values.into_iter().collect();
    pairwise(&values)
}

fn pairwise(values: &[Complex64]) -> Complex64 {
    const LEAF: usize = 8;
    if values.len() <= LEAF {
        let mut acc = ZERO;
        for v in values {
            acc += v;
        }
        return acc;
    }
    let (lo, hi) = values.split_at(values.len() / 2);
    pairwise(lo) + pairwise(hi)
}

/// `<a|b>` with the first argument conjugated.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    assert_eq!(a.len(), b.len(), "inner product of vectors of unequal length");
    ordered_sum(a.iter().zip(b).map(|(x, y)| x.conj() * y))
}

/// Squared Euclidean norm.
pub fn norm_sqr(a: &[Complex64]) -> f64 {
    ordered_sum(a.iter().map(|x| Complex64::from(x.norm_sqr()))).re
}

/// Kronecker product of two vectors.
pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row-major entries. Panics if `data.len() != dim * dim`.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim, "row-major data has wrong length");
        Self { dim, data }
    }

    /// Builds a matrix from a list of rows. Panics on ragged or non-square input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix rows must form a square");
            data.extend_from_slice(row);
        }
        Self { dim, data }
    }

    /// `|ket><bra|`
    pub fn outer(ket: &[Complex64], bra: &[Complex64]) -> Self {
        assert_eq!(ket.len(), bra.len(), "outer product of vectors of unequal length");
        let dim = ket.len();
        Self::from_fn(dim, |r, c| ket[r] * bra[c].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        ordered_sum((0..self.dim).map(|i| self.data[i * self.dim + i]))
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &CMatrix) -> Complex64 {
        assert_eq!(self.dim, other.dim, "trace of product of mismatched matrices");
        let n = self.dim;
        ordered_sum(
            (0..n)
                .flat_map(|r| (0..n).map(move |k| (r, k)))
                .map(|(r, k)| self.data[r * n + k] * other.data[k * n + r]),
        )
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim, "product of mismatched matrices");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for r in 0..n {
            let out_row = &mut out[r * n..(r + 1) * n];
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                let other_row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(other_row) {
                    *o += a * b;
                }
            }
        }
        CMatrix { dim: n, data: out }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.dim, v.len(), "matrix-vector product of mismatched sizes");
        (0..self.dim)
            .map(|r| ordered_sum(self.row(r).iter().zip(v).map(|(a, b)| a * b)))
            .collect()
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (n, m) = (self.dim, other.dim);
        CMatrix::from_fn(n * m, |r, c| self[(r / m, c / m)] * other[(r % m, c % m)])
    }

    /// `(M + M^dagger) / 2`
    pub fn hermitian_part(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "comparison of mismatched matrices");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |M - M^dagger|`
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// `max |M^dagger M - I|`
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint().matmul(self).max_abs_diff(&CMatrix::identity(self.dim))
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "sum of mismatched matrices");
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "difference of mismatched matrices");
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pairwise_sum_is_exact_on_integers_and_splits_long_inputs() {
        let v: Vec<Complex64> = (0..1000).map(|k| c(k as f64, -(k as f64))).collect();
        assert_eq!(ordered_sum(v.iter().copied()), c(499_500.0, -499_500.0));
        // 1 + 1e-16 * 16: sequential addition loses every small term, pairwise keeps them
        let mut w = vec![c(1.0, 0.0)];
        w.extend(std::iter::repeat_n(c(1e-16, 0.0), 16));
        assert!(ordered_sum(w).re > 1.0);
    }

    #[test]
    fn pauli_x_times_z() {
        let x = CMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]);
        let z = CMatrix::from_rows(&[vec![ONE, ZERO], vec![ZERO, -ONE]]);
        let xz = &x * &z;
        assert_eq!(xz, CMatrix::from_rows(&[vec![ZERO, -ONE], vec![ONE, ZERO]]));
        assert!(xz.unitarity_defect() < 1e-15);
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let id = CMatrix::identity(3).kron(&CMatrix::identity(2));
        assert_eq!(id, CMatrix::identity(6));
    }

    #[test]
    fn trace_product_matches_matmul() {
        let a = CMatrix::from_fn(3, c_);
        let b = CMatrix::from_fn(3, |r, c| c_(c + 1, r));
        assert!((a.trace_product(&b) - a.matmul(&b).trace()).norm() < 1e-12);

        fn c_(r: usize, k: usize) -> Complex64 {
            Complex64::new(r as f64 - 0.5 * k as f64, (r * k) as f64 * 0.25)
        }
    }

    #[test]
    fn hermitian_part_of_nilpotent() {
        let m = CMatrix::from_rows(&[vec![ZERO, c(2.0, 0.0)], vec![ZERO, ZERO]]);
        let h = m.hermitian_part();
        assert_eq!(h, CMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]));
        assert!(m.hermiticity_defect() > 1.0);
        assert_eq!(h.hermiticity_defect(), 0.0);
    }

    #[test]
    fn outer_and_apply() {
        let ket = [c(1.0, 0.0), c(0.0, 1.0)];
        let p = CMatrix::outer(&ket, &ket);
        assert_eq!(p[(0, 1)], c(0.0, -1.0));
        assert_eq!(p.apply(&ket), vec![c(2.0, 0.0), c(0.0, 2.0)]);
        assert_eq!(inner(&ket, &ket), c(2.0, 0.0));
    }
}
