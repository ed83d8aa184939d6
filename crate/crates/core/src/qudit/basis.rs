use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::layout::Dimension;
use super::matrix::{self, CMatrix};
use super::state::gaussian_vector;
use crate::error::{Error, Result};
use crate::EPS_NORM;

/// An orthonormal basis `{|v_0>, ..., |v_{d-1}>}` of a single qudit.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis {
    vectors: Vec<Vec<Complex64>>,
}

impl OrthonormalBasis {
    /// Verifies that `vectors` are `d` orthonormal vectors of length `d`.
    pub fn new(vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        let d = vectors.len();
        if d == 0 {
            return Err(Error::Basis("empty basis".into()));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != d) {
            return Err(Error::Basis(format!(
                "vector of length {} in a {d}-element basis",
                v.len()
            )));
        }
        let mut worst: f64 = 0.0;
        for (i, u) in vectors.iter().enumerate() {
            for (j, v) in vectors.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((matrix::inner(u, v) - target).norm());
            }
        }
        if worst >= EPS_NORM {
            return Err(Error::Basis(format!(
                "vectors are not orthonormal (Gram deviation {worst:e})"
            )));
        }
        Ok(Self { vectors })
    }

    pub fn computational(dim: Dimension) -> Self {
        let d = dim.get();
        let vectors = (0..d)
            .map(|i| {
                (0..d)
                    .map(|n| Complex64::new(if n == i { 1.0 } else { 0.0 }, 0.0))
                    .collect()
            })
            .collect();
        Self { vectors }
    }

    /// `|f_k> = d^{-1/2} sum_n w^{kn} |n>`, `w = exp(2 pi i / d)`. For `d = 2`
    /// this is the `X` eigenbasis with `f_0 = |+>`.
    pub fn fourier(dim: Dimension) -> Self {
        let d = dim.get();
        let norm = 1.0 / dim.as_f64().sqrt();
        let vectors = (0..d)
            .map(|k| {
                (0..d)
                    .map(|n| Complex64::from_polar(norm, 2.0 * PI * ((k * n) % d) as f64 / d as f64))
                    .collect()
            })
            .collect();
        Self { vectors }
    }

    /// Fourier basis with a quadratic phase, `|c_k> = d^{-1/2} sum_n
    /// exp(i pi n^2 / d) w^{kn} |n>`. For `d = 2` this is the `Y` eigenbasis
    /// with `c_0 = (|0> + i|1>)/sqrt 2`.
    pub fn chirp(dim: Dimension) -> Self {
        let d = dim.get();
        let norm = 1.0 / dim.as_f64().sqrt();
        let vectors = (0..d)
            .map(|k| {
                (0..d)
                    .map(|n| {
                        let chirp = PI * ((n * n) % (2 * d)) as f64 / d as f64;
                        let fourier = 2.0 * PI * ((k * n) % d) as f64 / d as f64;
                        Complex64::from_polar(norm, chirp + fourier)
                    })
                    .collect()
            })
            .collect();
        Self { vectors }
    }

    /// Seeded random basis from Gram-Schmidt orthonormalisation of Gaussian
    /// complex columns.
    pub fn random(dim: Dimension, seed: u64) -> Self {
        let d = dim.get();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vectors: Vec<Vec<Complex64>> = Vec::with_capacity(d);
        while vectors.len() < d {
            let mut v = gaussian_vector(&mut rng, d);
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for u in &vectors {
                    let overlap = matrix::inner(u, &v);
                    for (x, y) in v.iter_mut().zip(u) {
                        *x -= overlap * y;
                    }
                }
            }
            let n = matrix::norm_sqr(&v).sqrt();
            if n > 1e-6 {
                vectors.push(v.into_iter().map(|x| x / n).collect());
            }
        }
        Self::new(vectors).expect("Gram-Schmidt output is orthonormal")
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector(&self, i: usize) -> &[Complex64] {
        &self.vectors[i]
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    /// `|v_i><v_i|`
    pub fn projector(&self, i: usize) -> CMatrix {
        CMatrix::outer(&self.vectors[i], &self.vectors[i])
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(Error::Basis(format!(
                "basis index {i} out of range for dimension {}",
                self.dim()
            )))
        }
    }
}
