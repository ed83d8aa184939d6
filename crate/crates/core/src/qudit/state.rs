use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::layout::{Dimension, SubsystemLayout};
use super::matrix::{self, CMatrix};
use super::operator::{OperatorKind, OperatorMatrix};
use crate::error::{Error, Result};
use crate::EPS_NORM;

/// Complex amplitudes over a labelled tensor factorisation.
///
/// Normalised by construction unless created through
/// [`StateVector::unnormalized`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: SubsystemLayout,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Unit-norm state; fails if the norm deviates from one by more than `EPS_NORM`.
    pub fn new(layout: SubsystemLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self::unnormalized(layout, amplitudes)?;
        let deviation = (state.norm() - 1.0).abs();
        if deviation > EPS_NORM {
            return Err(Error::Kind {
                expected: "normalized",
                deviation,
            });
        }
        Ok(state)
    }

    /// Vector with no norm requirement (projected, not-yet-renormalised states).
    pub fn unnormalized(layout: SubsystemLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.total_dim() {
            return Err(Error::Layout(format!(
                "{} amplitudes for layout {layout} of dimension {}",
                amplitudes.len(),
                layout.total_dim()
            )));
        }
        Ok(Self { layout, amplitudes })
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn from_unnormalized(layout: SubsystemLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::unnormalized(layout, amplitudes)?.normalized()
    }

    /// Computational basis vector `|index>`.
    pub fn basis(layout: SubsystemLayout, index: usize) -> Result<Self> {
        let n = layout.total_dim();
        if index >= n {
            return Err(Error::Layout(format!(
                "basis index {index} out of range for dimension {n}"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { layout, amplitudes })
    }

    /// Uniform superposition `d^{-1/2} sum_n |n>` on one subsystem.
    pub fn plus(label: char, dim: Dimension) -> Self {
        let d = dim.get();
        let a = Complex64::new(1.0 / dim.as_f64().sqrt(), 0.0);
        Self {
            layout: SubsystemLayout::single(label, dim),
            amplitudes: vec![a; d],
        }
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        matrix::norm_sqr(&self.amplitudes)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= f64::MIN_POSITIVE {
            return Err(Error::ZeroPostSelection { probability: n * n });
        }
        Ok(Self {
            layout: self.layout.clone(),
            amplitudes: self.amplitudes.iter().map(|a| a / n).collect(),
        })
    }

    /// `<self|other>`
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::Layout(format!(
                "inner product between dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(matrix::inner(&self.amplitudes, &other.amplitudes))
    }

    /// Same vector under a different (dimension-compatible) layout.
    pub fn relabel(&self, layout: SubsystemLayout) -> Result<Self> {
        Self::unnormalized(layout, self.amplitudes.clone())
    }

    /// Entrywise complex conjugate in the computational basis.
    pub fn conj(&self) -> Self {
        Self {
            layout: self.layout.clone(),
            amplitudes: self.amplitudes.iter().map(|a| a.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            layout: self.layout.clone(),
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    /// `|self><self|`, tagged as a projector when the state is normalised.
    pub fn projector(&self) -> OperatorMatrix {
        let m = CMatrix::outer(&self.amplitudes, &self.amplitudes);
        let kind = if (self.norm() - 1.0).abs() <= EPS_NORM {
            OperatorKind::Projector
        } else {
            OperatorKind::Hermitian
        };
        OperatorMatrix::tagged(self.layout.clone(), m, kind)
    }

    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        Ok(Self {
            layout: self.layout.concat(&other.layout)?,
            amplitudes: matrix::kron_vec(&self.amplitudes, &other.amplitudes),
        })
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "comparison of mismatched states");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Seeded Haar-random pure state of one qudit (label `A`).
///
/// Real and imaginary parts of each amplitude are independent standard
/// Gaussians drawn in the order `re_0, im_0, re_1, im_1, ...`, then normalised.
pub fn random_state(dim: Dimension, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amplitudes = gaussian_vector(&mut rng, dim.get());
    StateVector::from_unnormalized(SubsystemLayout::single('A', dim), amplitudes)
        .expect("a Gaussian vector is nonzero with probability one")
}

pub(crate) fn gaussian_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    #[test]
    fn random_state_is_deterministic_and_normalized() {
        let a = random_state(dim(2), 42);
        let b = random_state(dim(2), 42);
        assert_eq!(a, b);
        assert!((a.norm() - 1.0).abs() < EPS_NORM);
        assert_ne!(a, random_state(dim(2), 43));
    }

    #[test]
    fn haar_first_moment() {
        // E|<0|psi>|^2 = 1/d for Haar-random states
        let n = 10_000;
        let mean = (0..n)
            .map(|s| random_state(dim(2), s).amplitudes()[0].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean = {mean}");
    }

    #[test]
    fn rejects_unnormalized_input() {
        let l = SubsystemLayout::single('A', dim(2));
        let err = StateVector::new(l.clone(), vec![Complex64::new(1.0, 0.0); 2]).unwrap_err();
        assert!(matches!(err, Error::Kind { .. }));
        assert!(StateVector::new(l, vec![Complex64::new(1.0, 0.0); 3]).is_err());
    }

    #[test]
    fn basis_tensor_basis() {
        let a = StateVector::basis(SubsystemLayout::single('A', dim(3)), 0).unwrap();
        let b = StateVector::basis(SubsystemLayout::single('B', dim(3)), 0).unwrap();
        let ab = a.tensor(&b).unwrap();
        assert_eq!(ab.dim(), 9);
        assert_eq!(ab.amplitudes()[0], Complex64::new(1.0, 0.0));
        assert!(ab.amplitudes()[1..].iter().all(|z| *z == Complex64::new(0.0, 0.0)));
    }
}
