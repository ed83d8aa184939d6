use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::layout::SubsystemLayout;
use super::matrix::CMatrix;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::EPS_NORM;

/// Structural tag carried by an [`OperatorMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Unitary,
    Hermitian,
    Projector,
    General,
}

impl OperatorKind {
    fn meet(self, other: OperatorKind) -> OperatorKind {
        use OperatorKind::*;
        match (self, other) {
            (a, b) if a == b => a,
            (Projector | Hermitian, Projector | Hermitian) => Hermitian,
            _ => General,
        }
    }
}

/// Square complex matrix acting on labelled subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    layout: SubsystemLayout,
    matrix: CMatrix,
    kind: OperatorKind,
}

impl OperatorMatrix {
    /// Builds an operator and verifies the `kind` tag within `EPS_NORM`.
    pub fn new(layout: SubsystemLayout, matrix: CMatrix, kind: OperatorKind) -> Result<Self> {
        check_layout(&layout, &matrix)?;
        match kind {
            OperatorKind::Unitary => {
                let deviation = matrix.unitarity_defect();
                if deviation >= EPS_NORM {
                    return Err(Error::Kind {
                        expected: "unitary",
                        deviation,
                    });
                }
            }
            OperatorKind::Hermitian => {
                let deviation = matrix.hermiticity_defect();
                if deviation >= EPS_NORM {
                    return Err(Error::Kind {
                        expected: "hermitian",
                        deviation,
                    });
                }
            }
            OperatorKind::Projector => {
                let deviation = matrix
                    .hermiticity_defect()
                    .max(matrix.matmul(&matrix).max_abs_diff(&matrix));
                if deviation >= EPS_NORM {
                    return Err(Error::Kind {
                        expected: "a projector",
                        deviation,
                    });
                }
            }
            OperatorKind::General => {}
        }
        Ok(Self { layout, matrix, kind })
    }

    pub fn general(layout: SubsystemLayout, matrix: CMatrix) -> Result<Self> {
        Self::new(layout, matrix, OperatorKind::General)
    }

    pub fn identity(layout: SubsystemLayout) -> Self {
        let n = layout.total_dim();
        Self::tagged(layout, CMatrix::identity(n), OperatorKind::Projector)
    }

    /// Constructor for results whose kind follows from the construction.
    pub(crate) fn tagged(layout: SubsystemLayout, matrix: CMatrix, kind: OperatorKind) -> Self {
        debug_assert_eq!(layout.total_dim(), matrix.dim());
        Self { layout, matrix, kind }
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn adjoint(&self) -> Self {
        Self::tagged(self.layout.clone(), self.matrix.adjoint(), self.kind)
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.dim() != self.dim() {
            return Err(Error::Layout(format!(
                "operator on {} applied to state on {}",
                self.layout,
                state.layout()
            )));
        }
        StateVector::unnormalized(self.layout.clone(), self.matrix.apply(state.amplitudes()))
    }

    /// `self * other`; layouts must agree.
    pub fn compose(&self, other: &OperatorMatrix) -> Result<Self> {
        if self.layout != other.layout {
            return Err(Error::Layout(format!(
                "product of operators on {} and {}",
                self.layout, other.layout
            )));
        }
        let kind = match (self.kind, other.kind) {
            (OperatorKind::Unitary, OperatorKind::Unitary) => OperatorKind::Unitary,
            _ => OperatorKind::General,
        };
        Ok(Self::tagged(
            self.layout.clone(),
            self.matrix.matmul(&other.matrix),
            kind,
        ))
    }

    pub fn tensor(&self, other: &OperatorMatrix) -> Result<Self> {
        Ok(Self::tagged(
            self.layout.concat(&other.layout)?,
            self.matrix.kron(&other.matrix),
            self.kind.meet(other.kind),
        ))
    }

    /// Reduced operator on the `keep` subsystems (taken in layout order).
    pub fn partial_trace(&self, keep: &[char]) -> Result<Self> {
        partial_trace(self, keep)
    }
}

fn check_layout(layout: &SubsystemLayout, matrix: &CMatrix) -> Result<()> {
    if layout.total_dim() != matrix.dim() {
        return Err(Error::Layout(format!(
            "{0}x{0} matrix for layout {layout} of dimension {1}",
            matrix.dim(),
            layout.total_dim()
        )));
    }
    Ok(())
}

/// Kronecker product with concatenated layouts.
pub trait TensorProduct: Sized {
    fn tensor_with(&self, other: &Self) -> Result<Self>;
}

impl TensorProduct for StateVector {
    fn tensor_with(&self, other: &Self) -> Result<Self> {
        self.tensor(other)
    }
}

impl TensorProduct for OperatorMatrix {
    fn tensor_with(&self, other: &Self) -> Result<Self> {
        self.tensor(other)
    }
}

/// `a ⊗ b` for states or operators; fails with a layout error on shared labels.
pub fn tensor_product<T: TensorProduct>(a: &T, b: &T) -> Result<T> {
    a.tensor_with(b)
}

/// Traces out every subsystem not listed in `keep`.
///
/// `keep` must be a nonempty proper subset of the operator's labels.
pub fn partial_trace(op: &OperatorMatrix, keep: &[char]) -> Result<OperatorMatrix> {
    let layout = op.layout();
    let kept_layout = layout.restrict(keep)?;
    if kept_layout.len() == layout.len() {
        return Err(Error::Layout("partial trace must remove at least one subsystem".into()));
    }
    if kept_layout.is_empty() {
        return Err(Error::Layout("partial trace must keep at least one subsystem".into()));
    }

    let dims: Vec<usize> = layout.parts().iter().map(|p| p.dim.get()).collect();
    let kept: Vec<bool> = layout.parts().iter().map(|p| keep.contains(&p.label)).collect();
    let kept_dim = kept_layout.total_dim();
    let traced_dim = layout.total_dim() / kept_dim;

    // full_index[k * traced_dim + t] is the flattened index with kept digits k and traced digits t
    let mut full_index = vec![0usize; layout.total_dim()];
    for full in 0..layout.total_dim() {
        let (mut k, mut t) = (0, 0);
        let mut rest = full;
        let mut k_stride = 1;
        let mut t_stride = 1;
        for (i, &d) in dims.iter().enumerate().rev() {
            let digit = rest % d;
            rest /= d;
            if kept[i] {
                k += digit * k_stride;
                k_stride *= d;
            } else {
                t += digit * t_stride;
                t_stride *= d;
            }
        }
        full_index[k * traced_dim + t] = full;
    }

    let m = op.matrix();
    let reduced = CMatrix::from_fn(kept_dim, |r, c| {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in 0..traced_dim {
            acc += m[(full_index[r * traced_dim + t], full_index[c * traced_dim + t])];
        }
        acc
    });
    let kind = match op.kind() {
        OperatorKind::Hermitian | OperatorKind::Projector => OperatorKind::Hermitian,
        _ => OperatorKind::General,
    };
    Ok(OperatorMatrix::tagged(kept_layout, reduced, kind))
}

/// `Re <psi|rho|psi>`.
pub fn fidelity_pure(psi: &StateVector, rho: &OperatorMatrix) -> Result<f64> {
    if psi.dim() != rho.dim() {
        return Err(Error::Layout(format!(
            "fidelity between state of dimension {} and operator of dimension {}",
            psi.dim(),
            rho.dim()
        )));
    }
    let rho_psi = rho.matrix().apply(psi.amplitudes());
    Ok(super::matrix::inner(psi.amplitudes(), &rho_psi).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit::{random_state, Dimension};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_x(label: char) -> OperatorMatrix {
        let m = CMatrix::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]]);
        OperatorMatrix::new(
            SubsystemLayout::single(label, Dimension::new(2).unwrap()),
            m,
            OperatorKind::Unitary,
        )
        .unwrap()
    }

    #[test]
    fn x_tensor_identity_flips_first_qubit() {
        let d2 = Dimension::new(2).unwrap();
        let xi = tensor_product(
            &pauli_x('A'),
            &OperatorMatrix::identity(SubsystemLayout::single('B', d2)),
        )
        .unwrap();
        assert_eq!(xi.kind(), OperatorKind::General);
        let zero = StateVector::basis(xi.layout().clone(), 0).unwrap();
        let out = xi.apply(&zero).unwrap();
        assert_eq!(out, StateVector::basis(xi.layout().clone(), 2).unwrap());
    }

    #[test]
    fn kind_tags_are_verified() {
        let l = SubsystemLayout::single('A', Dimension::new(2).unwrap());
        let m = CMatrix::from_rows(&[vec![c(1., 0.), c(1., 0.)], vec![c(0., 0.), c(0., 0.)]]);
        assert!(OperatorMatrix::new(l.clone(), m.clone(), OperatorKind::Unitary).is_err());
        assert!(OperatorMatrix::new(l.clone(), m.clone(), OperatorKind::Hermitian).is_err());
        assert!(OperatorMatrix::new(l.clone(), m.clone(), OperatorKind::Projector).is_err());
        assert!(OperatorMatrix::new(l.clone(), m, OperatorKind::General).is_ok());
        assert!(OperatorMatrix::new(l, CMatrix::identity(3), OperatorKind::General).is_err());
    }

    #[test]
    fn partial_trace_rejects_empty_and_full_keep_sets() {
        let l = SubsystemLayout::arb(Dimension::new(2).unwrap());
        let id = OperatorMatrix::identity(l);
        assert!(matches!(partial_trace(&id, &[]), Err(Error::Layout(_))));
        assert!(matches!(partial_trace(&id, &['A', 'R', 'B']), Err(Error::Layout(_))));
        assert!(matches!(partial_trace(&id, &['Z']), Err(Error::Layout(_))));
        let r = partial_trace(&id, &['R']).unwrap();
        assert!(r.matrix().max_abs_diff(&CMatrix::identity(2).scale_real(4.0)) < 1e-15);
    }

    #[test]
    fn partial_trace_of_product_state() {
        let d3 = Dimension::new(3).unwrap();
        let a = random_state(d3, 1).projector();
        let b = random_state(d3, 2)
            .relabel(SubsystemLayout::single('B', d3))
            .unwrap()
            .projector();
        let b = OperatorMatrix::tagged(b.layout().clone(), b.matrix().scale_real(0.7), OperatorKind::Hermitian);
        let ab = tensor_product(&a, &b).unwrap();
        let reduced = partial_trace(&ab, &['A']).unwrap();
        assert!(reduced.matrix().max_abs_diff(&a.matrix().scale_real(0.7)) < 1e-12);
    }

    #[test]
    fn fidelity_of_maximally_mixed_qubit() {
        let d2 = Dimension::new(2).unwrap();
        let l = SubsystemLayout::single('A', d2);
        let zero = StateVector::basis(l.clone(), 0).unwrap();
        assert!((fidelity_pure(&zero, &zero.projector()).unwrap() - 1.0).abs() < 1e-15);
        let mixed = OperatorMatrix::new(l, CMatrix::identity(2).scale_real(0.5), OperatorKind::Hermitian).unwrap();
        assert!((fidelity_pure(&zero, &mixed).unwrap() - 0.5).abs() < 1e-15);
        let wrong = OperatorMatrix::identity(SubsystemLayout::single('A', Dimension::new(3).unwrap()));
        assert!(matches!(fidelity_pure(&zero, &wrong), Err(Error::Layout(_))));
    }

    #[test]
    fn fidelity_matches_overlap_oracle() {
        let d = Dimension::new(4).unwrap();
        for seed in 0..20 {
            let psi = random_state(d, seed);
            let phi = random_state(d, seed + 100);
            let expected = crate::qudit::matrix::inner(phi.amplitudes(), psi.amplitudes()).norm_sqr();
            let got = fidelity_pure(&psi, &phi.projector()).unwrap();
            assert!((got - expected).abs() < EPS_NORM);
        }
    }
}
