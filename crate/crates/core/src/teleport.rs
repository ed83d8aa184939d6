//! Ideal teleportation through a projective Bell measurement.

use crate::bell::{bell_state, entangled_state, weyl_matrix, BellOutcome};
use crate::error::{Error, Result};
use crate::qudit::{matrix, CMatrix, Dimension, OperatorKind, OperatorMatrix, StateVector, SubsystemLayout};

/// Outcome of projecting `|psi; E>` onto a Bell state of `(A, R)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    pub outcome: BellOutcome,
    /// `<m|psi; E>` on `B`, not renormalised (norm `1/d` for an ideal input).
    pub unnormalized_b: StateVector,
    pub probability: f64,
    /// `U(m)` applied to the renormalised conditional state.
    pub corrected: StateVector,
}

pub(crate) fn single_qudit(psi: &StateVector, label: char) -> Result<(Dimension, StateVector)> {
    if psi.layout().len() != 1 {
        return Err(Error::Layout(format!(
            "expected a single qudit, got layout {}",
            psi.layout()
        )));
    }
    let dim = psi.layout().parts()[0].dim;
    Ok((dim, psi.relabel(SubsystemLayout::single(label, dim))?))
}

/// `|psi> ⊗ |E>` in the canonical `(A, R, B)` layout.
pub fn prepare_input(psi: &StateVector, dim: Dimension) -> Result<StateVector> {
    if psi.dim() != dim.get() {
        return Err(Error::Layout(format!(
            "input state of dimension {} for d = {dim}",
            psi.dim()
        )));
    }
    let (_, a) = single_qudit(psi, 'A')?;
    a.tensor(&entangled_state(dim))
}

/// Applies `<m|_AR ⊗ I_B` to an `(A, R, B)` vector.
pub(crate) fn contract_bell(input: &StateVector, m: BellOutcome) -> Result<StateVector> {
    let dim = m.dim();
    if input.layout() != &SubsystemLayout::arb(dim) {
        return Err(Error::Layout(format!(
            "Bell projection needs an (A, R, B) state with d = {dim}, got {} of dimension {}",
            input.layout(),
            input.dim()
        )));
    }
    let d = dim.get();
    let bell = bell_state(m, ('A', 'R'))?;
    let amps = input.amplitudes();
    let out = (0..d)
        .map(|b| {
            matrix::ordered_sum(
                bell.amplitudes()
                    .iter()
                    .enumerate()
                    .map(|(ar, x)| x.conj() * amps[ar * d + b]),
            )
        })
        .collect();
    StateVector::unnormalized(SubsystemLayout::single('B', dim), out)
}

/// Projects the prepared input onto Bell outcome `m` and applies the correction `U(m)` to `B`.
pub fn project_bell(input: &StateVector, m: BellOutcome) -> Result<ProjectionResult> {
    let unnormalized_b = contract_bell(input, m)?;
    let probability = unnormalized_b.norm_sqr();
    let conditional = unnormalized_b.normalized()?;
    let corrected = StateVector::unnormalized(
        conditional.layout().clone(),
        weyl_matrix(m).apply(conditional.amplitudes()),
    )?;
    Ok(ProjectionResult {
        outcome: m,
        unnormalized_b,
        probability,
        corrected,
    })
}

/// Outcome-averaged state of `B` after the Bell measurement, before correction:
/// `sum_m p(m) rho_B(m)`. Equals `I/d` for every input.
pub fn average_output(psi: &StateVector) -> Result<OperatorMatrix> {
    let (dim, _) = single_qudit(psi, 'A')?;
    let input = prepare_input(psi, dim)?;
    let mut acc = CMatrix::zeros(dim.get());
    for m in BellOutcome::all(dim) {
        let b = contract_bell(&input, m)?;
        acc = &acc + &CMatrix::outer(b.amplitudes(), b.amplitudes());
    }
    OperatorMatrix::new(SubsystemLayout::single('B', dim), acc, OperatorKind::Hermitian)
}

/// `|<psi|corrected>|`, insensitive to global phase.
pub fn corrected_overlap(psi: &StateVector, result: &ProjectionResult) -> Result<f64> {
    if psi.dim() != result.corrected.dim() {
        return Err(Error::Layout("overlap between states of different dimension".into()));
    }
    Ok(matrix::inner(psi.amplitudes(), result.corrected.amplitudes()).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit::{partial_trace, random_state};
    use crate::EPS_NORM;
    use num_complex::Complex64;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ket0(d: Dimension) -> StateVector {
        StateVector::basis(SubsystemLayout::single('A', d), 0).unwrap()
    }

    #[test]
    fn prepared_qubit_input() {
        let input = prepare_input(&ket0(dim(2)), dim(2)).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut expected = vec![c(0., 0.); 8];
        expected[0] = c(s, 0.);
        expected[3] = c(s, 0.);
        assert!(input.max_abs_diff(&StateVector::unnormalized(input.layout().clone(), expected).unwrap()) < 1e-15);
        assert!((input.norm() - 1.0).abs() < EPS_NORM);
        let b = partial_trace(&input.projector(), &['B']).unwrap();
        assert!(b.matrix().max_abs_diff(&CMatrix::identity(2).scale_real(0.5)) < EPS_NORM);
    }

    #[test]
    fn prepare_rejects_wrong_dimension() {
        assert!(matches!(prepare_input(&ket0(dim(3)), dim(2)), Err(Error::Layout(_))));
    }

    #[test]
    fn shift_outcome_on_ket_zero() {
        let d = dim(2);
        let input = prepare_input(&ket0(d), d).unwrap();
        let r = project_bell(&input, BellOutcome::from_pair(d, 1, 0).unwrap()).unwrap();
        assert!((r.unnormalized_b.amplitudes()[0]).norm() < 1e-15);
        assert!((r.unnormalized_b.amplitudes()[1] - c(0.5, 0.)).norm() < 1e-15);
        assert!((r.probability - 0.25).abs() < EPS_NORM);
        assert!((r.corrected.amplitudes()[0] - c(1., 0.)).norm() < EPS_NORM);
    }

    #[test]
    fn identity_outcome_scales_input() {
        let d = dim(3);
        let psi = random_state(d, 9);
        let r = project_bell(&prepare_input(&psi, d).unwrap(), BellOutcome::new(d, 0).unwrap()).unwrap();
        for (b, p) in r.unnormalized_b.amplitudes().iter().zip(psi.amplitudes()) {
            assert!((b - p / 3.0).norm() < EPS_NORM);
        }
    }

    #[test]
    fn probabilities_sum_to_one() {
        let d = dim(4);
        let input = prepare_input(&random_state(d, 3), d).unwrap();
        let total: f64 = BellOutcome::all(d)
            .map(|m| project_bell(&input, m).unwrap().probability)
            .sum();
        assert!((total - 1.0).abs() < EPS_NORM);
    }

    #[test]
    fn average_is_maximally_mixed() {
        let d = dim(2);
        let avg = average_output(&ket0(d)).unwrap();
        assert!(avg.matrix().max_abs_diff(&CMatrix::identity(2).scale_real(0.5)) < EPS_NORM);
        let d = dim(3);
        let avg = average_output(&random_state(d, 11)).unwrap();
        assert!(avg.matrix().max_abs_diff(&CMatrix::identity(3).scale_real(1.0 / 3.0)) < EPS_NORM);
    }

    #[test]
    fn mismatched_outcome_dimension() {
        let input = prepare_input(&ket0(dim(2)), dim(2)).unwrap();
        let m = BellOutcome::new(dim(3), 0).unwrap();
        assert!(matches!(project_bell(&input, m), Err(Error::Layout(_))));
    }
}
