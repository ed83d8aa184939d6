//! Partial Bell measurements: `M(m) = C_M |m><m| + C_I I/d`.
//!
//! `theta = 0` is the projective Bell measurement (ideal teleportation),
//! `theta = pi/2` assigns outcomes at random and leaves the state untouched,
//! and `theta = pi/4` realises symmetric optimal 1 -> 2 cloning.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::bell::{bell_projector, bell_state, BellOutcome};
use crate::error::{Error, Result};
use crate::qudit::{
    matrix, CMatrix, Dimension, OperatorKind, OperatorMatrix, OrthonormalBasis, StateVector, SubsystemLayout,
};
use crate::teleport::{prepare_input, single_qudit};
use crate::transient::teleport_transient;

/// Measurement-strength angle `theta` in `[0, pi/2]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct MeasurementStrength(f64);

impl MeasurementStrength {
    pub fn new(theta: f64) -> Result<Self> {
        if (0.0..=FRAC_PI_2).contains(&theta) {
            Ok(Self(theta))
        } else {
            Err(Error::Parameter(format!("theta = {theta} outside [0, pi/2]")))
        }
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

/// Coherent amplitudes of measurement (`C_M`) and identity (`C_I`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartialAmplitudes {
    pub c_m: f64,
    pub c_i: f64,
    pub d: Dimension,
    pub theta: MeasurementStrength,
}

impl PartialAmplitudes {
    /// Weight of the initial state, `C_I^2`.
    pub fn rho_i(&self) -> f64 {
        self.c_i * self.c_i
    }

    /// Weight of the ideal post-measurement state, `C_M^2`.
    pub fn rho_f(&self) -> f64 {
        self.c_m * self.c_m
    }

    /// Weight of the transient state, `(2/d) C_I C_M`.
    pub fn rho_t(&self) -> f64 {
        2.0 / self.d.as_f64() * self.c_i * self.c_m
    }

    /// `C_M^2 + C_I^2 + (2/d) C_M C_I`, one for a complete POVM.
    pub fn povm_norm(&self) -> f64 {
        self.rho_f() + self.rho_i() + self.rho_t()
    }
}

/// One row of the teleportation/cloning trade-off.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityReport {
    pub theta: f64,
    pub c_m: f64,
    pub c_i: f64,
    pub rho_i: f64,
    pub rho_f: f64,
    pub rho_t: f64,
    /// Fidelity of the input system after the measurement.
    pub f_a: f64,
    /// Teleportation fidelity, after the correction `U(m)`.
    pub f_b: f64,
    pub f_avg: f64,
}

pub fn partial_amplitudes(theta: MeasurementStrength, d: Dimension) -> PartialAmplitudes {
    let (sin, cos) = theta.0.sin_cos();
    let norm = (1.0 + 2.0 / d.as_f64() * sin * cos).sqrt();
    PartialAmplitudes {
        c_m: cos / norm,
        c_i: sin / norm,
        d,
        theta,
    }
}

/// `M(m)` on `(A, R)`.
pub fn measurement_operator(theta: MeasurementStrength, m: BellOutcome) -> OperatorMatrix {
    let amp = partial_amplitudes(theta, m.dim());
    let d = m.dim().get();
    let bell = bell_state(m, ('A', 'R')).expect("distinct labels");
    let projector = CMatrix::outer(bell.amplitudes(), bell.amplitudes()).scale_real(amp.c_m);
    let identity = CMatrix::identity(d * d).scale_real(amp.c_i / d as f64);
    OperatorMatrix::new(bell.layout().clone(), &projector + &identity, OperatorKind::Hermitian)
        .expect("real combination of hermitian operators")
}

/// `(M(m) ⊗ I_B)|psi; E>`, not renormalised. Its squared norm is the outcome probability.
pub fn partial_output_vector(psi: &StateVector, theta: MeasurementStrength, m: BellOutcome) -> Result<StateVector> {
    let (dim, _) = single_qudit(psi, 'A')?;
    if dim != m.dim() {
        return Err(Error::Layout(format!(
            "input of dimension {dim} with outcome for d = {}",
            m.dim()
        )));
    }
    let input = prepare_input(psi, dim)?;
    let op = measurement_operator(theta, m);
    let d = dim.get();
    let amps = input.amplitudes();
    let mut out = vec![Complex64::new(0.0, 0.0); d * d * d];
    for ar in 0..d * d {
        for (ar2, coeff) in op.matrix().row(ar).iter().enumerate() {
            for b in 0..d {
                out[ar * d + b] += coeff * amps[ar2 * d + b];
            }
        }
    }
    StateVector::unnormalized(input.layout().clone(), out)
}

/// Normalised output density matrix on `(A, R, B)` given outcome `m`.
pub fn partial_output_state(psi: &StateVector, theta: MeasurementStrength, m: BellOutcome) -> Result<OperatorMatrix> {
    let out = partial_output_vector(psi, theta, m)?.normalized()?;
    Ok(out.projector())
}

/// Output state as a mixture of initial state, ideal final state and the
/// self-adjoint part of the transient state, normalised to unit trace:
/// `rho_i |psi;E><psi;E| + rho_f d^2 Pi|psi;E><psi;E|Pi + rho_T (T + T^dagger)/2`.
pub fn output_mixture(psi: &StateVector, theta: MeasurementStrength, m: BellOutcome) -> Result<OperatorMatrix> {
    let (dim, _) = single_qudit(psi, 'A')?;
    let amp = partial_amplitudes(theta, dim);
    let d2 = dim.outcomes() as f64;
    let input = prepare_input(psi, dim)?;
    let initial = CMatrix::outer(input.amplitudes(), input.amplitudes());
    let projected = bell_projector(m).apply(&input)?;
    let final_state = CMatrix::outer(projected.amplitudes(), projected.amplitudes()).scale_real(d2);
    let transient = teleport_transient(psi, m)?;
    let mixture = &(&initial.scale_real(amp.rho_i()) + &final_state.scale_real(amp.rho_f()))
        + &transient.matrix().hermitian_part().scale_real(amp.rho_t());
    let trace = mixture.trace().re;
    OperatorMatrix::new(
        SubsystemLayout::arb(dim),
        mixture.scale_real(1.0 / trace),
        OperatorKind::Hermitian,
    )
}

/// Closed-form weights and fidelities.
pub fn fidelities(theta: MeasurementStrength, d: Dimension) -> FidelityReport {
    let amp = partial_amplitudes(theta, d);
    let (rho_i, rho_f, rho_t) = (amp.rho_i(), amp.rho_f(), amp.rho_t());
    let df = d.as_f64();
    let loss = (df - 1.0) / df;
    FidelityReport {
        theta: theta.0,
        c_m: amp.c_m,
        c_i: amp.c_i,
        rho_i,
        rho_f,
        rho_t,
        f_a: 1.0 - loss * rho_f,
        f_b: 1.0 - loss * rho_i,
        f_avg: (df + 1.0) / (2.0 * df) + (df - 1.0) / (2.0 * df) * rho_t,
    }
}

/// Joint probabilities of `Q` on the output of `A` and `P` on the corrected
/// output of `B`, indexed `[i][j]`:
/// `rho_i |<q_i|psi>|^2 / d + rho_f |<p_j|psi>|^2 / d + rho_T Re(<p_j|q_i><q_i|psi><psi|p_j>)`.
pub fn output_joint_probabilities(
    psi: &StateVector,
    theta: MeasurementStrength,
    m: BellOutcome,
    q_basis: &OrthonormalBasis,
    p_basis: &OrthonormalBasis,
) -> Result<Vec<Vec<f64>>> {
    let (dim, psi) = single_qudit(psi, 'A')?;
    if dim != m.dim() {
        return Err(Error::Layout(format!(
            "input of dimension {dim} with outcome for d = {}",
            m.dim()
        )));
    }
    let d = dim.get();
    for basis in [q_basis, p_basis] {
        if basis.dim() != d {
            return Err(Error::Basis(format!("basis of dimension {} for d = {d}", basis.dim())));
        }
    }
    let amp = partial_amplitudes(theta, dim);
    let df = dim.as_f64();
    let amps = psi.amplitudes();
    let q_psi: Vec<Complex64> = q_basis.vectors().iter().map(|q| matrix::inner(q, amps)).collect();
    let p_psi: Vec<Complex64> = p_basis.vectors().iter().map(|p| matrix::inner(p, amps)).collect();
    Ok((0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let kd = matrix::inner(p_basis.vector(j), q_basis.vector(i)) * q_psi[i] * p_psi[j].conj();
                    q_psi[i].norm_sqr() / df * amp.rho_i()
                        + p_psi[j].norm_sqr() / df * amp.rho_f()
                        + kd.re * amp.rho_t()
                })
                .collect()
        })
        .collect())
}

/// Uniform `theta` grid over `[lo, hi]` with `n_points` points, endpoints included.
pub fn theta_grid(n_points: usize, range: (f64, f64)) -> Result<Vec<MeasurementStrength>> {
    let (lo, hi) = range;
    if n_points < 2 {
        return Err(Error::Parameter(format!(
            "sweep needs at least 2 points, got {n_points}"
        )));
    }
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::Parameter(format!("empty theta range [{lo}, {hi}]")));
    }
    let (lo_s, hi_s) = (MeasurementStrength::new(lo)?, MeasurementStrength::new(hi)?);
    let last = n_points - 1;
    (0..n_points)
        .map(|k| match k {
            0 => Ok(lo_s),
            k if k == last => Ok(hi_s),
            k => MeasurementStrength::new(lo + (hi - lo) * (k as f64 / last as f64)),
        })
        .collect()
}

/// Fidelity reports along a uniform `theta` grid, in grid order.
pub fn theta_sweep(d: Dimension, n_points: usize, range: (f64, f64)) -> Result<Vec<FidelityReport>> {
    Ok(theta_grid(n_points, range)?
        .into_iter()
        .map(|t| fidelities(t, d))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    use crate::qudit::random_state;
    use crate::{EPS_ACC, EPS_NORM};

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn theta(t: f64) -> MeasurementStrength {
        MeasurementStrength::new(t).unwrap()
    }

    #[test]
    fn strength_range() {
        assert!(MeasurementStrength::new(-1e-9).is_err());
        assert!(MeasurementStrength::new(FRAC_PI_2 + 1e-9).is_err());
        assert!(MeasurementStrength::new(f64::NAN).is_err());
        assert!(MeasurementStrength::new(FRAC_PI_2).is_ok());
    }

    #[test]
    fn amplitude_limits() {
        let a = partial_amplitudes(theta(0.0), dim(3));
        assert_eq!((a.c_m, a.c_i), (1.0, 0.0));
        let a = partial_amplitudes(theta(FRAC_PI_2), dim(3));
        assert!(a.c_m.abs() < EPS_NORM && (a.c_i - 1.0).abs() < EPS_NORM);
        let a = partial_amplitudes(theta(FRAC_PI_4), dim(2));
        let third = 1.0 / 3f64.sqrt();
        assert!((a.c_m - third).abs() < 1e-15 && (a.c_i - third).abs() < 1e-15);
        for d in 2..=6 {
            for k in 0..=10 {
                let a = partial_amplitudes(theta(FRAC_PI_2 * k as f64 / 10.0), dim(d));
                assert!((a.povm_norm() - 1.0).abs() < EPS_NORM);
            }
        }
    }

    #[test]
    fn measurement_operator_limits() {
        let m = BellOutcome::new(dim(2), 2).unwrap();
        let bell = bell_state(m, ('A', 'R')).unwrap();
        let projective = measurement_operator(theta(0.0), m);
        assert!(projective.matrix().max_abs_diff(bell.projector().matrix()) < EPS_NORM);
        let trivial = measurement_operator(theta(FRAC_PI_2), m);
        assert!(trivial.matrix().max_abs_diff(&CMatrix::identity(4).scale_real(0.5)) < EPS_NORM);
    }

    #[test]
    fn povm_sums_to_identity() {
        let d = dim(3);
        let mut acc = CMatrix::zeros(9);
        for m in BellOutcome::all(d) {
            let op = measurement_operator(theta(0.3), m);
            acc = &acc + &op.matrix().adjoint().matmul(op.matrix());
        }
        assert!(acc.max_abs_diff(&CMatrix::identity(9)) < EPS_NORM);
    }

    #[test]
    fn output_state_limits() {
        let d = dim(2);
        let psi = random_state(d, 8);
        let m = BellOutcome::new(d, 1).unwrap();
        let input = prepare_input(&psi, d).unwrap();

        let projective = partial_output_state(&psi, theta(0.0), m).unwrap();
        let projected = bell_projector(m).apply(&input).unwrap();
        let expected = CMatrix::outer(projected.amplitudes(), projected.amplitudes()).scale_real(4.0);
        assert!(projective.matrix().max_abs_diff(&expected) < EPS_NORM);

        let untouched = partial_output_state(&psi, theta(FRAC_PI_2), m).unwrap();
        assert!(untouched.matrix().max_abs_diff(input.projector().matrix()) < EPS_NORM);
    }

    #[test]
    fn output_state_equals_mixture() {
        let d = dim(2);
        let psi = random_state(d, 99);
        for m in BellOutcome::all(d) {
            let lhs = partial_output_state(&psi, theta(FRAC_PI_4), m).unwrap();
            let rhs = output_mixture(&psi, theta(FRAC_PI_4), m).unwrap();
            assert!(lhs.matrix().max_abs_diff(rhs.matrix()) < EPS_ACC);
        }
    }

    #[test]
    fn outcome_probability_is_uniform() {
        let d = dim(3);
        let psi = random_state(d, 4);
        for m in BellOutcome::all(d) {
            let p = partial_output_vector(&psi, theta(FRAC_PI_8), m).unwrap().norm_sqr();
            assert!((p - 1.0 / 9.0).abs() < EPS_NORM);
        }
    }

    #[test]
    fn closed_form_fidelities() {
        let r = fidelities(theta(0.0), dim(2));
        assert_eq!((r.f_b, r.f_a), (1.0, 0.5));
        let r = fidelities(theta(FRAC_PI_4), dim(2));
        for f in [r.f_a, r.f_b, r.f_avg] {
            assert!((f - 5.0 / 6.0).abs() < 1e-12);
        }
        let r = fidelities(theta(FRAC_PI_4), dim(3));
        assert!((r.rho_t - 0.25).abs() < 1e-12);
        assert!((r.f_avg - 0.75).abs() < 1e-12);
        assert!(((r.f_a + r.f_b) / 2.0 - r.f_avg).abs() < 1e-12);
    }

    #[test]
    fn joint_probabilities_worked_point() {
        let d = dim(2);
        let psi = StateVector::basis(SubsystemLayout::single('A', d), 0).unwrap();
        let comp = OrthonormalBasis::computational(d);
        let m = BellOutcome::new(d, 0).unwrap();
        let p = output_joint_probabilities(&psi, theta(FRAC_PI_4), m, &comp, &comp).unwrap();
        let expected = [[2.0 / 3.0, 1.0 / 6.0], [1.0 / 6.0, 0.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((p[i][j] - expected[i][j]).abs() < EPS_ACC);
            }
        }
    }

    #[test]
    fn joint_probabilities_without_measurement() {
        let d = dim(3);
        let psi = random_state(d, 12);
        let q = OrthonormalBasis::random(d, 1);
        let p = OrthonormalBasis::random(d, 2);
        let m = BellOutcome::new(d, 4).unwrap();
        let table = output_joint_probabilities(&psi, theta(FRAC_PI_2), m, &q, &p).unwrap();
        let mut total = 0.0;
        for i in 0..3 {
            let born = matrix::inner(q.vector(i), psi.amplitudes()).norm_sqr();
            for j in 0..3 {
                assert!((table[i][j] - born / 3.0).abs() < EPS_ACC);
                total += table[i][j];
            }
        }
        assert!((total - 1.0).abs() < EPS_ACC);
    }

    #[test]
    fn sweep_grid_and_crossing() {
        let rows = theta_sweep(dim(2), 101, (0.0, FRAC_PI_2)).unwrap();
        assert_eq!(rows.len(), 101);
        assert_eq!(rows[0].theta, 0.0);
        assert_eq!(rows[100].theta, FRAC_PI_2);
        assert_eq!(rows[50].theta, FRAC_PI_4);
        assert!((rows[50].f_a - rows[50].f_b).abs() < EPS_ACC);
        for w in rows[..=50].windows(2) {
            assert!(w[1].f_a > w[0].f_a && w[1].f_b < w[0].f_b);
        }
        assert!(theta_sweep(dim(2), 1, (0.0, 1.0)).is_err());
        assert!(theta_sweep(dim(2), 5, (1.0, 0.5)).is_err());
        assert!(theta_sweep(dim(2), 5, (0.0, 2.0)).is_err());
    }
}
