//! Brute-force reference computations.
//!
//! Everything here works on raw amplitude vectors and rebuilds the shift and
//! phase operators, the entangled resource and the measurement amplitudes from
//! their definitions. Only the generic primitives of [`crate::qudit`] are
//! shared with the code under test. These routines favour transparency over
//! speed and are meant for tests and acceptance checks.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::partial::MeasurementStrength;
use crate::qudit::{partial_trace, CMatrix, Dimension, OperatorMatrix, OrthonormalBasis, StateVector, SubsystemLayout};
use crate::EPS_PROB;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn mat_vec(m: &[Vec<Complex64>], v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn adjoint(m: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = m.len();
    (0..n).map(|r| (0..n).map(|c| m[c][r].conj()).collect()).collect()
}

/// `X^a Z^b` built as the product of explicit shift and clock matrices.
fn shift_clock(d: usize, m: usize) -> Vec<Vec<Complex64>> {
    let (a, b) = (m / d, m % d);
    let mut x = vec![vec![ZERO; d]; d];
    let mut z = vec![vec![ZERO; d]; d];
    for n in 0..d {
        x[(n + 1) % d][n] = Complex64::new(1.0, 0.0);
        z[n][n] = Complex64::from_polar(1.0, 2.0 * PI * n as f64 / d as f64);
    }
    let mul = |p: &Vec<Vec<Complex64>>, q: &Vec<Vec<Complex64>>| -> Vec<Vec<Complex64>> {
        (0..d)
            .map(|r| (0..d).map(|c| (0..d).map(|k| p[r][k] * q[k][c]).sum()).collect())
            .collect()
    };
    let mut u: Vec<Vec<Complex64>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|c| if r == c { Complex64::new(1.0, 0.0) } else { ZERO })
                .collect()
        })
        .collect();
    for _ in 0..a {
        u = mul(&u, &x);
    }
    for _ in 0..b {
        u = mul(&u, &z);
    }
    u
}

fn check_outcome(d: usize, m: usize) -> Result<()> {
    if m >= d * d {
        return Err(Error::Outcome { m, d });
    }
    Ok(())
}

/// `|psi> ⊗ d^{-1/2} sum_n |n>|n>`, index `a d^2 + r d + b`.
fn tripartite_input(psi: &[Complex64]) -> Vec<Complex64> {
    let d = psi.len();
    let s = 1.0 / (d as f64).sqrt();
    let mut v = vec![ZERO; d * d * d];
    for a in 0..d {
        for n in 0..d {
            v[a * d * d + n * d + n] = psi[a] * s;
        }
    }
    v
}

/// Bell vector `(U ⊗ I) d^{-1/2} sum_n |n>|n>` on a pair, index `a d + r`.
fn bell_vector(d: usize, m: usize) -> Vec<Complex64> {
    let u = shift_clock(d, m);
    let s = 1.0 / (d as f64).sqrt();
    let mut v = vec![ZERO; d * d];
    for a in 0..d {
        for n in 0..d {
            v[a * d + n] = u[a][n] * s;
        }
    }
    v
}

/// `Pi(m)|v>` for `Pi(m) = |m><m|_AR ⊗ I_B`.
fn project_on_bell(d: usize, m: usize, v: &[Complex64]) -> Vec<Complex64> {
    let bell = bell_vector(d, m);
    let mut out = vec![ZERO; v.len()];
    for b in 0..d {
        let amp: Complex64 = (0..d * d).map(|ar| bell[ar].conj() * v[ar * d + b]).sum();
        for ar in 0..d * d {
            out[ar * d + b] += bell[ar] * amp;
        }
    }
    out
}

/// `(M(m) ⊗ I)|psi;E>` normalised, with `M(m) = C_M |m><m| + C_I I/d`.
fn partial_output(psi: &[Complex64], theta: f64, m: usize) -> Vec<Complex64> {
    let d = psi.len();
    let df = d as f64;
    let norm = (1.0 + 2.0 / df * theta.sin() * theta.cos()).sqrt();
    let (c_m, c_i) = (theta.cos() / norm, theta.sin() / norm);
    let input = tripartite_input(psi);
    let projected = project_on_bell(d, m, &input);
    let out: Vec<Complex64> = projected
        .iter()
        .zip(&input)
        .map(|(p, x)| p * c_m + x * (c_i / df))
        .collect();
    let n = dot(&out, &out).re.sqrt();
    out.into_iter().map(|x| x / n).collect()
}

/// `<f|V|i> / <f|i>` evaluated literally.
pub fn oracle_weak_value(i_state: &StateVector, f_state: &StateVector, v: &OperatorMatrix) -> Result<Complex64> {
    if i_state.dim() != f_state.dim() || v.dim() != i_state.dim() {
        return Err(Error::Layout("weak value of mismatched dimensions".into()));
    }
    let overlap = dot(f_state.amplitudes(), i_state.amplitudes());
    if overlap.norm() <= EPS_PROB {
        return Err(Error::ZeroPostSelection {
            probability: overlap.norm_sqr(),
        });
    }
    let rows: Vec<Vec<Complex64>> = (0..v.dim()).map(|r| v.matrix().row(r).to_vec()).collect();
    Ok(dot(f_state.amplitudes(), &mat_vec(&rows, i_state.amplitudes())) / overlap)
}

/// Weak value of `V` on `(A, R, B)` for input `|psi;E>` post-selected on the
/// Bell outcome `m`: `<psi;E|Pi(m) V|psi;E> / <psi;E|Pi(m)|psi;E>`.
pub fn oracle_teleport_weak_value(psi: &StateVector, m: usize, v: &CMatrix) -> Result<Complex64> {
    let d = psi.dim();
    check_outcome(d, m)?;
    if v.dim() != d * d * d {
        return Err(Error::Layout("observable must act on (A, R, B)".into()));
    }
    let input = tripartite_input(psi.amplitudes());
    let projected = project_on_bell(d, m, &input);
    let denominator = dot(&projected, &input);
    if denominator.norm() <= EPS_PROB {
        return Err(Error::ZeroPostSelection {
            probability: denominator.re,
        });
    }
    let v_input: Vec<Complex64> = (0..v.dim())
        .map(|r| v.row(r).iter().zip(&input).map(|(a, b)| a * b).sum())
        .collect();
    Ok(dot(&projected, &v_input) / denominator)
}

/// Conditional `B` state `(1/d) U(m)^dagger |psi>` of ideal teleportation.
pub fn oracle_teleported_state(psi: &StateVector, m: usize) -> Result<Vec<Complex64>> {
    let d = psi.dim();
    check_outcome(d, m)?;
    let u_dag = adjoint(&shift_clock(d, m));
    Ok(mat_vec(&u_dag, psi.amplitudes())
        .into_iter()
        .map(|x| x / d as f64)
        .collect())
}

/// Born-rule joint probabilities of `|q_i><q_i|_A ⊗ I_R ⊗ U^dagger|p_j><p_j|U_B`
/// on the normalised partial-measurement output, indexed `[i][j]`.
pub fn oracle_output_probabilities(
    psi: &StateVector,
    theta: MeasurementStrength,
    m: usize,
    q_basis: &OrthonormalBasis,
    p_basis: &OrthonormalBasis,
) -> Result<Vec<Vec<f64>>> {
    let d = psi.dim();
    check_outcome(d, m)?;
    if q_basis.dim() != d || p_basis.dim() != d {
        return Err(Error::Basis("basis dimension differs from the input".into()));
    }
    let out = partial_output(psi.amplitudes(), theta.radians(), m);
    let u_dag = adjoint(&shift_clock(d, m));
    let mut table = vec![vec![0.0; d]; d];
    for (i, row) in table.iter_mut().enumerate() {
        let q = q_basis.vector(i);
        for (j, cell) in row.iter_mut().enumerate() {
            let pb = mat_vec(&u_dag, p_basis.vector(j));
            // <q| ⊗ I_R ⊗ <pb| applied to the output leaves a vector on R
            let mut on_r = vec![ZERO; d];
            for a in 0..d {
                for (r, slot) in on_r.iter_mut().enumerate() {
                    for b in 0..d {
                        *slot += q[a].conj() * pb[b].conj() * out[a * d * d + r * d + b];
                    }
                }
            }
            *cell = dot(&on_r, &on_r).re;
        }
    }
    Ok(table)
}

/// `(F_A, F_B)` from reduced states of the partial-measurement output:
/// `F_A = <psi|Tr_RB rho|psi>`, `F_B = <psi|U Tr_AR rho U^dagger|psi>`.
pub fn oracle_fidelities(psi: &StateVector, theta: MeasurementStrength, m: usize) -> Result<(f64, f64)> {
    let d = psi.dim();
    check_outcome(d, m)?;
    let dim = Dimension::new(d)?;
    let out = partial_output(psi.amplitudes(), theta.radians(), m);
    let rho = OperatorMatrix::general(SubsystemLayout::arb(dim), CMatrix::outer(&out, &out))?;
    let rho_a = partial_trace(&rho, &['A'])?;
    let rho_b = partial_trace(&rho, &['B'])?;
    let amps = psi.amplitudes();
    let expect = |op: &OperatorMatrix, v: &[Complex64]| -> f64 {
        let rows: Vec<Vec<Complex64>> = (0..d).map(|r| op.matrix().row(r).to_vec()).collect();
        dot(v, &mat_vec(&rows, v)).re
    };
    // <psi|U rho_B U^dagger|psi> = <phi|rho_B|phi> with phi = U^dagger psi
    let phi = mat_vec(&adjoint(&shift_clock(d, m)), amps);
    Ok((expect(&rho_a, amps), expect(&rho_b, &phi)))
}
