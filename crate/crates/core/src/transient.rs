//! Transient states and the weak values they encode.
//!
//! A transient state is the trace-one operator `T(f) = rho_i Pi_f / Tr(rho_i Pi_f)`.
//! It is generally not Hermitian; `Tr(V T(f))` is the complex weak value of `V`
//! for initial state `rho_i` and post-selection `Pi_f`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bell::{bell_projector, weyl_matrix, BellOutcome};
use crate::error::{Error, Result};
use crate::qudit::{
    matrix, partial_trace, CMatrix, Dimension, OperatorKind, OperatorMatrix, OrthonormalBasis, StateVector,
    SubsystemLayout,
};
use crate::teleport::{prepare_input, single_qudit};
use crate::{EPS_NORM, EPS_PROB};

/// What a transient state or weak value is conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conditioning {
    Bell(BellOutcome),
    /// A user-supplied final projector.
    Generic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransientState {
    operator: OperatorMatrix,
    conditioning: Conditioning,
}

impl TransientState {
    pub fn operator(&self) -> &OperatorMatrix {
        &self.operator
    }

    pub fn matrix(&self) -> &CMatrix {
        self.operator.matrix()
    }

    pub fn layout(&self) -> &SubsystemLayout {
        self.operator.layout()
    }

    pub fn conditioning(&self) -> Conditioning {
        self.conditioning
    }

    pub fn trace(&self) -> Complex64 {
        self.operator.trace()
    }

    /// Self-adjoint part `(T + T^dagger) / 2`, which carries the real parts of all weak values.
    pub fn hermitian_part(&self) -> OperatorMatrix {
        OperatorMatrix::new(
            self.layout().clone(),
            self.matrix().hermitian_part(),
            OperatorKind::Hermitian,
        )
        .expect("hermitian part is hermitian")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakValue {
    pub value: Complex64,
    pub conditioning: Conditioning,
}

/// Frame in which the `B`-side projector of a correlation is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    /// `U(m)^dagger |p><p| U(m)`: `B` viewed after the correction `U(m)`.
    #[default]
    Corrected,
    /// `|p><p|` in the computational frame of `B`.
    Raw,
}

/// `rho_i Pi_f / Tr(rho_i Pi_f)` with the density operator on the left.
pub fn transient_state(rho_i: &OperatorMatrix, pi_f: &OperatorMatrix) -> Result<TransientState> {
    if rho_i.layout() != pi_f.layout() {
        return Err(Error::Layout(format!(
            "initial state on {} and final projector on {}",
            rho_i.layout(),
            pi_f.layout()
        )));
    }
    for (op, expected) in [
        (rho_i, "a hermitian initial state"),
        (pi_f, "a hermitian final operator"),
    ] {
        let deviation = op.matrix().hermiticity_defect();
        if deviation >= EPS_NORM {
            return Err(Error::Kind { expected, deviation });
        }
    }
    let product = rho_i.matrix().matmul(pi_f.matrix());
    let norm = product.trace();
    if norm.re <= EPS_PROB {
        return Err(Error::ZeroPostSelection { probability: norm.re });
    }
    Ok(TransientState {
        operator: OperatorMatrix::general(rho_i.layout().clone(), product.scale(norm.inv()))?,
        conditioning: Conditioning::Generic,
    })
}

/// `Tr(V T)`.
pub fn weak_value(v: &OperatorMatrix, t: &TransientState) -> Result<WeakValue> {
    if v.layout() != t.layout() {
        return Err(Error::Layout(format!(
            "observable on {} and transient state on {}",
            v.layout(),
            t.layout()
        )));
    }
    Ok(WeakValue {
        value: v.matrix().trace_product(t.matrix()),
        conditioning: t.conditioning,
    })
}

/// `T_ARB(m) = |psi;E><psi;E| Pi(m) / <psi;E|Pi(m)|psi;E>`.
///
/// The product with the rank-one initial state is formed as an outer product
/// `|psi;E> (Pi(m)|psi;E>)^dagger`.
pub fn teleport_transient(psi: &StateVector, m: BellOutcome) -> Result<TransientState> {
    let input = prepare_for(psi, m)?;
    let projected = bell_projector(m).apply(&input)?;
    let probability = matrix::inner(input.amplitudes(), projected.amplitudes()).re;
    let product = CMatrix::outer(input.amplitudes(), projected.amplitudes());
    Ok(TransientState {
        operator: OperatorMatrix::general(input.layout().clone(), product.scale_real(1.0 / probability))?,
        conditioning: Conditioning::Bell(m),
    })
}

/// The expanded form
/// `sum_{k,l} |psi><k|U^dagger ⊗ |l><k| ⊗ |l><psi|U` of the tripartite transient state.
pub fn teleport_transient_expanded(psi: &StateVector, m: BellOutcome) -> Result<TransientState> {
    let (dim, psi) = checked_input(psi, m)?;
    let d = dim.get();
    let u = weyl_matrix(m);
    let amps = psi.amplitudes();
    // <psi|U|b'>
    let bra_u: Vec<Complex64> = (0..d)
        .map(|col| matrix::ordered_sum((0..d).map(|n| amps[n].conj() * u[(n, col)])))
        .collect();
    let mut out = CMatrix::zeros(d * d * d);
    for k in 0..d {
        for l in 0..d {
            // |psi><k|U^dagger on A: entry (a, a') = psi_a conj(U[a'][k])
            for a in 0..d {
                for a2 in 0..d {
                    let left = amps[a] * u[(a2, k)].conj();
                    let row = a * d * d + l * d + l;
                    for (b2, w) in bra_u.iter().enumerate() {
                        let col = a2 * d * d + k * d + b2;
                        out[(row, col)] += left * w;
                    }
                }
            }
        }
    }
    Ok(TransientState {
        operator: OperatorMatrix::general(SubsystemLayout::arb(dim), out)?,
        conditioning: Conditioning::Bell(m),
    })
}

/// Reduction of a tripartite transient state to one subsystem.
pub fn local_transient(t: &TransientState, keep: char) -> Result<TransientState> {
    if !['A', 'R', 'B'].contains(&keep) || t.layout().position(keep).is_none() {
        return Err(Error::Layout(format!(
            "cannot keep subsystem '{keep}' of layout {}",
            t.layout()
        )));
    }
    Ok(TransientState {
        operator: partial_trace(&t.operator, &[keep])?,
        conditioning: t.conditioning,
    })
}

/// Closed forms of the local transient states:
/// `A -> |psi><psi|`, `B -> U^dagger|psi><psi|U`, `R -> |conj(phi)><conj(phi)|` with `phi = U^dagger psi`.
pub fn local_transient_closed_form(psi: &StateVector, m: BellOutcome, keep: char) -> Result<CMatrix> {
    let (_, psi) = checked_input(psi, m)?;
    let u_dag = weyl_matrix(m).adjoint();
    let phi = u_dag.apply(psi.amplitudes());
    match keep {
        'A' => Ok(CMatrix::outer(psi.amplitudes(), psi.amplitudes())),
        'B' => Ok(CMatrix::outer(&phi, &phi)),
        'R' => {
            let bar: Vec<Complex64> = phi.iter().map(|z| z.conj()).collect();
            Ok(CMatrix::outer(&bar, &bar))
        }
        other => Err(Error::Layout(format!(
            "no local transient state for subsystem '{other}'"
        ))),
    }
}

/// `T_AB(m) = sum_k |psi><k|U^dagger ⊗ |k><psi|U`, the transient state with `R` traced out.
pub fn pair_transient(psi: &StateVector, m: BellOutcome) -> Result<TransientState> {
    let (dim, psi) = checked_input(psi, m)?;
    let d = dim.get();
    let u = weyl_matrix(m);
    let amps = psi.amplitudes();
    let bra_u: Vec<Complex64> = (0..d)
        .map(|col| matrix::ordered_sum((0..d).map(|n| amps[n].conj() * u[(n, col)])))
        .collect();
    // entry ((a, b), (a', b')) = psi_a conj(U[a'][b]) <psi|U|b'>
    let t = CMatrix::from_fn(d * d, |row, col| {
        let (a, b) = (row / d, row % d);
        let (a2, b2) = (col / d, col % d);
        amps[a] * u[(a2, b)].conj() * bra_u[b2]
    });
    Ok(TransientState {
        operator: OperatorMatrix::general(SubsystemLayout::uniform(&['A', 'B'], dim)?, t)?,
        conditioning: Conditioning::Bell(m),
    })
}

/// Weak value of `|q_i><q_i|_A ⊗ P_B` under `T_AB(m)`, where `P_B` is `|p_j><p_j|`
/// expressed in `frame`.
pub fn projector_pair_weak_value(
    t_ab: &TransientState,
    q_basis: &OrthonormalBasis,
    i: usize,
    p_basis: &OrthonormalBasis,
    j: usize,
    frame: Frame,
) -> Result<WeakValue> {
    let Conditioning::Bell(m) = t_ab.conditioning else {
        return Err(Error::Layout(
            "projector-pair weak values need a Bell-conditioned pair state".into(),
        ));
    };
    let d = m.dim().get();
    if t_ab.layout().labels() != ['A', 'B'] || t_ab.matrix().dim() != d * d {
        return Err(Error::Layout(format!(
            "expected an (A, B) transient state, got {}",
            t_ab.layout()
        )));
    }
    for basis in [q_basis, p_basis] {
        if basis.dim() != d {
            return Err(Error::Basis(format!("basis of dimension {} for d = {d}", basis.dim())));
        }
    }
    q_basis.check_index(i)?;
    p_basis.check_index(j)?;
    let b_vec = match frame {
        Frame::Corrected => weyl_matrix(m).adjoint().apply(p_basis.vector(j)),
        Frame::Raw => p_basis.vector(j).to_vec(),
    };
    // Tr(T |v><v|) = <v|T|v> with v = q_i ⊗ b
    let v = matrix::kron_vec(q_basis.vector(i), &b_vec);
    let tv = t_ab.matrix().apply(&v);
    Ok(WeakValue {
        value: matrix::inner(&v, &tv),
        conditioning: t_ab.conditioning,
    })
}

/// `Tr(T_AB(m) (|q_i><q_i| ⊗ U^dagger|q_j><q_j|U))`, equal to `delta_ij |<q_i|psi>|^2`.
pub fn correlated_projector_weak_value(
    psi: &StateVector,
    m: BellOutcome,
    q_basis: &OrthonormalBasis,
    i: usize,
    j: usize,
) -> Result<WeakValue> {
    complex_joint_probability(psi, m, q_basis, q_basis, i, j)
}

/// `Tr(T_AB(m) (|q_i><q_i| ⊗ U^dagger|p_j><p_j|U))`, equal to `<p_j|q_i><q_i|psi><psi|p_j>`.
pub fn complex_joint_probability(
    psi: &StateVector,
    m: BellOutcome,
    q_basis: &OrthonormalBasis,
    p_basis: &OrthonormalBasis,
    i: usize,
    j: usize,
) -> Result<WeakValue> {
    let t_ab = pair_transient(psi, m)?;
    projector_pair_weak_value(&t_ab, q_basis, i, p_basis, j, Frame::Corrected)
}

fn checked_input(psi: &StateVector, m: BellOutcome) -> Result<(Dimension, StateVector)> {
    let (dim, a) = single_qudit(psi, 'A')?;
    if dim != m.dim() {
        return Err(Error::Layout(format!(
            "input of dimension {dim} with outcome for d = {}",
            m.dim()
        )));
    }
    Ok((dim, a))
}

fn prepare_for(psi: &StateVector, m: BellOutcome) -> Result<StateVector> {
    let (dim, _) = checked_input(psi, m)?;
    prepare_input(psi, dim)
}
