//! Qudit teleportation analysis.
//!
//! The crate is organised bottom-up:
//!
//! - [`qudit`]: dense complex linear algebra over labelled qudit subsystems
//!   (tensor products, partial traces, fidelities, seeded Haar states).
//! - [`bell`]: the maximally entangled reference state, the Weyl-Heisenberg
//!   unitaries `X^a Z^b` and the Bell basis they generate.
//! - [`teleport`]: ideal teleportation by Bell projection and correction.
//! - [`transient`]: transient states `rho_i Pi_f / Tr(rho_i Pi_f)` and the weak
//!   values / complex joint probabilities they encode.
//! - [`partial`]: the partial Bell measurement family interpolating between
//!   teleportation and optimal 1 -> 2 cloning.
//! - [`oracle`]: brute-force reference computations used as ground truth.
//!
//! All subsystems are stored in the fixed order `(A, R, B)`, with flattened
//! index `n_A * d^2 + n_R * d + n_B`.

pub mod bell;
pub mod error;
pub mod oracle;
pub mod partial;
pub mod qudit;
pub mod teleport;
pub mod transient;

pub use num_complex::Complex64;

pub use bell::{bell_projector, bell_state, entangled_state, weyl_unitary, BellOutcome};
pub use error::{Error, Result};
pub use partial::{
    fidelities, measurement_operator, output_joint_probabilities, partial_amplitudes, partial_output_state,
    theta_sweep, FidelityReport, MeasurementStrength, PartialAmplitudes,
};
pub use qudit::{
    fidelity_pure, random_state, CMatrix, Dimension, OperatorKind, OperatorMatrix, OrthonormalBasis, StateVector,
    Subsystem, SubsystemLayout,
};
pub use teleport::{average_output, prepare_input, project_bell, ProjectionResult};
pub use transient::{
    complex_joint_probability, correlated_projector_weak_value, local_transient, pair_transient, teleport_transient,
    transient_state, weak_value, Frame, TransientState, WeakValue,
};

/// Tolerance for structural invariants (norms, unitarity, projector identities).
pub const EPS_NORM: f64 = 1e-10;

/// Tolerance for acceptance-level comparisons between independent routes.
pub const EPS_ACC: f64 = 1e-9;

/// Post-selection probabilities at or below this are treated as zero.
pub const EPS_PROB: f64 = 1e-12;
