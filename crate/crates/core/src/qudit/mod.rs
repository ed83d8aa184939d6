//! Dense linear algebra for composite qudit systems.

mod basis;
mod layout;
pub mod matrix;
mod operator;
mod state;

pub use basis::OrthonormalBasis;
pub use layout::{Dimension, Subsystem, SubsystemLayout};
pub use matrix::CMatrix;
pub use operator::{fidelity_pure, partial_trace, tensor_product, OperatorKind, OperatorMatrix, TensorProduct};
pub use state::{random_state, StateVector};
