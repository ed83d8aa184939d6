//! Shared inputs for the criterion benchmarks.

use qtele_core::{random_state, BellOutcome, Dimension, StateVector};

/// Seeded input state and a non-trivial Bell outcome for dimension `d`.
pub fn fixture(d: usize) -> (StateVector, BellOutcome) {
    let dim = Dimension::new(d).expect("benchmark dimension in range");
    let m = BellOutcome::from_pair(dim, 1, d - 1).expect("valid pair");
    (random_state(dim, 0x5eed), m)
}
