//! Maximally entangled states, Weyl-Heisenberg unitaries and the Bell basis.
//!
//! The unitaries are `U(a, b) = X^a Z^b` with `X|n> = |n + 1 mod d>` and
//! `Z|n> = w^n |n>`, `w = exp(2 pi i / d)`. No extra phase is attached, so
//! `U(a, b)|n> = w^{bn} |n + a>`. They satisfy `Tr(U(m)^dagger U(m')) = d delta`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qudit::{CMatrix, Dimension, OperatorKind, OperatorMatrix, StateVector, SubsystemLayout};

/// Bell measurement outcome `m = a d + b` for a given qudit dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BellOutcome {
    index: usize,
    dim: Dimension,
}

impl BellOutcome {
    pub fn new(dim: Dimension, m: usize) -> Result<Self> {
        if m >= dim.outcomes() {
            return Err(Error::Outcome { m, d: dim.get() });
        }
        Ok(Self { index: m, dim })
    }

    /// Outcome with shift exponent `a` and phase exponent `b`.
    pub fn from_pair(dim: Dimension, a: usize, b: usize) -> Result<Self> {
        let d = dim.get();
        if a >= d || b >= d {
            return Err(Error::Outcome { m: a * d + b, d });
        }
        Ok(Self { index: a * d + b, dim })
    }

    /// All `d^2` outcomes in ascending order.
    pub fn all(dim: Dimension) -> impl Iterator<Item = BellOutcome> {
        (0..dim.outcomes()).map(move |index| BellOutcome { index, dim })
    }

    pub fn index(self) -> usize {
        self.index
    }

    pub fn dim(self) -> Dimension {
        self.dim
    }

    /// Shift exponent `a`.
    pub fn shift(self) -> usize {
        self.index / self.dim.get()
    }

    /// Phase exponent `b`.
    pub fn phase(self) -> usize {
        self.index % self.dim.get()
    }
}

impl fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (a={}, b={})", self.index, self.shift(), self.phase())
    }
}

/// `w^k` with `w = exp(2 pi i / d)`.
pub(crate) fn root_of_unity(d: usize, k: usize) -> Complex64 {
    let k = k % d;
    match (4 * k) % d {
        // exact values at multiples of a quarter turn
        0 => match (4 * k) / d {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        },
        _ => Complex64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64),
    }
}

/// Matrix of `X^a Z^b`.
pub fn weyl_matrix(m: BellOutcome) -> CMatrix {
    let d = m.dim.get();
    let (a, b) = (m.shift(), m.phase());
    CMatrix::from_fn(d, |r, c| {
        if r == (c + a) % d {
            root_of_unity(d, b * c)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `U(m) = X^a Z^b` as a unitary on a single subsystem labelled `A`.
pub fn weyl_unitary(m: BellOutcome) -> OperatorMatrix {
    OperatorMatrix::new(
        SubsystemLayout::single('A', m.dim),
        weyl_matrix(m),
        OperatorKind::Unitary,
    )
    .expect("Weyl-Heisenberg operators are unitary")
}

/// `|E> = d^{-1/2} sum_n |n; n>` on `(R, B)`.
pub fn entangled_state(dim: Dimension) -> StateVector {
    entangled_on(dim, ('R', 'B'))
}

fn entangled_on(dim: Dimension, labels: (char, char)) -> StateVector {
    let d = dim.get();
    let layout = SubsystemLayout::uniform(&[labels.0, labels.1], dim).expect("labels must be distinct");
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    let a = Complex64::new(1.0 / dim.as_f64().sqrt(), 0.0);
    for n in 0..d {
        amps[n * d + n] = a;
    }
    StateVector::unnormalized(layout, amps).expect("length matches layout")
}

/// `|m> = (U(m) ⊗ I)|E>` on the two given subsystem labels.
pub fn bell_state(m: BellOutcome, labels: (char, char)) -> Result<StateVector> {
    if labels.0 == labels.1 {
        return Err(Error::Layout(format!("duplicate subsystem label '{}'", labels.0)));
    }
    let e = entangled_on(m.dim, labels);
    let u = weyl_matrix(m);
    let d = m.dim.get();
    // (U ⊗ I)|E> = d^{-1/2} sum_n U|n> ⊗ |n>
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    let s = e.amplitudes()[0];
    for n in 0..d {
        for r in 0..d {
            amps[r * d + n] += u[(r, n)] * s;
        }
    }
    StateVector::unnormalized(e.layout().clone(), amps)
}

/// `Pi(m) = |m><m|_AR ⊗ I_B` on the canonical `(A, R, B)` layout.
pub fn bell_projector(m: BellOutcome) -> OperatorMatrix {
    let bell = bell_state(m, ('A', 'R')).expect("distinct labels");
    let pair = CMatrix::outer(bell.amplitudes(), bell.amplitudes());
    let full = pair.kron(&CMatrix::identity(m.dim.get()));
    OperatorMatrix::new(SubsystemLayout::arb(m.dim), full, OperatorKind::Projector)
        .expect("Bell projector is a projector")
}
