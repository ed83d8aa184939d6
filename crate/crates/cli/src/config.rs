use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use qtele_core::{random_state, transient::Frame, Dimension, OrthonormalBasis, StateVector, SubsystemLayout};

/// How the input state `psi` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiSpec {
    /// Computational basis state `|n>`.
    Basis(usize),
    /// Uniform superposition of all basis states.
    Plus,
    /// Seeded Haar-random state (uses the run seed).
    Random,
}

impl PsiSpec {
    pub fn build(self, d: Dimension, seed: u64) -> qtele_core::Result<StateVector> {
        match self {
            PsiSpec::Basis(n) => StateVector::basis(SubsystemLayout::single('A', d), n),
            PsiSpec::Plus => Ok(StateVector::plus('A', d)),
            PsiSpec::Random => Ok(random_state(d, seed)),
        }
    }
}

impl FromStr for PsiSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plus" => Ok(PsiSpec::Plus),
            "random" => Ok(PsiSpec::Random),
            _ => match s.strip_prefix("basis:") {
                Some(n) => n
                    .parse()
                    .map(PsiSpec::Basis)
                    .map_err(|_| format!("invalid basis index in '{s}'")),
                None => Err(format!("unknown state '{s}' (expected basis:N, plus or random)")),
            },
        }
    }
}

impl fmt::Display for PsiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiSpec::Basis(n) => write!(f, "basis:{n}"),
            PsiSpec::Plus => f.write_str("plus"),
            PsiSpec::Random => f.write_str("random"),
        }
    }
}

/// Named single-qudit measurement basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisSpec {
    Computational,
    Fourier,
    /// Fourier basis with quadratic phases (the `Y` eigenbasis for qubits).
    Chirp,
    Random(u64),
}

impl BasisSpec {
    pub fn build(self, d: Dimension) -> OrthonormalBasis {
        match self {
            BasisSpec::Computational => OrthonormalBasis::computational(d),
            BasisSpec::Fourier => OrthonormalBasis::fourier(d),
            BasisSpec::Chirp => OrthonormalBasis::chirp(d),
            BasisSpec::Random(seed) => OrthonormalBasis::random(d, seed),
        }
    }
}

impl FromStr for BasisSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "computational" => Ok(BasisSpec::Computational),
            "fourier" => Ok(BasisSpec::Fourier),
            "chirp" => Ok(BasisSpec::Chirp),
            _ => match s.strip_prefix("random:") {
                Some(seed) => seed
                    .parse()
                    .map(BasisSpec::Random)
                    .map_err(|_| format!("invalid seed in '{s}'")),
                None => Err(format!(
                    "unknown basis '{s}' (expected computational, fourier, chirp or random:SEED)"
                )),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Teleport {
        m: Option<usize>,
    },
    WeakValues {
        m: Option<usize>,
        q_basis: BasisSpec,
        p_basis: BasisSpec,
        frame: Frame,
        check_marginals: bool,
    },
    JointProbs {
        theta: f64,
        m: usize,
        q_basis: BasisSpec,
        p_basis: BasisSpec,
    },
    Sweep {
        points: usize,
        theta_min: f64,
        theta_max: f64,
    },
}

/// Everything that determines a run. Identical configs give byte-identical output.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub d: usize,
    pub seed: u64,
    pub psi: PsiSpec,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_psi() {
        assert_eq!("basis:3".parse::<PsiSpec>(), Ok(PsiSpec::Basis(3)));
        assert_eq!("plus".parse::<PsiSpec>(), Ok(PsiSpec::Plus));
        assert!("basis:x".parse::<PsiSpec>().is_err());
        assert!("minus".parse::<PsiSpec>().is_err());
    }

    #[test]
    fn parse_basis() {
        assert_eq!("random:17".parse::<BasisSpec>(), Ok(BasisSpec::Random(17)));
        assert_eq!("chirp".parse::<BasisSpec>(), Ok(BasisSpec::Chirp));
        assert!("random:".parse::<BasisSpec>().is_err());
        assert!("pauli".parse::<BasisSpec>().is_err());
    }

    #[test]
    fn basis_index_out_of_range() {
        let d = Dimension::new(2).unwrap();
        assert!(PsiSpec::Basis(2).build(d, 0).is_err());
        assert!(PsiSpec::Basis(1).build(d, 0).is_ok());
    }
}
