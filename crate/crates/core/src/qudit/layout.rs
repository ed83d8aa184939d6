use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of levels of a single qudit, `2 <= d <= 16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Dimension(usize);

impl Dimension {
    pub const MIN: usize = 2;
    pub const MAX: usize = 16;

    pub fn new(d: usize) -> Result<Self> {
        if (Self::MIN..=Self::MAX).contains(&d) {
            Ok(Self(d))
        } else {
            Err(Error::Parameter(format!(
                "qudit dimension {d} outside [{}, {}]",
                Self::MIN,
                Self::MAX
            )))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }

    /// Number of Bell outcomes, `d^2`.
    pub fn outcomes(self) -> usize {
        self.0 * self.0
    }
}

impl TryFrom<usize> for Dimension {
    type Error = Error;

    fn try_from(d: usize) -> Result<Self> {
        Self::new(d)
    }
}

impl From<Dimension> for usize {
    fn from(d: Dimension) -> usize {
        d.0
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A labelled qudit factor of a composite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subsystem {
    pub label: char,
    pub dim: Dimension,
}

/// Ordered list of labelled subsystems. The first label is the most
/// significant digit of the flattened index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsystemLayout {
    parts: Vec<Subsystem>,
}

impl SubsystemLayout {
    pub fn new(parts: Vec<Subsystem>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Layout("layout must contain at least one subsystem".into()));
        }
        for (i, p) in parts.iter().enumerate() {
            if parts[..i].iter().any(|q| q.label == p.label) {
                return Err(Error::Layout(format!("duplicate subsystem label '{}'", p.label)));
            }
        }
        Ok(Self { parts })
    }

    pub fn single(label: char, dim: Dimension) -> Self {
        Self {
            parts: vec![Subsystem { label, dim }],
        }
    }

    /// Layout with the given labels, all of dimension `d`.
    pub fn uniform(labels: &[char], dim: Dimension) -> Result<Self> {
        Self::new(labels.iter().map(|&label| Subsystem { label, dim }).collect())
    }

    /// The canonical teleportation layout `(A, R, B)`.
    pub fn arb(dim: Dimension) -> Self {
        Self::uniform(&['A', 'R', 'B'], dim).expect("canonical labels are distinct")
    }

    pub fn parts(&self) -> &[Subsystem] {
        &self.parts
    }

    pub fn labels(&self) -> Vec<char> {
        self.parts.iter().map(|p| p.label).collect()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.parts.iter().map(|p| p.dim.get()).product()
    }

    pub fn position(&self, label: char) -> Option<usize> {
        self.parts.iter().position(|p| p.label == label)
    }

    /// Concatenation `self ⊗ other`; labels must be disjoint.
    pub fn concat(&self, other: &SubsystemLayout) -> Result<Self> {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Self::new(parts)
    }

    /// Sub-layout with the given labels, kept in this layout's order.
    pub fn restrict(&self, keep: &[char]) -> Result<Self> {
        for &l in keep {
            if self.position(l).is_none() {
                return Err(Error::Layout(format!("unknown subsystem label '{l}'")));
            }
        }
        Self::new(self.parts.iter().copied().filter(|p| keep.contains(&p.label)).collect())
    }
}

impl fmt::Display for SubsystemLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.parts {
            write!(f, "{}", p.label)?;
        }
        Ok(())
    }
}
