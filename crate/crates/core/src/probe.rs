use std::fmt;

/// Outcome of a bounded nilpotency search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    /// Least index at which the power vanishes.
    Index(usize),
    /// No vanishing power up to and including `bound`.
    Absent { bound: usize },
    /// The search needed degrees beyond the context's truncation.
    Unknown { truncation: usize },
}

impl Probe {
    pub fn index(&self) -> Option<usize> {
        match self {
            Probe::Index(k) => Some(*k),
            _ => None,
        }
    }
}

impl fmt::Display for Probe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Probe::Index(k) => write!(f, "nilpotent, index {k}"),
            Probe::Absent { bound } => write!(f, "not nilpotent up to {bound}"),
            Probe::Unknown { truncation } => write!(f, "unknown (truncation {truncation} reached)"),
        }
    }
}
