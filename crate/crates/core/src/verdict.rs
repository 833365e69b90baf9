use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(count: usize) -> Parity {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// How a parity verdict was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictSource {
    ClosedForm,
    Discriminant,
    BruteForce,
}

/// Parity of the number of irreducible factors of a binary polynomial.
///
/// An even count of factors means at least two, so the polynomial is
/// reducible. An odd count says nothing about irreducibility: odd parity
/// is necessary for irreducibility, never sufficient. `inconclusive` marks
/// exactly those verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityVerdict {
    pub parity: Parity,
    pub source: VerdictSource,
    pub implies_reducible: bool,
    pub inconclusive: bool,
}

impl ParityVerdict {
    pub fn new(parity: Parity, source: VerdictSource) -> Self {
        let even = parity == Parity::Even;
        ParityVerdict {
            parity,
            source,
            implies_reducible: even,
            inconclusive: !even,
        }
    }
}

impl fmt::Display for ParityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} factor count", self.parity)?;
        if self.implies_reducible {
            f.write_str(" (reducible)")
        } else {
            f.write_str(" (inconclusive for irreducibility)")
        }
    }
}
