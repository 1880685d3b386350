//! Verdicts comparing two graphs through wedge-stable homology signatures.
//!
//! A verdict either distinguishes the inputs or says the invariant does not;
//! it never asserts quasi-isometry or commensurability.

use std::fmt;

use hypercx_core::complexes::{flag_completion, join_complex};
use hypercx_core::homology::{compare_signatures, homology, Verdict};
use hypercx_core::{ComplexError, Graph, HomologyError, HomologySignature};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    /// Complex of joins; distinguishing means not quasi-isometric.
    Join,
    /// Flag completion; distinguishing means not quasi-isometric.
    Flag,
    /// Complex of joins; distinguishing means not commensurable.
    Commensurability,
}

impl Invariant {
    pub fn name(self) -> &'static str {
        match self {
            Invariant::Join => "join",
            Invariant::Flag => "flag",
            Invariant::Commensurability => "commensurability",
        }
    }
}

impl std::str::FromStr for Invariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "join" => Ok(Invariant::Join),
            "flag" => Ok(Invariant::Flag),
            "commensurability" => Ok(Invariant::Commensurability),
            other => Err(format!("unknown invariant `{other}`")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("graph {0} is disconnected")]
    Disconnected(usize),
    #[error("graph {graph}: link({u}) lies in star({v}) for non-adjacent {u}, {v}; the flag invariant does not apply")]
    FlagPrecondition { graph: usize, u: String, v: String },
    #[error("graph {0} is empty")]
    Empty(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaagVerdict {
    pub invariant: Invariant,
    pub signatures: [HomologySignature; 2],
    pub verdict: Verdict,
}

impl RaagVerdict {
    pub fn distinguished(&self) -> bool {
        self.verdict.is_distinguished()
    }

    pub fn statement(&self) -> &'static str {
        match (self.distinguished(), self.invariant) {
            (false, _) => "not distinguished by this invariant",
            (true, Invariant::Commensurability) => "distinguished: not commensurable",
            (true, _) => "distinguished: not quasi-isometric",
        }
    }
}

impl fmt::Display for RaagVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "invariant {}", self.invariant.name())?;
        for (i, s) in self.signatures.iter().enumerate() {
            writeln!(f, "signature {i}")?;
            write!(f, "{s}")?;
        }
        writeln!(f, "verdict {}", self.statement())?;
        if let Verdict::Distinguished { degree } = self.verdict {
            writeln!(f, "first differing degree {degree}")?;
        }
        Ok(())
    }
}

/// A non-adjacent pair `(u, v)` with `link(u) ⊆ star(v)`.
pub fn flag_obstruction(g: &Graph) -> Option<(usize, usize)> {
    g.vertices()
        .flat_map(|u| g.vertices().map(move |v| (u, v)))
        .find(|&(u, v)| u != v && !g.adjacent(u, v) && g.link(u).is_subset(&g.star(v)))
}

fn signature(g: &Graph, idx: usize, invariant: Invariant) -> Result<HomologySignature, HarnessError> {
    if g.is_empty() {
        return Err(HarnessError::Empty(idx));
    }
    if !g.is_connected() {
        return Err(HarnessError::Disconnected(idx));
    }
    let k = match invariant {
        Invariant::Join | Invariant::Commensurability => join_complex(g)?,
        Invariant::Flag => {
            if let Some((u, v)) = flag_obstruction(g) {
                return Err(HarnessError::FlagPrecondition { graph: idx, u: g.label(u).into(), v: g.label(v).into() });
            }
            flag_completion(g)
        }
    };
    Ok(homology(&k, true)?)
}

pub fn raag_verdict(g1: &Graph, g2: &Graph, invariant: Invariant) -> Result<RaagVerdict, HarnessError> {
    let s1 = signature(g1, 0, invariant)?;
    let s2 = signature(g2, 1, invariant)?;
    let verdict = compare_signatures(&s1, &s2)?;
    Ok(RaagVerdict { invariant, signatures: [s1, s2], verdict })
}
