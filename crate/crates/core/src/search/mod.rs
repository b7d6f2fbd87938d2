//! Bounded exact searches and the proof-step operations on chain extensions.

mod bounds;
mod budget;
mod enumerate;
mod lemma;
pub mod oracle;

use std::fmt;
use std::time::Duration;

use serde::Serialize;

pub use bounds::{main_theorem_bound, recursion_step_holds, self_power_product};
pub use budget::SearchBudget;
pub(crate) use budget::Meter;
pub use enumerate::{decide_readability, decide_readability_with, has_read_k_extension, has_read_k_extension_with, EnumerateOptions};
pub use lemma::{find_2mult_by_scan, find_2mult_for_edge, peel_step, PeelOutcome, TwoMult};

/// Outcome of a bounded decision procedure. `Unknown` means the budget ran
/// out before the answer was settled and must never be read as `No`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision<W> {
    Yes(W),
    No,
    Unknown(String),
}

impl<W> Decision<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Decision::Unknown(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Decision::Yes(w) => Some(w),
            _ => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Decision<V> {
        match self {
            Decision::Yes(w) => Decision::Yes(f(w)),
            Decision::No => Decision::No,
            Decision::Unknown(r) => Decision::Unknown(r),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Decision::Yes(_) => "yes",
            Decision::No => "no",
            Decision::Unknown(_) => "unknown",
        }
    }
}

impl<W> fmt::Display for Decision<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub candidates: u64,
    #[serde(serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult<W> {
    pub decision: Decision<W>,
    pub stats: SearchStats,
}
