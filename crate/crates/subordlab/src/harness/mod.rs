//! Executable theorem catalogue.
//!
//! Each entry turns one implication into checkable parts: a flat sampling
//! box to draw instances from, and a pure evaluation that rebuilds the
//! hypothesis from the drawn data, gates on it honestly, and measures the
//! signed margin of the conclusion. A failed gate is a regeneration
//! request, not a verdict: the driver redraws inside the trial's own RNG
//! stream until the retry budget runs out, so trial t is reproducible
//! independent of every other trial and of the thread schedule.

pub mod cases;
mod gen;
mod report;
mod run;

pub use cases::{converse_of, find_case, planted_defect, registry};
pub use gen::Dim;
pub use report::{load_report, persist_report, TrialReport};
pub use run::{falsify, run_case, run_trials};

use crate::config::Config;
use crate::error::Result;

/// One implication, packaged for Monte Carlo verification.
pub struct TheoremCase {
    /// Stable identifier; the CLI accepts it verbatim.
    pub id: &'static str,
    /// Caveats that travel into every report on this case: hypotheses that
    /// are assumed rather than checked, deliberately thin parameter
    /// windows, substituted side conditions.
    pub notes: &'static str,
    /// Sampling box, one slot per scalar draw. Keeping instances as flat
    /// vectors is what makes the falsifier's coordinate refinement act on
    /// the actual function data.
    pub dims: Vec<Dim>,
    /// Rebuild one instance from a drawn vector and judge it.
    pub eval: fn(&[f64], &Config) -> Result<TrialEval>,
}

/// Verdict on a single instance.
#[derive(Debug, Clone)]
pub struct TrialEval {
    /// False when the drawn instance escaped the hypothesis; the driver
    /// redraws instead of counting it against the conclusion.
    pub hypothesis_met: bool,
    /// Signed conclusion margin, laddered against the configured
    /// tolerance by the driver.
    pub margin: f64,
    /// Instance description for the report.
    pub witness: serde_json::Value,
}

impl TrialEval {
    /// A draw that missed the hypothesis; the reason lands in the witness
    /// slot of reports only when every retry misses.
    pub(crate) fn rejected(reason: &str) -> TrialEval {
        TrialEval {
            hypothesis_met: false,
            margin: 0.0,
            witness: serde_json::json!({ "rejected": reason }),
        }
    }
}
