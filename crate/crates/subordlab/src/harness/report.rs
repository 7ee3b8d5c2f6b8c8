//! Trial reports and their persistence.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Aggregated outcome of a batch of trials on one case.
///
/// Everything except `wall_time` is a deterministic function of
/// (case, seed, trial count, config); `fingerprint` is the digest with
/// the clock removed, and equality of fingerprints is what reproducibility
/// tests assert.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialReport {
    pub case_id: String,
    pub seed: u64,
    pub trials: u64,
    pub passes: u64,
    pub inconclusive: u64,
    pub failures: u64,
    /// Smallest margin among decided trials; 0 when no trial was decided
    /// (the notes say so).
    pub worst_margin: f64,
    /// Instance data of the worst trial. Present whenever failures > 0,
    /// since a failing margin is below every passing one.
    pub witness: Option<serde_json::Value>,
    /// Seconds spent, informational only.
    pub wall_time: f64,
    pub notes: String,
}

impl TrialReport {
    /// Accounting identity every report satisfies.
    pub fn consistent(&self) -> bool {
        self.passes + self.inconclusive + self.failures == self.trials
    }

    /// Serialized report minus `wall_time`, keys sorted.
    pub fn fingerprint(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut()
            .expect("report serializes to an object")
            .remove("wall_time");
        v.to_string()
    }
}

/// Write a report as pretty-printed JSON with a trailing newline.
pub fn persist_report(report: &TrialReport, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Read a report back.
pub fn load_report(path: &Path) -> Result<TrialReport> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> TrialReport {
        TrialReport {
            case_id: "cor-ez".into(),
            seed: 7,
            trials: 10,
            passes: 9,
            inconclusive: 1,
            failures: 0,
            worst_margin: 0.0123,
            witness: Some(serde_json::json!({ "params": [0.1, 0.2] })),
            wall_time: 1.25,
            notes: "fixture".into(),
        }
    }

    #[test]
    fn round_trips_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        let report = sample_report();
        persist_report(&report, &path).unwrap();
        let back = load_report(&path).unwrap();
        assert_eq!(back.case_id, report.case_id);
        assert_eq!(back.trials, report.trials);
        assert_eq!(back.worst_margin, report.worst_margin);
        assert!(back.consistent());
    }

    #[test]
    fn fingerprint_ignores_the_clock() {
        let a = sample_report();
        let mut b = sample_report();
        b.wall_time = 99.0;
        assert_eq!(a.fingerprint(), b.fingerprint());
        b.seed = 8;
        assert_ne!(a.fingerprint(), b.fingerprint());
    }

    #[test]
    fn accounting_identity_is_checked() {
        let mut r = sample_report();
        assert!(r.consistent());
        r.failures = 5;
        assert!(!r.consistent());
    }
}
