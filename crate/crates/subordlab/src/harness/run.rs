//! Monte Carlo driver and counterexample search.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Config;
use crate::error::Result;
use crate::exec::{map_indexed, ExecMode};
use crate::harness::cases::find_case;
use crate::harness::gen::{clamp_into, sample};
use crate::harness::report::TrialReport;
use crate::harness::TheoremCase;

/// Admissible fraction below which a case counts as starved.
const STARVATION_RATE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Inconclusive,
}

fn ladder(margin: f64, tol: f64) -> Status {
    if margin > tol {
        Status::Pass
    } else if margin < -tol {
        Status::Fail
    } else {
        Status::Inconclusive
    }
}

struct TrialOutcome {
    status: Status,
    /// NaN when no admissible instance was found.
    margin: f64,
    witness: Option<serde_json::Value>,
    attempts: u64,
    admissible: u64,
}

/// One trial: a dedicated RNG stream indexed by the trial number, redrawn
/// until the hypothesis holds or the retry budget is gone. Evaluation
/// errors count as missed draws; exotic instances that break a series
/// operation are not evidence about the theorem.
fn run_one(case: &TheoremCase, seed: u64, trial: u64, cfg: &Config) -> TrialOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    for attempt in 0..cfg.retry_budget {
        let params = sample(&case.dims, &mut rng);
        if let Ok(ev) = (case.eval)(&params, cfg) {
            if ev.hypothesis_met {
                return TrialOutcome {
                    status: ladder(ev.margin, cfg.tolerance),
                    margin: ev.margin,
                    witness: Some(ev.witness),
                    attempts: attempt as u64 + 1,
                    admissible: 1,
                };
            }
        }
    }
    TrialOutcome {
        status: Status::Inconclusive,
        margin: f64::NAN,
        witness: None,
        attempts: cfg.retry_budget as u64,
        admissible: 0,
    }
}

struct Tally {
    passes: u64,
    inconclusive: u64,
    failures: u64,
    attempts: u64,
    admissible: u64,
    worst: Option<(f64, usize)>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            passes: 0,
            inconclusive: 0,
            failures: 0,
            attempts: 0,
            admissible: 0,
            worst: None,
        }
    }

    fn absorb(&mut self, index: usize, outcome: &TrialOutcome) {
        match outcome.status {
            Status::Pass => self.passes += 1,
            Status::Fail => self.failures += 1,
            Status::Inconclusive => self.inconclusive += 1,
        }
        self.attempts += outcome.attempts;
        self.admissible += outcome.admissible;
        if outcome.margin.is_finite()
            && self.worst.map_or(true, |(m, _)| outcome.margin < m)
        {
            self.worst = Some((outcome.margin, index));
        }
    }
}

/// Run `trials` independent trials of a case and aggregate.
pub fn run_trials(case: &TheoremCase, trials: u64, seed: u64, cfg: &Config) -> TrialReport {
    let started = Instant::now();
    let outcomes = map_indexed(ExecMode::default_mode(), trials as usize, |t| {
        run_one(case, seed, t as u64, cfg)
    });

    let mut tally = Tally::new();
    for (t, outcome) in outcomes.iter().enumerate() {
        tally.absorb(t, outcome);
    }

    let mut notes = String::from(case.notes);
    let (worst_margin, witness) = match tally.worst {
        Some((margin, index)) => (margin, outcomes[index].witness.clone()),
        None => {
            if !notes.is_empty() {
                notes.push_str("; ");
            }
            notes.push_str("no trial produced an admissible instance");
            (0.0, None)
        }
    };
    if (tally.admissible as f64) < STARVATION_RATE * tally.attempts as f64 {
        if !notes.is_empty() {
            notes.push_str("; ");
        }
        notes.push_str(&format!(
            "generator starved: {} admissible out of {} draws",
            tally.admissible, tally.attempts
        ));
    }

    TrialReport {
        case_id: case.id.to_string(),
        seed,
        trials,
        passes: tally.passes,
        inconclusive: tally.inconclusive,
        failures: tally.failures,
        worst_margin,
        witness,
        wall_time: started.elapsed().as_secs_f64(),
        notes,
    }
}

/// Look a case up by id and run it.
pub fn run_case(id: &str, trials: u64, seed: u64, cfg: &Config) -> Result<TrialReport> {
    let case = find_case(id)?;
    Ok(run_trials(&case, trials, seed, cfg))
}

/// Hunt for a counterexample: random exploration over the case's box,
/// then coordinate-wise refinement around the worst instance found, with
/// a shrinking step. Every evaluation, admissible or not, costs budget;
/// inadmissible and erroring draws count as inconclusive so the report's
/// accounting identity still holds. Exploration stops early once a
/// handful of failures exist, leaving the rest of the budget to
/// refinement.
pub fn falsify(case: &TheoremCase, budget: u64, seed: u64, cfg: &Config) -> TrialReport {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut evals = 0u64;
    let mut passes = 0u64;
    let mut failures = 0u64;
    let mut inconclusive = 0u64;
    let mut worst: Option<(f64, Vec<f64>, serde_json::Value)> = None;

    let judge = |params: &[f64],
                     evals: &mut u64,
                     passes: &mut u64,
                     failures: &mut u64,
                     inconclusive: &mut u64,
                     worst: &mut Option<(f64, Vec<f64>, serde_json::Value)>|
     -> Option<f64> {
        *evals += 1;
        match (case.eval)(params, cfg) {
            Ok(ev) if ev.hypothesis_met => {
                match ladder(ev.margin, cfg.tolerance) {
                    Status::Pass => *passes += 1,
                    Status::Fail => *failures += 1,
                    Status::Inconclusive => *inconclusive += 1,
                }
                if worst.as_ref().map_or(true, |(m, _, _)| ev.margin < *m) {
                    *worst = Some((ev.margin, params.to_vec(), ev.witness));
                }
                Some(ev.margin)
            }
            _ => {
                *inconclusive += 1;
                None
            }
        }
    };

    let explore = budget - budget / 4;
    while evals < explore {
        let params = sample(&case.dims, &mut rng);
        judge(
            &params,
            &mut evals,
            &mut passes,
            &mut failures,
            &mut inconclusive,
            &mut worst,
        );
        if failures >= 5 {
            break;
        }
    }

    if let Some((mut best_margin, mut best_params, _)) = worst.clone() {
        let mut step = 0.25;
        'refine: while evals < budget && step > 1e-4 {
            let mut improved = false;
            for i in 0..case.dims.len() {
                for sign in [-1.0, 1.0] {
                    if evals >= budget {
                        break 'refine;
                    }
                    let mut candidate = best_params.clone();
                    candidate[i] += sign * step * (case.dims[i].hi - case.dims[i].lo);
                    clamp_into(&case.dims, &mut candidate);
                    if let Some(margin) = judge(
                        &candidate,
                        &mut evals,
                        &mut passes,
                        &mut failures,
                        &mut inconclusive,
                        &mut worst,
                    ) {
                        if margin < best_margin {
                            best_margin = margin;
                            best_params = candidate;
                            improved = true;
                        }
                    }
                }
            }
            if !improved {
                step *= 0.4;
            }
        }
    }

    let mut notes = format!("falsification search over `{}`", case.id);
    if !case.notes.is_empty() {
        notes.push_str("; ");
        notes.push_str(case.notes);
    }
    TrialReport {
        case_id: case.id.to_string(),
        seed,
        trials: evals,
        passes,
        inconclusive,
        failures,
        worst_margin: worst.as_ref().map_or(0.0, |(m, _, _)| *m),
        witness: worst.map(|(_, _, w)| w),
        wall_time: started.elapsed().as_secs_f64(),
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::harness::{TheoremCase, TrialEval};

    fn always_rejected() -> TheoremCase {
        fn eval(_: &[f64], _: &Config) -> Result<TrialEval> {
            Ok(TrialEval::rejected("fixture"))
        }
        TheoremCase {
            id: "fixture-starved",
            notes: "",
            dims: vec![crate::harness::gen::d(0.0, 1.0)],
            eval,
        }
    }

    #[test]
    fn unknown_case_is_an_error() {
        match run_case("thm-zzz", 1, 0, &Config::default()) {
            Err(Error::UnknownCase { id }) => assert_eq!(id, "thm-zzz"),
            other => panic!("expected UnknownCase, got {other:?}"),
        }
    }

    #[test]
    fn starvation_is_reported_not_fatal() {
        let cfg = Config::with_order(16);
        let report = run_trials(&always_rejected(), 4, 9, &cfg);
        assert!(report.consistent());
        assert_eq!(report.inconclusive, 4);
        assert_eq!(report.failures, 0);
        assert_eq!(report.worst_margin, 0.0);
        assert!(report.witness.is_none());
        assert!(report.notes.contains("starved"), "notes: {}", report.notes);
    }

    #[test]
    fn the_ladder_brackets_the_tolerance() {
        assert_eq!(ladder(0.5, 1e-4), Status::Pass);
        assert_eq!(ladder(-0.5, 1e-4), Status::Fail);
        assert_eq!(ladder(5e-5, 1e-4), Status::Inconclusive);
        assert_eq!(ladder(-5e-5, 1e-4), Status::Inconclusive);
    }
}
