//! Batched sweeps over the dominant catalogue.
//!
//! Two suites, both deterministic in (trials, seed) and independent of the
//! execution mode: a soundness sweep that feeds constructed subordinate
//! pairs through the checker, and an agreement sweep that re-judges the
//! predicate dominants through the winding fallback and compares verdicts.
//! The acceptance tests and the benchmarks share these entry points.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Config;
use crate::dominants::{boundary_curve, DominantSpec};
use crate::error::Result;
use crate::exec::{map_indexed, ExecMode};
use crate::subordination::{is_subordinate, make_subordinate, schwarz_sample, winding_and_distance};

/// Outcome of one soundness sweep.
#[derive(Debug, Clone)]
pub struct SoundnessOutcome {
    pub trials: usize,
    pub confirmed: usize,
    pub inconclusive: usize,
    pub refuted: usize,
    /// Smallest margin seen over all trials.
    pub min_margin: f64,
    /// Tag of the dominant behind `min_margin`.
    pub tightest: &'static str,
}

/// Outcome of one agreement sweep.
#[derive(Debug, Clone)]
pub struct AgreementOutcome {
    pub trials: usize,
    pub disagreements: usize,
    /// Largest |predicate margin| seen on a disagreeing trial.
    pub worst_disagreement: f64,
}

/// One dominant per trial, cycling through the catalogue so every kind is
/// exercised; parameters are drawn inside each kind's validity region.
pub fn catalogue_dominant(k: usize, rng: &mut ChaCha8Rng) -> DominantSpec {
    match k % 11 {
        0 => DominantSpec::HalfPlane,
        1 => DominantSpec::Sector {
            gamma: rng.gen_range(0.5..1.0),
        },
        2 => DominantSpec::Exp,
        3 => DominantSpec::SqrtShift,
        4 => DominantSpec::Janowski {
            a: rng.gen_range(0.2..0.9),
            b: rng.gen_range(-0.9..0.0),
        },
        5 => DominantSpec::Sigmoid,
        6 => DominantSpec::ExpLinear,
        7 => DominantSpec::Crescent,
        8 => DominantSpec::SlitA {
            a: rng.gen_range(0.0..1.0),
        },
        9 => DominantSpec::OpenDoorA {
            n: 1 + (k / 11) as u32 % 3,
            alpha: rng.gen_range(0.0..1.0),
            beta: rng.gen_range(0.4..1.4),
        },
        _ => DominantSpec::OpenDoorB {
            n: 1 + (k / 11) as u32 % 3,
            alpha: rng.gen_range(0.3..0.9),
            beta: rng.gen_range(0.4..1.4),
        },
    }
}

/// Feed `trials` constructed pairs (h o omega, h) through the checker.
/// Every verdict ought to come back true; anything else is recorded, not
/// panicked on, so callers can assert on the tallies.
pub fn soundness_suite(
    trials: usize,
    seed: u64,
    mode: ExecMode,
    cfg: &Config,
) -> Result<SoundnessOutcome> {
    let rows = map_indexed(mode, trials, |i| -> Result<(i8, f64, &'static str)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let h = catalogue_dominant(i, &mut rng);
        let omega = schwarz_sample(rng.gen(), 1 + i % 3, rng.gen_range(0.3..0.8), cfg.order);
        let p = make_subordinate(&h, &omega)?;
        let v = is_subordinate(&p, &h, cfg);
        let code = if v.holds.is_true() {
            1
        } else if v.holds.is_false() {
            -1
        } else {
            0
        };
        Ok((code, v.margin, h.tag()))
    });

    let mut out = SoundnessOutcome {
        trials,
        confirmed: 0,
        inconclusive: 0,
        refuted: 0,
        min_margin: f64::INFINITY,
        tightest: "",
    };
    for row in rows {
        let (code, margin, tag) = row?;
        match code {
            1 => out.confirmed += 1,
            -1 => out.refuted += 1,
            _ => out.inconclusive += 1,
        }
        if margin < out.min_margin {
            out.min_margin = margin;
            out.tightest = tag;
        }
    }
    Ok(out)
}

/// The predicate dominants re-judged through the winding fallback. A trial
/// disagrees when the two paths return opposite definite verdicts; the
/// tolerance band is counted as agreement with either side.
pub fn agreement_suite(
    trials: usize,
    seed: u64,
    mode: ExecMode,
    cfg: &Config,
) -> Result<AgreementOutcome> {
    let rows = map_indexed(mode, trials, |i| -> Result<(bool, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        rng.set_stream(i as u64);
        let h = loop {
            let candidate = catalogue_dominant(rng.gen_range(0..11), &mut rng);
            if candidate.has_exact_membership() {
                break candidate;
            }
        };
        let omega = schwarz_sample(rng.gen(), 1 + i % 3, rng.gen_range(0.3..0.8), cfg.order);
        let p = make_subordinate(&h, &omega)?;

        let predicate = is_subordinate(&p, &h, cfg);

        let curve = boundary_curve(&h, cfg.curve_radius, cfg.boundary_samples)?;
        let mut wind_margin = f64::INFINITY;
        for &r in &cfg.test_radii {
            let profile = p.boundary_profile(r, cfg.boundary_samples)?;
            for &(_, w) in &profile.points {
                let (wind, dist) = winding_and_distance(&curve, w);
                let signed = if wind == 1 { dist } else { -dist };
                wind_margin = wind_margin.min(signed);
            }
        }

        let pred_def = predicate.margin.abs() > cfg.tolerance;
        let wind_def = wind_margin.abs() > cfg.tolerance;
        let clash =
            pred_def && wind_def && (predicate.margin > 0.0) != (wind_margin > 0.0);
        Ok((clash, predicate.margin))
    });

    let mut out = AgreementOutcome {
        trials,
        disagreements: 0,
        worst_disagreement: 0.0,
    };
    for row in rows {
        let (clash, margin) = row?;
        if clash {
            out.disagreements += 1;
            out.worst_disagreement = out.worst_disagreement.max(margin.abs());
        }
    }
    Ok(out)
}

/// Plug-back residual sweep: solve the initial value problem for random
/// targets and measure how well the recovered solution reproduces them.
/// Returns the largest residual over all trials.
pub fn plugback_suite(trials: usize, seed: u64, mode: ExecMode, cfg: &Config) -> Result<f64> {
    use crate::briot_bouquet::{bb_operator, bb_solve_from_target, BBParams};

    let rows = map_indexed(mode, trials, |i| -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb1ab);
        rng.set_stream(i as u64);
        let h = catalogue_dominant(i, &mut rng);
        let target = make_subordinate(&h, &schwarz_sample(rng.gen(), 2, 0.7, cfg.order))?;
        let q = make_subordinate(
            &DominantSpec::HalfPlane,
            &schwarz_sample(rng.gen(), 1, rng.gen_range(0.1..0.5), cfg.order),
        )?;
        let bb = BBParams::real(rng.gen_range(0.0..1.0), rng.gen_range(0.3..1.5))?;
        let sol = bb_solve_from_target(&target, &q, &bb)?;
        let back = bb_operator(&sol, &q, &bb)?;
        let mut worst = 0.0f64;
        for k in 0..=cfg.order.saturating_sub(2) {
            worst = worst.max((back.coeff(k) - target.coeff(k)).norm());
        }
        Ok(worst)
    });

    let mut worst = 0.0f64;
    for row in rows {
        worst = worst.max(row?);
    }
    Ok(worst)
}
