//! Shared instance-generation helpers.
//!
//! Cases describe themselves as boxes of scalar slots. Five consecutive
//! slots encode a Schwarz function (scale plus two Blaschke zeros), other
//! slots carry dominant parameters, amplitudes, and selectors. Everything
//! downstream is a deterministic function of the slot vector.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::Config;
use crate::error::Result;
use crate::schwarz::{SchwarzSeries, MAX_FACTORS};
use crate::series::TaylorSeries;

/// Closed sampling range for one parameter slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dim {
    pub lo: f64,
    pub hi: f64,
}

pub(crate) fn d(lo: f64, hi: f64) -> Dim {
    Dim { lo, hi }
}

/// One uniform draw per slot.
pub(crate) fn sample(dims: &[Dim], rng: &mut ChaCha8Rng) -> Vec<f64> {
    dims.iter().map(|dim| rng.gen_range(dim.lo..dim.hi)).collect()
}

/// Pull a refined vector back into its box. The top end is kept open the
/// same way sampling does, so refinement cannot reach values a draw never
/// could.
pub(crate) fn clamp_into(dims: &[Dim], params: &mut [f64]) {
    for (x, dim) in params.iter_mut().zip(dims) {
        let hi = dim.hi - 1e-9 * (dim.hi - dim.lo);
        *x = x.clamp(dim.lo, hi);
    }
}

/// Bucket selector for a slot sampled on [0, n).
pub(crate) fn pick(x: f64, n: usize) -> usize {
    (x.floor() as isize).clamp(0, n as isize - 1) as usize
}

/// Append the five slots describing one Schwarz function. Zero components
/// stay below 0.55 so each packed zero has modulus at most 0.78, inside
/// the Blaschke cap.
pub(crate) fn push_schwarz_dims(dims: &mut Vec<Dim>) {
    dims.push(d(0.25, 0.8));
    for _ in 0..4 {
        dims.push(d(-0.55, 0.55));
    }
}

/// Schwarz function from five packed slots: scale, then two zeros as
/// re/im pairs. `origin` extra zeros are pinned at 0 so the function
/// picks up a factor z^origin; the factor cap crowds out packed zeros
/// before it drops origin ones.
pub(crate) fn schwarz_at(slots: &[f64], origin: usize, order: usize) -> Result<SchwarzSeries> {
    let mut zeros: Vec<C64> = vec![C64::new(0.0, 0.0); origin.min(MAX_FACTORS)];
    for pair in slots[1..].chunks_exact(2) {
        if zeros.len() == MAX_FACTORS {
            break;
        }
        zeros.push(C64::new(pair[0], pair[1]));
    }
    SchwarzSeries::from_blaschke(slots[0], &zeros, order)
}

/// 1 + c w, the standard small deviation of a weight from its center.
pub(crate) fn unit_weight(c: f64, omega: &SchwarzSeries) -> TaylorSeries {
    omega
        .series()
        .scaled(C64::new(c, 0.0))
        .plus_constant(C64::new(1.0, 0.0))
}

/// z + u2 z^2 + u3 z^3 with 2|u2| + 3|u3| <= 0.8. Since |sin kt| <= k|sin t|,
/// the coefficient budget keeps Im f aligned with Im z on every circle, so
/// the polynomial is typically real; its sup over the closed disk is at
/// most 1.35.
pub(crate) fn tr_polynomial(m2: f64, m3: f64, order: usize) -> TaylorSeries {
    let mut coeffs = vec![C64::new(0.0, 0.0); order + 1];
    if order >= 1 {
        coeffs[1] = C64::new(1.0, 0.0);
    }
    if order >= 2 {
        coeffs[2] = C64::new(0.25 * m2, 0.0);
    }
    if order >= 3 {
        coeffs[3] = C64::new(0.1 * m3, 0.0);
    }
    TaylorSeries::from_coeffs(coeffs)
}

/// f/z recovered from f' = q by dividing each coefficient by k+1.
pub(crate) fn primitive_over_z(q: &TaylorSeries) -> TaylorSeries {
    let coeffs: Vec<C64> = q
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c / (k as f64 + 1.0))
        .collect();
    TaylorSeries::from_coeffs(coeffs)
}

/// Drop the top slots of a derived series before scanning it. Division
/// and inversion recursions park their one unreliable coefficient at the
/// top; chopping a few orders removes every layer a composite expression
/// can have accumulated.
pub(crate) fn chop(q: TaylorSeries, cfg: &Config) -> TaylorSeries {
    q.resized(cfg.order.saturating_sub(4).max(4))
}

fn grid_fold(f: &TaylorSeries, cfg: &Config, mut visit: impl FnMut(C64)) {
    let tau = std::f64::consts::TAU;
    for &r in &cfg.geometry_radii {
        for k in 0..cfg.geometry_angles {
            let z = C64::from_polar(r, tau * k as f64 / cfg.geometry_angles as f64);
            visit(f.evaluate_unchecked(z));
        }
    }
}

/// Largest |f| over the geometry grid.
pub(crate) fn grid_max_modulus(f: &TaylorSeries, cfg: &Config) -> f64 {
    let mut worst = f64::NEG_INFINITY;
    grid_fold(f, cfg, |w| worst = worst.max(w.norm()));
    worst
}

/// Smallest |f| over the geometry grid.
pub(crate) fn grid_min_modulus(f: &TaylorSeries, cfg: &Config) -> f64 {
    let mut least = f64::INFINITY;
    grid_fold(f, cfg, |w| least = least.min(w.norm()));
    least
}
