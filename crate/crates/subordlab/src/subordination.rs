//! Numerical subordination test p ≺ h.
//!
//! For univalent h, p ≺ h iff p(0) = h(0) and p(D) ⊂ h(D), so the test is
//! image containment at a ladder of radii strictly inside the disk. Exact
//! image predicates are used where the catalogue has them; everything else
//! goes through winding numbers against the sampled curve h(r_h e^{i t}),
//! r_h = 0.999. The curve proxy is conservative: it can demote a true
//! subordination to inconclusive near the boundary, never promote a false
//! one beyond the tolerance band.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::config::Config;
use crate::dominants::{boundary_curve, BoundaryCurve, DominantSpec};
use crate::error::{Error, Result};
use crate::schwarz::{SchwarzSeries, MAX_FACTORS, MAX_SCALE};
use crate::series::TaylorSeries;

/// Three-valued outcome: the middle value covers margins inside the
/// tolerance band, where the grid cannot distinguish true from false.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tristate {
    True,
    False,
    Inconclusive,
}

impl Tristate {
    #[inline]
    pub fn is_true(self) -> bool {
        self == Tristate::True
    }

    #[inline]
    pub fn is_false(self) -> bool {
        self == Tristate::False
    }
}

/// Echo of the knobs a verdict was computed with.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConfigUsed {
    /// Test radius attaining the worst margin (0 when the normalization
    /// check already settled the verdict).
    pub r_p: f64,
    /// Radius of the proxy boundary curve.
    pub r_h: f64,
    /// Samples per test circle.
    pub samples: usize,
    /// Truncation order of p.
    pub order: usize,
}

/// Outcome of `is_subordinate`.
#[derive(Debug, Clone)]
pub struct SubordinationVerdict {
    pub holds: Tristate,
    /// Worst signed slack: predicate slack on exact paths, signed distance
    /// to the proxy curve on winding paths. Positive means inside.
    pub margin: f64,
    /// z attaining the worst margin.
    pub witness: Option<C64>,
    pub config_used: ConfigUsed,
}

impl Serialize for SubordinationVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SubordinationVerdict", 4)?;
        st.serialize_field("holds", &self.holds)?;
        st.serialize_field("margin", &self.margin)?;
        st.serialize_field(
            "witness",
            &self.witness.map(|z| [z.re, z.im]),
        )?;
        st.serialize_field("config_used", &self.config_used)?;
        st.end()
    }
}

/// Series of h(w(z)). Subordinate to h by construction.
pub fn make_subordinate(h: &DominantSpec, omega: &SchwarzSeries) -> Result<TaylorSeries> {
    h.series_of(omega.series().order())?.compose(omega.series())
}

/// Winding number of the closed curve about w: the total argument
/// increment along the polygon divided by 2 pi, an exact integer for any
/// point off the curve. Computed by signed ray crossings, which agrees
/// with the argument total and avoids per-edge trigonometry.
pub fn winding_number(curve: &BoundaryCurve, w: C64) -> Result<i32> {
    let (wind, dist) = winding_and_distance(curve, w);
    if dist <= 1e-8 {
        return Err(Error::PointOnCurve { distance: dist });
    }
    Ok(wind)
}

/// Single pass over the polygon: ray-crossing winding number and distance
/// to the nearest edge.
pub(crate) fn winding_and_distance(curve: &BoundaryCurve, w: C64) -> (i32, f64) {
    let pts = curve.points();
    let n = pts.len();
    let mut wind = 0i32;
    let mut dist2 = f64::INFINITY;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let ab = b - a;
        let aw = w - a;

        let len2 = ab.norm_sqr();
        let t = if len2 < 1e-300 {
            0.0
        } else {
            ((aw.re * ab.re + aw.im * ab.im) / len2).clamp(0.0, 1.0)
        };
        let d = aw - ab * t;
        dist2 = dist2.min(d.norm_sqr());

        let cross = ab.re * aw.im - ab.im * aw.re;
        if a.im <= w.im {
            if b.im > w.im && cross > 0.0 {
                wind += 1;
            }
        } else if b.im <= w.im && cross < 0.0 {
            wind -= 1;
        }
    }
    (wind, dist2.sqrt())
}

/// Decide p ≺ h on the configured radius ladder. Never errors; margins
/// inside the tolerance band come back `Inconclusive`.
pub fn is_subordinate(p: &TaylorSeries, h: &DominantSpec, cfg: &Config) -> SubordinationVerdict {
    let r_h = if cfg.curve_radius > 0.0 && cfg.curve_radius < 1.0 {
        cfg.curve_radius
    } else {
        0.999
    };
    let samples = cfg.boundary_samples.max(8);
    let tol = cfg.tolerance.max(0.0);

    let dev = (p.constant_term() - h.value_at_zero()).norm();
    if dev > 1e-8 {
        return SubordinationVerdict {
            holds: Tristate::False,
            margin: -dev,
            witness: Some(C64::new(0.0, 0.0)),
            config_used: ConfigUsed {
                r_p: 0.0,
                r_h,
                samples: 0,
                order: p.order(),
            },
        };
    }

    let exact = h.has_exact_membership();
    let curve = if exact {
        None
    } else {
        boundary_curve(h, r_h, samples.max(256)).ok()
    };
    if !exact && curve.is_none() {
        return SubordinationVerdict {
            holds: Tristate::Inconclusive,
            margin: 0.0,
            witness: None,
            config_used: ConfigUsed {
                r_p: 0.0,
                r_h,
                samples,
                order: p.order(),
            },
        };
    }

    let mut margin = f64::INFINITY;
    let mut witness = None;
    let mut worst_radius = 0.0;
    for &r in cfg.test_radii.iter().filter(|&&r| r > 0.0 && r < 1.0) {
        let profile = match p.boundary_profile(r, samples) {
            Ok(pr) => pr,
            Err(_) => continue,
        };
        for &(z, v) in &profile.points {
            let slack = match &curve {
                None => self_predicate_slack(h, v),
                Some(c) => {
                    let (wind, d) = winding_and_distance(c, v);
                    if wind == 1 {
                        d
                    } else {
                        -d
                    }
                }
            };
            if slack < margin {
                margin = slack;
                witness = Some(z);
                worst_radius = r;
            }
        }
    }

    if witness.is_none() {
        return SubordinationVerdict {
            holds: Tristate::Inconclusive,
            margin: 0.0,
            witness: None,
            config_used: ConfigUsed {
                r_p: 0.0,
                r_h,
                samples,
                order: p.order(),
            },
        };
    }

    let holds = if margin > tol {
        Tristate::True
    } else if margin < -tol {
        Tristate::False
    } else {
        Tristate::Inconclusive
    };
    SubordinationVerdict {
        holds,
        margin,
        witness,
        config_used: ConfigUsed {
            r_p: worst_radius,
            r_h,
            samples,
            order: p.order(),
        },
    }
}

// The branch only runs for predicate-backed variants.
fn self_predicate_slack(h: &DominantSpec, w: C64) -> f64 {
    h.predicate_slack(w).unwrap_or(f64::NEG_INFINITY)
}

/// Deterministic Schwarz sample: scale fixed at s_max (capped at 0.95),
/// up to m Blaschke zeros drawn inside |a| <= 0.6 so truncation tails stay
/// far below the certified margin.
pub fn schwarz_sample(seed: u64, m: usize, s_max: f64, order: usize) -> SchwarzSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = s_max.clamp(0.0, MAX_SCALE);
    let m = m.min(MAX_FACTORS);
    let zeros: Vec<C64> = (0..m)
        .map(|_| {
            let radius: f64 = rng.gen_range(0.0..=0.6);
            let angle: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            C64::from_polar(radius, angle)
        })
        .collect();
    SchwarzSeries::from_blaschke(s, &zeros, order)
        .expect("sampled parameters are inside the constructor's domain")
}
