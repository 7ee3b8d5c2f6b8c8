//! Catalogue of dominant regions h(D).
//!
//! Each variant is a univalent (or at least analytic) map h on the unit
//! disk with h(0) = 1, evaluated in closed form so boundary curves can be
//! sampled at radii where truncated series would be useless. Variants
//! whose image has a closed description also expose an exact membership
//! predicate with a signed slack; the rest fall back to winding numbers
//! against a sampled boundary curve.

pub mod boundary;
pub mod geometry;

pub use boundary::{boundary_curve, BoundaryCurve};
pub use geometry::{geometry_check, GeometryKind, GeometryVerdict};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::series::TaylorSeries;

const ONE: C64 = C64::new(1.0, 0.0);

/// A dominant region, encoded by the conformal map that produces it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum DominantSpec {
    /// (1+z)/(1-z): right half plane Re w > 0.
    HalfPlane,
    /// ((1+z)/(1-z))^gamma: sector |arg w| < gamma pi/2, gamma in (0, 1].
    Sector { gamma: f64 },
    /// e^z: |log w| < 1.
    Exp,
    /// sqrt(1+z): right lemniscate half, Re w > 0 and |w^2 - 1| < 1.
    SqrtShift,
    /// (1+Az)/(1+Bz) with |A| <= 1, |B| <= 1, A != B.
    Janowski { a: f64, b: f64 },
    /// 2/(1+e^(-z)): modified sigmoid.
    Sigmoid,
    /// 1 + z e^z.
    ExpLinear,
    /// z + sqrt(1+z^2): lune between the circles through +-i.
    Crescent,
    /// (1+az)/(1-z), a in [0,1]: half plane Re w > (1-a)/2.
    SlitA { a: f64 },
    /// 1 + z + nz/(beta + alpha(1+z)).
    #[serde(rename = "opendoor-a")]
    OpenDoorA { n: u32, alpha: f64, beta: f64 },
    /// (1+z)/(1-z) + 2nz/((1-z)((alpha+beta) + (alpha-beta)z)).
    #[serde(rename = "opendoor-b")]
    OpenDoorB { n: u32, alpha: f64, beta: f64 },
    /// Arbitrary truncated series (winding fallback only).
    Custom { series: TaylorSeries },
}

impl DominantSpec {
    /// Short tag, matching the serialized form.
    pub fn tag(&self) -> &'static str {
        match self {
            DominantSpec::HalfPlane => "half-plane",
            DominantSpec::Sector { .. } => "sector",
            DominantSpec::Exp => "exp",
            DominantSpec::SqrtShift => "sqrt-shift",
            DominantSpec::Janowski { .. } => "janowski",
            DominantSpec::Sigmoid => "sigmoid",
            DominantSpec::ExpLinear => "exp-linear",
            DominantSpec::Crescent => "crescent",
            DominantSpec::SlitA { .. } => "slit-a",
            DominantSpec::OpenDoorA { .. } => "opendoor-a",
            DominantSpec::OpenDoorB { .. } => "opendoor-b",
            DominantSpec::Custom { .. } => "custom",
        }
    }

    /// Parameter-domain check. Construction does not force this; CLI and
    /// harness paths call it before use.
    pub fn validate(&self) -> Result<()> {
        let fail = |detail: String| {
            Err(Error::InvalidParameter {
                op: "dominant",
                detail,
            })
        };
        match self {
            DominantSpec::Sector { gamma } => {
                if !(*gamma > 0.0 && *gamma <= 1.0) {
                    return fail(format!("sector gamma {gamma} outside (0, 1]"));
                }
            }
            DominantSpec::Janowski { a, b } => {
                if a.abs() > 1.0 || b.abs() > 1.0 || (a - b).abs() < 1e-12 {
                    return fail(format!("janowski (A, B) = ({a}, {b}) needs |A|,|B| <= 1, A != B"));
                }
            }
            DominantSpec::SlitA { a } => {
                if !(0.0..=1.0).contains(a) {
                    return fail(format!("slit-a parameter {a} outside [0, 1]"));
                }
            }
            DominantSpec::OpenDoorA { n, alpha, beta }
            | DominantSpec::OpenDoorB { n, alpha, beta } => {
                if *n < 1 {
                    return fail("open-door n must be >= 1".into());
                }
                if !(*alpha >= 0.0 && *beta > 0.0) {
                    return fail(format!("open-door needs alpha >= 0 < beta, got ({alpha}, {beta})"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// h(0); 1 for every catalogue entry, the constant term for Custom.
    pub fn value_at_zero(&self) -> C64 {
        match self {
            DominantSpec::Custom { series } => series.constant_term(),
            _ => ONE,
        }
    }

    /// Closed-form evaluation strictly inside the unit disk.
    pub fn evaluate(&self, z: C64) -> Result<C64> {
        if z.norm() >= 1.0 {
            return Err(Error::InvalidParameter {
                op: "evaluate_dominant",
                detail: format!("|z| = {} not strictly inside the unit disk", z.norm()),
            });
        }
        Ok(self.evaluate_unchecked(z))
    }

    pub(crate) fn evaluate_unchecked(&self, z: C64) -> C64 {
        match self {
            DominantSpec::HalfPlane => (ONE + z) / (ONE - z),
            DominantSpec::Sector { gamma } => (((ONE + z) / (ONE - z)).ln() * *gamma).exp(),
            DominantSpec::Exp => z.exp(),
            DominantSpec::SqrtShift => (ONE + z).sqrt(),
            DominantSpec::Janowski { a, b } => (ONE + z * *a) / (ONE + z * *b),
            DominantSpec::Sigmoid => C64::new(2.0, 0.0) / (ONE + (-z).exp()),
            DominantSpec::ExpLinear => ONE + z * z.exp(),
            DominantSpec::Crescent => z + (ONE + z * z).sqrt(),
            DominantSpec::SlitA { a } => (ONE + z * *a) / (ONE - z),
            DominantSpec::OpenDoorA { n, alpha, beta } => {
                ONE + z + z * (*n as f64) / (C64::new(beta + alpha, 0.0) + z * *alpha)
            }
            DominantSpec::OpenDoorB { n, alpha, beta } => {
                let a = C64::new(alpha + beta, 0.0);
                let b = C64::new(alpha - beta, 0.0);
                (ONE + z) / (ONE - z)
                    + z * (2.0 * *n as f64) / ((ONE - z) * (a + b * z))
            }
            DominantSpec::Custom { series } => series.evaluate_unchecked(z),
        }
    }

    /// Closed-form h'(z).
    pub fn derivative(&self, z: C64) -> Result<C64> {
        if z.norm() >= 1.0 {
            return Err(Error::InvalidParameter {
                op: "dominant_derivative",
                detail: format!("|z| = {} not strictly inside the unit disk", z.norm()),
            });
        }
        Ok(match self {
            DominantSpec::HalfPlane => C64::new(2.0, 0.0) / ((ONE - z) * (ONE - z)),
            DominantSpec::Sector { gamma } => {
                let h = self.evaluate_unchecked(z);
                h * (2.0 * *gamma) / (ONE - z * z)
            }
            DominantSpec::Exp => z.exp(),
            DominantSpec::SqrtShift => C64::new(0.5, 0.0) / (ONE + z).sqrt(),
            DominantSpec::Janowski { a, b } => {
                let den = ONE + z * *b;
                C64::new(a - b, 0.0) / (den * den)
            }
            DominantSpec::Sigmoid => {
                let e = (-z).exp();
                let den = ONE + e;
                e * 2.0 / (den * den)
            }
            DominantSpec::ExpLinear => (ONE + z) * z.exp(),
            DominantSpec::Crescent => ONE + z / (ONE + z * z).sqrt(),
            DominantSpec::SlitA { a } => {
                let den = ONE - z;
                C64::new(1.0 + a, 0.0) / (den * den)
            }
            DominantSpec::OpenDoorA { n, alpha, beta } => {
                let den = C64::new(beta + alpha, 0.0) + z * *alpha;
                ONE + C64::new(*n as f64 * (beta + alpha), 0.0) / (den * den)
            }
            DominantSpec::OpenDoorB { n, alpha, beta } => {
                let a = C64::new(alpha + beta, 0.0);
                let b = C64::new(alpha - beta, 0.0);
                let omz = ONE - z;
                let d = a + b * z;
                C64::new(2.0, 0.0) / (omz * omz)
                    + (a + b * z * z) * (2.0 * *n as f64) / (omz * omz * d * d)
            }
            DominantSpec::Custom { series } => series.derivative().evaluate_unchecked(z),
        })
    }

    /// Closed-form h''(z).
    pub fn second_derivative(&self, z: C64) -> Result<C64> {
        if z.norm() >= 1.0 {
            return Err(Error::InvalidParameter {
                op: "dominant_second_derivative",
                detail: format!("|z| = {} not strictly inside the unit disk", z.norm()),
            });
        }
        Ok(match self {
            DominantSpec::HalfPlane => {
                let den = ONE - z;
                C64::new(4.0, 0.0) / (den * den * den)
            }
            DominantSpec::Sector { gamma } => {
                let hp = self.derivative(z)?;
                hp * 2.0 * (C64::new(*gamma, 0.0) + z) / (ONE - z * z)
            }
            DominantSpec::Exp => z.exp(),
            DominantSpec::SqrtShift => {
                let s = (ONE + z).sqrt();
                C64::new(-0.25, 0.0) / (s * s * s)
            }
            DominantSpec::Janowski { a, b } => {
                let den = ONE + z * *b;
                C64::new(-2.0 * b * (a - b), 0.0) / (den * den * den)
            }
            DominantSpec::Sigmoid => {
                // h''/h' = -tanh(z/2).
                let hp = self.derivative(z)?;
                hp * -(z / 2.0).tanh()
            }
            DominantSpec::ExpLinear => (C64::new(2.0, 0.0) + z) * z.exp(),
            DominantSpec::Crescent => {
                let s = (ONE + z * z).sqrt();
                ONE / (s * s * s)
            }
            DominantSpec::SlitA { a } => {
                let den = ONE - z;
                C64::new(2.0 * (1.0 + a), 0.0) / (den * den * den)
            }
            DominantSpec::OpenDoorA { n, alpha, beta } => {
                let den = C64::new(beta + alpha, 0.0) + z * *alpha;
                C64::new(-2.0 * *n as f64 * alpha * (beta + alpha), 0.0) / (den * den * den)
            }
            DominantSpec::OpenDoorB { n, alpha, beta } => {
                let a = C64::new(alpha + beta, 0.0);
                let b = C64::new(alpha - beta, 0.0);
                let omz = ONE - z;
                let d = (ONE - z) * (a + b * z);
                let dp = (b - a) - b * z * 2.0;
                let num = (b * z * 2.0) * d - (a + b * z * z) * dp * 2.0;
                C64::new(4.0, 0.0) / (omz * omz * omz) + num * (2.0 * *n as f64) / (d * d * d)
            }
            DominantSpec::Custom { series } => {
                series.derivative().derivative().evaluate_unchecked(z)
            }
        })
    }

    /// Taylor expansion of h to the given order, built from the series kernel.
    pub fn series_of(&self, order: usize) -> Result<TaylorSeries> {
        let z = TaylorSeries::monomial(1.min(order), order);
        Ok(match self {
            DominantSpec::HalfPlane => {
                let mut c = vec![C64::new(2.0, 0.0); order + 1];
                c[0] = ONE;
                TaylorSeries::from_coeffs(c)
            }
            DominantSpec::Sector { gamma } => DominantSpec::HalfPlane
                .series_of(order)?
                .power_real(*gamma)?,
            DominantSpec::Exp => z.exponential(),
            DominantSpec::SqrtShift => z.plus_constant(ONE).power_real(0.5)?,
            DominantSpec::Janowski { a, b } => {
                let num = z.scaled(C64::new(*a, 0.0)).plus_constant(ONE);
                let den = z.scaled(C64::new(*b, 0.0)).plus_constant(ONE);
                num.divide(&den)?
            }
            DominantSpec::Sigmoid => {
                let den = z.scaled(C64::new(-1.0, 0.0)).exponential().plus_constant(ONE);
                TaylorSeries::constant(C64::new(2.0, 0.0), order).divide(&den)?
            }
            DominantSpec::ExpLinear => z.exponential().multiply(&z).plus_constant(ONE),
            DominantSpec::Crescent => {
                let sq = z.multiply(&z).plus_constant(ONE).power_real(0.5)?;
                z.add(&sq)
            }
            DominantSpec::SlitA { a } => {
                let num = z.scaled(C64::new(*a, 0.0)).plus_constant(ONE);
                let den = z.scaled(C64::new(-1.0, 0.0)).plus_constant(ONE);
                num.divide(&den)?
            }
            DominantSpec::OpenDoorA { n, alpha, beta } => {
                let den = z
                    .scaled(C64::new(*alpha, 0.0))
                    .plus_constant(C64::new(beta + alpha, 0.0));
                let frac = z.scaled(C64::new(*n as f64, 0.0)).divide(&den)?;
                z.plus_constant(ONE).add(&frac)
            }
            DominantSpec::OpenDoorB { n, alpha, beta } => {
                let head = DominantSpec::HalfPlane.series_of(order)?;
                let omz = z.scaled(C64::new(-1.0, 0.0)).plus_constant(ONE);
                let lin = z
                    .scaled(C64::new(alpha - beta, 0.0))
                    .plus_constant(C64::new(alpha + beta, 0.0));
                let frac = z
                    .scaled(C64::new(2.0 * *n as f64, 0.0))
                    .divide(&omz.multiply(&lin))?;
                head.add(&frac)
            }
            DominantSpec::Custom { series } => series.resized(order),
        })
    }

    /// True when membership can be decided by a closed predicate.
    pub fn has_exact_membership(&self) -> bool {
        matches!(
            self,
            DominantSpec::HalfPlane
                | DominantSpec::Sector { .. }
                | DominantSpec::Exp
                | DominantSpec::SqrtShift
                | DominantSpec::Janowski { .. }
                | DominantSpec::SlitA { .. }
        )
    }

    /// Signed predicate slack: positive inside h(D), negative outside.
    /// Errors with `NoExactPredicate` for fallback-only variants.
    pub fn predicate_slack(&self, w: C64) -> Result<f64> {
        let clamp = |x: f64| x.clamp(-1e12, 1e12);
        match self {
            DominantSpec::HalfPlane => Ok(clamp(w.re)),
            DominantSpec::Sector { gamma } => {
                if w.norm() < 1e-300 {
                    return Ok(-1.0);
                }
                Ok(clamp(gamma * std::f64::consts::FRAC_PI_2 - w.arg().abs()))
            }
            DominantSpec::Exp => Ok(clamp(1.0 - w.ln().norm())),
            DominantSpec::SqrtShift => {
                let lem = 1.0 - (w * w - ONE).norm();
                Ok(clamp(w.re.min(lem)))
            }
            DominantSpec::Janowski { a, b } => {
                let den = C64::new(*a, 0.0) - w * *b;
                if den.norm() < 1e-300 {
                    return Ok(-1e12);
                }
                Ok(clamp(1.0 - ((w - ONE) / den).norm()))
            }
            DominantSpec::SlitA { a } => Ok(clamp(w.re - (1.0 - a) / 2.0)),
            other => Err(Error::NoExactPredicate {
                tag: other.tag().to_string(),
            }),
        }
    }

    /// Exact membership for predicate-backed variants.
    pub fn contains(&self, w: C64) -> Result<bool> {
        Ok(self.predicate_slack(w)? > 0.0)
    }

    /// min over the geometry grid of Re(1 + z h''/h'), from the closed
    /// forms (no truncation). Positive iff h is convex on the grid.
    pub fn convexity_margin(&self, cfg: &Config) -> Result<f64> {
        let tau = std::f64::consts::TAU;
        let mut margin = f64::INFINITY;
        for &r in cfg.geometry_radii.iter().filter(|&&r| r > 0.0 && r < 1.0) {
            for k in 0..cfg.geometry_angles {
                let z = C64::from_polar(r, tau * k as f64 / cfg.geometry_angles as f64);
                let hp = self.derivative(z)?;
                if hp.norm() < 1e-300 {
                    return Err(Error::InvalidParameter {
                        op: "convexity_margin",
                        detail: format!("h' vanishes at {z}"),
                    });
                }
                let w = ONE + z * self.second_derivative(z)? / hp;
                margin = margin.min(w.re);
            }
        }
        Ok(margin)
    }
}
