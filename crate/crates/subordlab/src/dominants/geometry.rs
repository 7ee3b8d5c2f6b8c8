//! Grid-based geometric function classes.
//!
//! Each check scans a polar grid (radii and angle count from `Config`) and
//! reports the worst signed margin together with the witness point that
//! attains it. Margins are positive exactly when the property holds on the
//! grid. Callers are responsible for pairing the series order with the
//! radii: scanning a truncated series at radii where its tail estimate is
//! large produces garbage margins, not errors.

use num_complex::Complex64 as C64;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::series::TaylorSeries;
use crate::valued::ValuedSeries;

/// Property to test.
#[derive(Debug, Clone)]
pub enum GeometryKind {
    /// Re p > 0 on the grid. Class normalization p(0) = 1 is the caller's
    /// concern; the scan is pure positivity.
    Caratheodory,
    /// f = z + ..., Re(z f'/f) > 0.
    Starlike,
    /// f'(0) != 0 and Re(1 + z f''/f') > 0.
    Convex,
    /// Real coefficients and sign(Im z) * Im f(z) >= 0.
    TypicallyReal,
    /// Re(z f'/g) > 0 against the supplied starlike reference g.
    CloseToConvexWrt(TaylorSeries),
}

impl GeometryKind {
    pub fn label(&self) -> &'static str {
        match self {
            GeometryKind::Caratheodory => "caratheodory",
            GeometryKind::Starlike => "starlike",
            GeometryKind::Convex => "convex",
            GeometryKind::TypicallyReal => "typically-real",
            GeometryKind::CloseToConvexWrt(_) => "close-to-convex",
        }
    }
}

/// Outcome of a grid scan.
#[derive(Debug, Clone)]
pub struct GeometryVerdict {
    pub holds: bool,
    /// Worst signed slack over the grid; positive iff the property held
    /// everywhere it was sampled.
    pub margin: f64,
    /// (z, tested value) at the worst sample, when one exists.
    pub witness: Option<(C64, C64)>,
}

/// Minimum of Re over the polar grid.
fn scan_min_re(series: &TaylorSeries, cfg: &Config) -> (f64, Option<(C64, C64)>) {
    let tau = std::f64::consts::TAU;
    let mut margin = f64::INFINITY;
    let mut witness = None;
    for &r in &cfg.geometry_radii {
        for k in 0..cfg.geometry_angles {
            let z = C64::from_polar(r, tau * k as f64 / cfg.geometry_angles as f64);
            let v = series.evaluate_unchecked(z);
            if v.re < margin {
                margin = v.re;
                witness = Some((z, v));
            }
        }
    }
    (margin, witness)
}

fn verdict_from_min_re(series: &TaylorSeries, cfg: &Config) -> GeometryVerdict {
    let (margin, witness) = scan_min_re(series, cfg);
    GeometryVerdict {
        holds: margin > 0.0,
        margin,
        witness,
    }
}

/// Quotients of truncated series are reliable only below the truncation
/// order: the dividend's top coefficient sits where the discarded tail
/// lived, and the division recursion turns that into one spurious (and for
/// growing coefficient sequences, enormous) top term. Scans of derived
/// quotients drop it.
fn drop_top(q: TaylorSeries) -> TaylorSeries {
    let n = q.order().saturating_sub(1);
    q.resized(n)
}

/// Run the scan for `kind` against f.
pub fn geometry_check(f: &TaylorSeries, kind: &GeometryKind, cfg: &Config) -> Result<GeometryVerdict> {
    match kind {
        GeometryKind::Caratheodory => Ok(verdict_from_min_re(f, cfg)),
        GeometryKind::Starlike => {
            let v = ValuedSeries::from_taylor(f)?;
            if (v.exponent() - 1.0).abs() > 0.5 {
                return Err(Error::ValuationMismatch {
                    op: "starlike_check",
                    expected: "valuation 1".into(),
                    found: format!("{}", v.exponent()),
                });
            }
            let q = drop_top(v.z_log_derivative()?);
            Ok(verdict_from_min_re(&q, cfg))
        }
        GeometryKind::Convex => {
            // 1 + z f''/f'; translation invariant, so f(0) is unconstrained.
            let fp = f.derivative();
            let w = drop_top(
                fp.derivative()
                    .multiply(&TaylorSeries::monomial(1, f.order()))
                    .divide(&fp)?,
            )
            .plus_constant(C64::new(1.0, 0.0));
            Ok(verdict_from_min_re(&w, cfg))
        }
        GeometryKind::TypicallyReal => {
            let imag_cap = 1e-10 * f.max_coeff_norm().max(1e-300);
            let worst_imag = f
                .coeffs()
                .iter()
                .map(|c| c.im.abs())
                .fold(0.0f64, f64::max);
            if worst_imag > imag_cap {
                return Ok(GeometryVerdict {
                    holds: false,
                    margin: -worst_imag,
                    witness: None,
                });
            }
            // sign(Im z) Im f, divided by |sin theta| so the margin does not
            // collapse near the real axis for every real-coefficient series.
            let tau = std::f64::consts::TAU;
            let mut margin = f64::INFINITY;
            let mut witness = None;
            for &r in &cfg.geometry_radii {
                for k in 0..cfg.geometry_angles {
                    let t = tau * k as f64 / cfg.geometry_angles as f64;
                    let s = t.sin();
                    if s.abs() <= 1e-9 {
                        continue;
                    }
                    let z = C64::from_polar(r, t);
                    let v = f.evaluate_unchecked(z);
                    let slack = s.signum() * v.im / s.abs();
                    if slack < margin {
                        margin = slack;
                        witness = Some((z, v));
                    }
                }
            }
            Ok(GeometryVerdict {
                holds: margin > 0.0,
                margin,
                witness,
            })
        }
        GeometryKind::CloseToConvexWrt(g) => {
            let reference = geometry_check(g, &GeometryKind::Starlike, cfg)?;
            if !reference.holds {
                return Ok(reference);
            }
            let zfp = f
                .derivative()
                .multiply(&TaylorSeries::monomial(1, f.order()));
            let vf = ValuedSeries::from_taylor(&zfp)?;
            if (vf.exponent() - 1.0).abs() > 0.5 {
                return Err(Error::ValuationMismatch {
                    op: "close_to_convex_check",
                    expected: "f'(0) != 0".into(),
                    found: format!("valuation {} for z f'", vf.exponent()),
                });
            }
            let ratio = drop_top(vf.divide(&ValuedSeries::from_taylor(g)?)?.to_taylor()?);
            Ok(verdict_from_min_re(&ratio, cfg))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn koebe(order: usize) -> TaylorSeries {
        let coeffs: Vec<f64> = (0..=order).map(|k| k as f64).collect();
        TaylorSeries::from_real(&coeffs)
    }

    fn cfg_with(radii: &[f64], order_hint: usize) -> Config {
        let mut cfg = Config::with_order(order_hint);
        cfg.geometry_radii = radii.to_vec();
        cfg
    }

    #[test]
    fn koebe_is_starlike_not_convex() {
        let cfg = cfg_with(&[0.3, 0.6, 0.9], 96);
        let f = koebe(96);
        let star = geometry_check(&f, &GeometryKind::Starlike, &cfg).unwrap();
        assert!(star.holds, "margin {}", star.margin);
        // min Re (1+z)/(1-z) on |z| = 0.9 is (1-0.9)/(1+0.9).
        assert!((star.margin - 0.1 / 1.9).abs() < 1e-3);
        let conv = geometry_check(&f, &GeometryKind::Convex, &cfg).unwrap();
        assert!(!conv.holds);
        assert!(conv.margin < -1.0);
    }

    #[test]
    fn quadratic_perturbation_is_not_starlike() {
        // f = z + 2z^2 has z f'/f = (1+4z)/(1+2z), negative near z = -0.4.
        let cfg = cfg_with(&[0.2, 0.4, 0.45], 96);
        let f = TaylorSeries::from_real(&[0.0, 1.0, 2.0]).resized(96);
        let v = geometry_check(&f, &GeometryKind::Starlike, &cfg).unwrap();
        assert!(!v.holds);
        assert!(v.margin < -2.0, "margin {}", v.margin);
        let (z, _) = v.witness.unwrap();
        assert!(z.re < 0.0);
    }

    #[test]
    fn half_plane_like_map_is_convex() {
        // z/(1-z) has 1 + z f''/f' = (1+z)/(1-z).
        let coeffs: Vec<f64> = (0..=96).map(|k| if k == 0 { 0.0 } else { 1.0 }).collect();
        let cfg = cfg_with(&[0.5, 0.9], 96);
        let v = geometry_check(
            &TaylorSeries::from_real(&coeffs),
            &GeometryKind::Convex,
            &cfg,
        )
        .unwrap();
        assert!(v.holds);
        assert!((v.margin - 0.1 / 1.9).abs() < 1e-3);
    }

    #[test]
    fn caratheodory_is_a_positivity_scan() {
        let cfg = Config::default();
        let good = TaylorSeries::from_real(&[1.0, 0.5]).resized(32);
        let v = geometry_check(&good, &GeometryKind::Caratheodory, &cfg).unwrap();
        assert!(v.holds);
        // min Re(1 + 0.5z) on the largest grid radius.
        assert!((v.margin - (1.0 - 0.5 * 0.95)).abs() < 1e-12);
        let negative = TaylorSeries::from_real(&[1.0, 3.0]).resized(32);
        let n = geometry_check(&negative, &GeometryKind::Caratheodory, &cfg).unwrap();
        assert!(!n.holds);
        assert!((n.margin - (1.0 - 3.0 * 0.95)).abs() < 1e-12);
    }

    #[test]
    fn typical_realness_oracles() {
        // The scan reads Im f off the truncated polynomial directly, so the
        // order has to dominate the outer radius.
        let cfg = cfg_with(&[0.3, 0.6, 0.8], 128);
        let k = koebe(128);
        let v = geometry_check(&k, &GeometryKind::TypicallyReal, &cfg).unwrap();
        assert!(v.holds, "margin {}", v.margin);
        let bad = TaylorSeries::from_real(&[0.0, 1.0, 5.0]).resized(64);
        let b = geometry_check(&bad, &GeometryKind::TypicallyReal, &cfg).unwrap();
        assert!(!b.holds);
        assert!(b.margin < -1.0);
        let complex_coeffs = TaylorSeries::from_coeffs(vec![
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.3),
        ]);
        let c = geometry_check(&complex_coeffs, &GeometryKind::TypicallyReal, &cfg).unwrap();
        assert!(!c.holds);
        assert!(c.witness.is_none());
    }

    #[test]
    fn close_to_convex_against_references() {
        let cfg = cfg_with(&[0.3, 0.6, 0.9], 96);
        let k = koebe(96);
        let own = geometry_check(&k, &GeometryKind::CloseToConvexWrt(k.clone()), &cfg).unwrap();
        assert!(own.holds);
        // f = z + 2z^2 against g = z: Re f' = Re(1 + 4z) dips negative.
        let f = TaylorSeries::from_real(&[0.0, 1.0, 2.0]);
        let g = TaylorSeries::from_real(&[0.0, 1.0, 0.0]);
        let v = geometry_check(&f, &GeometryKind::CloseToConvexWrt(g), &cfg).unwrap();
        assert!(!v.holds);
        // Non-starlike reference surfaces the reference failure.
        let bad_ref = TaylorSeries::from_real(&[0.0, 1.0, 2.0]).resized(96);
        let r = geometry_check(&k, &GeometryKind::CloseToConvexWrt(bad_ref), &cfg).unwrap();
        assert!(!r.holds);
    }

    #[test]
    fn starlike_requires_valuation_one() {
        let cfg = Config::default();
        let f = TaylorSeries::from_real(&[0.0, 0.0, 1.0]);
        match geometry_check(&f, &GeometryKind::Starlike, &cfg) {
            Err(Error::ValuationMismatch { .. }) => {}
            other => panic!("expected ValuationMismatch, got {other:?}"),
        }
    }
}
