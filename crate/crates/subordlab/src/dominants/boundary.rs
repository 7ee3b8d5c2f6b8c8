//! Sampled boundary curves h(r e^{i theta}).
//!
//! Curves back the winding-number membership test for dominants without a
//! closed predicate. Sampling is adaptive: any segment longer than a fifth
//! of the current curve diameter is split until the polygon resolves the
//! curve's geometry.

use std::io::Write;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

use super::DominantSpec;

/// Maximum admissible ratio of segment length to curve diameter.
const GAP_FRACTION: f64 = 0.2;
/// Hard cap on refinement so a pathological map cannot loop forever.
const MAX_POINTS: usize = 1 << 16;

/// Closed polygonal approximation of the image of |z| = radius.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    radius: f64,
    /// Parameter angles in [0, 2pi), strictly increasing.
    thetas: Vec<f64>,
    /// Curve points, same length as `thetas`; the curve closes cyclically.
    points: Vec<C64>,
}

impl BoundaryCurve {
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    /// Largest pairwise distance, estimated from bounding box corners.
    pub fn diameter(&self) -> f64 {
        let (mut re_lo, mut re_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut im_lo, mut im_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in &self.points {
            re_lo = re_lo.min(p.re);
            re_hi = re_hi.max(p.re);
            im_lo = im_lo.min(p.im);
            im_hi = im_hi.max(p.im);
        }
        ((re_hi - re_lo).powi(2) + (im_hi - im_lo).powi(2)).sqrt()
    }

    /// Longest polygon edge, including the closing edge.
    pub fn max_gap(&self) -> f64 {
        let n = self.points.len();
        (0..n)
            .map(|i| (self.points[(i + 1) % n] - self.points[i]).norm())
            .fold(0.0, f64::max)
    }

    /// Distance from w to the polygon.
    pub fn distance_to(&self, w: C64) -> f64 {
        let n = self.points.len();
        let mut best = f64::INFINITY;
        for i in 0..n {
            let a = self.points[i];
            let b = self.points[(i + 1) % n];
            let ab = b - a;
            let len2 = ab.norm_sqr();
            let t = if len2 < 1e-300 {
                0.0
            } else {
                (((w - a).re * ab.re + (w - a).im * ab.im) / len2).clamp(0.0, 1.0)
            };
            best = best.min((w - (a + ab * t)).norm());
        }
        best
    }

    /// CSV rows `theta,re,im`, one sample per line, with a header.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "theta,re,im").map_err(Error::from)?;
        for (t, p) in self.thetas.iter().zip(&self.points) {
            writeln!(out, "{t:.12},{:.12},{:.12}", p.re, p.im).map_err(Error::from)?;
        }
        Ok(())
    }
}

/// Sample the image of the circle |z| = radius under h, refining until no
/// polygon edge exceeds `GAP_FRACTION` of the curve diameter.
pub fn boundary_curve(h: &DominantSpec, radius: f64, initial: usize) -> Result<BoundaryCurve> {
    if !(0.0 < radius && radius < 1.0) {
        return Err(Error::InvalidParameter {
            op: "boundary_curve",
            detail: format!("radius {radius} outside (0, 1)"),
        });
    }
    let initial = initial.clamp(64, MAX_POINTS);
    let tau = std::f64::consts::TAU;
    let eval = |t: f64| h.evaluate_unchecked(C64::from_polar(radius, t));

    let mut thetas: Vec<f64> = (0..initial).map(|k| tau * k as f64 / initial as f64).collect();
    let mut points: Vec<C64> = thetas.iter().map(|&t| eval(t)).collect();

    loop {
        let curve = BoundaryCurve {
            radius,
            thetas: thetas.clone(),
            points: points.clone(),
        };
        let cap = GAP_FRACTION * curve.diameter();
        let n = points.len();
        if n >= MAX_POINTS {
            break;
        }
        let mut next_thetas = Vec::with_capacity(2 * n);
        let mut next_points = Vec::with_capacity(2 * n);
        let mut split_any = false;
        for i in 0..n {
            next_thetas.push(thetas[i]);
            next_points.push(points[i]);
            let t_next = if i + 1 == n { tau } else { thetas[i + 1] };
            let p_next = points[(i + 1) % n];
            if (p_next - points[i]).norm() > cap && next_thetas.len() < MAX_POINTS {
                let mid = 0.5 * (thetas[i] + t_next);
                next_thetas.push(mid);
                next_points.push(eval(mid));
                split_any = true;
            }
        }
        if !split_any {
            break;
        }
        thetas = next_thetas;
        points = next_points;
    }

    Ok(BoundaryCurve {
        radius,
        thetas,
        points,
    })
}
