//! Schwarz functions with certified contraction.
//!
//! A `SchwarzSeries` is w(z) = s z B(z) where B is a finite Blaschke
//! product with zeros a_1..a_m. Each Blaschke factor has unit modulus on
//! the boundary, so sup |w| over the closed disk is exactly s and the
//! contraction margin 1 - s is known in closed form rather than estimated.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::series::TaylorSeries;

/// Largest permitted Blaschke zero modulus.
pub const MAX_ZERO_MODULUS: f64 = 0.8;
/// Largest permitted scale.
pub const MAX_SCALE: f64 = 0.95;
/// Largest permitted factor count.
pub const MAX_FACTORS: usize = 3;

/// w(z) = s z prod_k (z - a_k)/(1 - conj(a_k) z), expanded to a chosen order.
#[derive(Debug, Clone)]
pub struct SchwarzSeries {
    scale: f64,
    zeros: Vec<C64>,
    series: TaylorSeries,
}

impl SchwarzSeries {
    /// Build from scale and Blaschke zeros. Requires 0 <= s <= 0.95,
    /// |a_k| <= 0.8, at most 3 factors. Scale 0 gives the zero function.
    pub fn from_blaschke(scale: f64, zeros: &[C64], order: usize) -> Result<Self> {
        if !(0.0..=MAX_SCALE).contains(&scale) {
            return Err(Error::InvalidParameter {
                op: "schwarz",
                detail: format!("scale {scale} outside [0, {MAX_SCALE}]"),
            });
        }
        if zeros.len() > MAX_FACTORS {
            return Err(Error::InvalidParameter {
                op: "schwarz",
                detail: format!("{} Blaschke factors exceed the cap {MAX_FACTORS}", zeros.len()),
            });
        }
        for a in zeros {
            if a.norm() > MAX_ZERO_MODULUS {
                return Err(Error::InvalidParameter {
                    op: "schwarz",
                    detail: format!("zero modulus {} exceeds {MAX_ZERO_MODULUS}", a.norm()),
                });
            }
        }
        let mut series = TaylorSeries::monomial(1, order).scaled(C64::new(scale, 0.0));
        for &a in zeros {
            series = series.multiply(&blaschke_factor(a, order));
        }
        Ok(SchwarzSeries {
            scale,
            zeros: zeros.to_vec(),
            series,
        })
    }

    /// The plain contraction w(z) = s z.
    pub fn scaled_identity(scale: f64, order: usize) -> Result<Self> {
        Self::from_blaschke(scale, &[], order)
    }

    #[inline]
    pub fn series(&self) -> &TaylorSeries {
        &self.series
    }

    #[inline]
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Certified margin 1 - sup_D |w| = 1 - s.
    #[inline]
    pub fn margin(&self) -> f64 {
        1.0 - self.scale
    }

    #[inline]
    pub fn zeros(&self) -> &[C64] {
        &self.zeros
    }

    /// Closed-form evaluation (no truncation), valid on the closed disk.
    pub fn evaluate_exact(&self, z: C64) -> C64 {
        let mut w = C64::new(self.scale, 0.0) * z;
        for &a in &self.zeros {
            w *= (z - a) / (C64::new(1.0, 0.0) - a.conj() * z);
        }
        w
    }
}

/// Coefficients of (z - a)/(1 - conj(a) z):
/// c_0 = -a, c_k = conj(a)^(k-1) (1 - |a|^2) for k >= 1.
fn blaschke_factor(a: C64, order: usize) -> TaylorSeries {
    let mut coeffs = vec![C64::new(0.0, 0.0); order + 1];
    coeffs[0] = -a;
    let gap = 1.0 - a.norm_sqr();
    let mut pow = C64::new(1.0, 0.0);
    for c in coeffs.iter_mut().skip(1) {
        *c = pow * gap;
        pow *= a.conj();
    }
    TaylorSeries::from_coeffs(coeffs)
}
