//! Shared numeric configuration.

/// Numeric knobs shared by subordination checks, geometry scans and the
/// harness. `Default` gives the values used by the acceptance suite.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Config {
    /// Truncation order N: series carry coefficients c_0..c_N.
    pub order: usize,
    /// Boundary sample count M for image profiles and curves.
    pub boundary_samples: usize,
    /// Radii at which subordination candidates are profiled.
    pub test_radii: Vec<f64>,
    /// Verdict tolerance: margins within +/- tolerance are inconclusive.
    pub tolerance: f64,
    /// Radius for dominant boundary curves (strictly inside the disk).
    pub curve_radius: f64,
    /// Radii for geometry grids (Caratheodory/starlike/convex scans).
    pub geometry_radii: Vec<f64>,
    /// Angle count per geometry radius.
    pub geometry_angles: usize,
    /// Angle count for the |zeta| = curve_radius grid used by the
    /// admissibility boundary scans.
    pub zeta_angles: usize,
    /// Per-trial regeneration budget before a trial counts as starved.
    pub retry_budget: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            order: 64,
            boundary_samples: 1024,
            test_radii: vec![0.5, 0.8, 0.95, 0.99],
            tolerance: 1e-4,
            curve_radius: 0.999,
            geometry_radii: vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95],
            geometry_angles: 720,
            zeta_angles: 360,
            retry_budget: 50,
        }
    }
}

impl Config {
    /// Configuration with a different truncation order, other knobs default.
    pub fn with_order(order: usize) -> Self {
        Config {
            order,
            ..Config::default()
        }
    }

    /// Clamp-free validation used by the CLI layer.
    pub fn validate(&self) -> crate::Result<()> {
        if !(8..=512).contains(&self.order) {
            return Err(crate::Error::InvalidParameter {
                op: "config",
                detail: format!("order {} outside [8, 512]", self.order),
            });
        }
        if !(64..=16384).contains(&self.boundary_samples) {
            return Err(crate::Error::InvalidParameter {
                op: "config",
                detail: format!("boundary samples {} outside [64, 16384]", self.boundary_samples),
            });
        }
        if !(1e-8..=1e-2).contains(&self.tolerance) {
            return Err(crate::Error::InvalidParameter {
                op: "config",
                detail: format!("tolerance {:e} outside [1e-8, 1e-2]", self.tolerance),
            });
        }
        if !(0.5..1.0).contains(&self.curve_radius) {
            return Err(crate::Error::InvalidParameter {
                op: "config",
                detail: format!("curve radius {} outside [0.5, 1)", self.curve_radius),
            });
        }
        Ok(())
    }
}
