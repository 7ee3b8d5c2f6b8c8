//! Series with an attached power of z: F(z) = z^rho * u(z).
//!
//! `ValuedSeries` carries a real exponent rho and a unit series u with
//! u(0) != 0, which is how fractional powers of z survive integral
//! operators without leaving the algebra. The crate-private `CValued`
//! twin allows a complex exponent; the integral operators need complex
//! intermediate exponents (they always cancel before output) and convert
//! back with an imaginary-part check.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{TaylorSeries, UNIT_EPS};

/// z^rho * u(z) with real rho and unit u (|u(0)| above the relative floor).
#[derive(Debug, Clone, PartialEq)]
pub struct ValuedSeries {
    exponent: f64,
    unit: TaylorSeries,
}

#[derive(Serialize, Deserialize)]
struct ValuedDto {
    order: usize,
    re: Vec<f64>,
    im: Vec<f64>,
    exponent: f64,
}

impl Serialize for ValuedSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ValuedDto {
            order: self.unit.order(),
            re: self.unit.coeffs().iter().map(|c| c.re).collect(),
            im: self.unit.coeffs().iter().map(|c| c.im).collect(),
            exponent: self.exponent,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ValuedSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dto = ValuedDto::deserialize(d)?;
        if dto.re.len() != dto.order + 1 || dto.im.len() != dto.order + 1 {
            return Err(serde::de::Error::custom("coefficient arrays must have order+1 entries"));
        }
        if !dto.exponent.is_finite() {
            return Err(serde::de::Error::custom("non-finite exponent"));
        }
        let coeffs: Vec<C64> = dto
            .re
            .iter()
            .zip(&dto.im)
            .map(|(&re, &im)| C64::new(re, im))
            .collect();
        ValuedSeries::new(dto.exponent, TaylorSeries::from_coeffs(coeffs))
            .map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

impl ValuedSeries {
    /// Build z^rho * u; the unit's constant term must clear the relative
    /// floor 1e-12 * max|c_k|.
    pub fn new(exponent: f64, unit: TaylorSeries) -> Result<Self> {
        let floor = UNIT_EPS * unit.max_coeff_norm().max(1e-300);
        if unit.constant_term().norm() <= floor {
            return Err(Error::ValuationMismatch {
                op: "valued_series",
                expected: "unit series with nonzero constant term".into(),
                found: format!("|u(0)| = {:.3e}", unit.constant_term().norm()),
            });
        }
        Ok(ValuedSeries { exponent, unit })
    }

    /// Factor a plain series into z^v * unit at its numerical valuation.
    pub fn from_taylor(f: &TaylorSeries) -> Result<Self> {
        let floor = UNIT_EPS * f.max_coeff_norm();
        let v = f.valuation(floor).ok_or(Error::ValuationMismatch {
            op: "from_taylor",
            expected: "nonzero series".into(),
            found: "zero series".into(),
        })?;
        let n = f.order();
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in v..=n {
            coeffs.push(f.coeff(k));
        }
        coeffs.resize(n + 1, C64::new(0.0, 0.0));
        ValuedSeries::new(v as f64, TaylorSeries::from_coeffs(coeffs))
    }

    #[inline]
    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    #[inline]
    pub fn unit(&self) -> &TaylorSeries {
        &self.unit
    }

    /// Convert back to a plain series; the exponent must be a nonnegative
    /// integer within 1e-9 (coefficients sliding past the order are cut).
    pub fn to_taylor(&self) -> Result<TaylorSeries> {
        let rounded = self.exponent.round();
        if (self.exponent - rounded).abs() > 1e-9 || rounded < 0.0 {
            return Err(Error::ValuationMismatch {
                op: "to_taylor",
                expected: "nonnegative integer exponent".into(),
                found: format!("{}", self.exponent),
            });
        }
        let shift = rounded as usize;
        let n = self.unit.order();
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        for k in 0..=n {
            if k + shift <= n {
                coeffs[k + shift] = self.unit.coeff(k);
            }
        }
        Ok(TaylorSeries::from_coeffs(coeffs))
    }

    /// Product: exponents add, units multiply.
    pub fn multiply(&self, g: &ValuedSeries) -> Result<ValuedSeries> {
        ValuedSeries::new(self.exponent + g.exponent, self.unit.multiply(&g.unit))
    }

    /// Quotient: exponents subtract, units divide.
    pub fn divide(&self, g: &ValuedSeries) -> Result<ValuedSeries> {
        ValuedSeries::new(self.exponent - g.exponent, self.unit.divide(&g.unit)?)
    }

    /// Principal power: exponent scales, unit takes the principal power.
    pub fn power_real(&self, s: f64) -> Result<ValuedSeries> {
        ValuedSeries::new(self.exponent * s, self.unit.power_real(s)?)
    }

    /// Scalar multiple.
    pub fn scaled(&self, c: C64) -> Result<ValuedSeries> {
        ValuedSeries::new(self.exponent, self.unit.scaled(c))
    }

    /// Derivative: z^rho u -> z^(rho-1) (rho u + z u').
    pub fn derivative(&self) -> Result<ValuedSeries> {
        let num = TaylorSeries::linear_combine(
            C64::new(self.exponent, 0.0),
            &self.unit,
            C64::new(1.0, 0.0),
            &self.unit.z_derivative(),
        );
        let mut out = ValuedSeries {
            exponent: self.exponent - 1.0,
            unit: num,
        };
        out.normalize()?;
        Ok(out)
    }

    /// Logarithmic derivative z F'/F = rho + z u'/u, a plain series.
    pub fn z_log_derivative(&self) -> Result<TaylorSeries> {
        let ratio = self.unit.z_derivative().divide(&self.unit)?;
        Ok(ratio.plus_constant(C64::new(self.exponent, 0.0)))
    }

    /// Termwise primitive of z^rho u: exponent rises to rho + 1, coefficient
    /// k divides by rho + k + 1. Requires rho + 1 > 1e-9, otherwise the
    /// integral leaves the algebra through a logarithm (or a pole).
    pub fn integrate(&self) -> Result<ValuedSeries> {
        if self.exponent + 1.0 <= 1e-9 {
            return Err(Error::LogarithmicTerm {
                power: self.exponent,
            });
        }
        let coeffs = self
            .unit
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, &c)| c / (self.exponent + k as f64 + 1.0))
            .collect();
        ValuedSeries::new(self.exponent + 1.0, TaylorSeries::from_coeffs(coeffs))
    }

    /// Move any numerically-zero leading unit coefficients into the exponent.
    pub fn normalize(&mut self) -> Result<()> {
        let floor = UNIT_EPS * self.unit.max_coeff_norm();
        let v = self.unit.valuation(floor).ok_or(Error::ValuationMismatch {
            op: "normalize",
            expected: "nonzero unit".into(),
            found: "zero series".into(),
        })?;
        if v > 0 {
            let n = self.unit.order();
            let mut coeffs = Vec::with_capacity(n + 1);
            for k in v..=n {
                coeffs.push(self.unit.coeff(k));
            }
            coeffs.resize(n + 1, C64::new(0.0, 0.0));
            self.exponent += v as f64;
            self.unit = TaylorSeries::from_coeffs(coeffs);
        }
        Ok(())
    }

    /// Principal-branch evaluation exp(rho Log z) u(z), z != 0 inside the disk.
    pub fn evaluate_principal(&self, z: C64) -> Result<C64> {
        if z.norm() <= UNIT_EPS {
            return Err(Error::SingularAtOrigin {
                op: "evaluate_principal",
            });
        }
        let head = (C64::new(self.exponent, 0.0) * z.ln()).exp();
        Ok(head * self.unit.evaluate(z)?)
    }
}

/// Complex-exponent twin used inside the integral operators. Exponents
/// provably cancel before results are surfaced; `into_valued` enforces it.
#[derive(Debug, Clone)]
pub(crate) struct CValued {
    pub exponent: C64,
    pub unit: TaylorSeries,
}

impl CValued {
    pub fn new(exponent: C64, unit: TaylorSeries) -> Result<Self> {
        let floor = UNIT_EPS * unit.max_coeff_norm().max(1e-300);
        if unit.constant_term().norm() <= floor {
            return Err(Error::ValuationMismatch {
                op: "cvalued",
                expected: "unit series with nonzero constant term".into(),
                found: format!("|u(0)| = {:.3e}", unit.constant_term().norm()),
            });
        }
        Ok(CValued { exponent, unit })
    }

    pub fn from_valued(v: &ValuedSeries) -> Self {
        CValued {
            exponent: C64::new(v.exponent(), 0.0),
            unit: v.unit().clone(),
        }
    }

    pub fn multiply(&self, g: &CValued) -> Result<CValued> {
        CValued::new(self.exponent + g.exponent, self.unit.multiply(&g.unit))
    }

    pub fn divide(&self, g: &CValued) -> Result<CValued> {
        CValued::new(self.exponent - g.exponent, self.unit.divide(&g.unit)?)
    }

    pub fn power(&self, s: C64) -> Result<CValued> {
        CValued::new(self.exponent * s, self.unit.power_complex(s)?)
    }

    pub fn scaled(&self, c: C64) -> Result<CValued> {
        CValued::new(self.exponent, self.unit.scaled(c))
    }

    /// Termwise primitive; every shifted exponent rho + k + 1 must clear
    /// 1e-9 in modulus and the k = 0 one must have positive real part
    /// (otherwise the antiderivative does not vanish at the origin).
    pub fn integrate(&self) -> Result<CValued> {
        if (self.exponent + 1.0).re <= 1e-9 {
            return Err(Error::LogarithmicTerm {
                power: (self.exponent + 1.0).re - 1.0,
            });
        }
        let coeffs = self
            .unit
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, &c)| c / (self.exponent + k as f64 + 1.0))
            .collect();
        CValued::new(self.exponent + 1.0, TaylorSeries::from_coeffs(coeffs))
    }

    /// Surface as a real-exponent series; fails if the imaginary part of the
    /// exponent did not cancel.
    pub fn into_valued(self, op: &'static str) -> Result<ValuedSeries> {
        if self.exponent.im.abs() > 1e-9 {
            return Err(Error::ValuationMismatch {
                op,
                expected: "real exponent after cancellation".into(),
                found: format!("residual imaginary part {:.3e}", self.exponent.im),
            });
        }
        ValuedSeries::new(self.exponent.re, self.unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrate_half_power() {
        // integral of t^(-1/2) dt = 2 z^(1/2).
        let v = ValuedSeries::new(-0.5, TaylorSeries::one(4)).unwrap();
        let i = v.integrate().unwrap();
        assert!((i.exponent() - 0.5).abs() < 1e-15);
        assert!((i.unit().coeff(0) - C64::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn integrate_rejects_log_power() {
        let v = ValuedSeries::new(-1.0, TaylorSeries::one(4)).unwrap();
        match v.integrate() {
            Err(Error::LogarithmicTerm { .. }) => {}
            other => panic!("expected LogarithmicTerm, got {other:?}"),
        }
    }

    #[test]
    fn from_taylor_extracts_valuation() {
        // Koebe function z/(1-z)^2 = z + 2z^2 + 3z^3 + ...
        let f = TaylorSeries::from_real(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        let v = ValuedSeries::from_taylor(&f).unwrap();
        assert!((v.exponent() - 1.0).abs() < 1e-15);
        assert!((v.unit().coeff(1) - C64::new(2.0, 0.0)).norm() < 1e-15);
        let back = v.to_taylor().unwrap();
        for k in 0..=4 {
            assert!((back.coeff(k) - f.coeff(k)).norm() < 1e-15);
        }
    }

    #[test]
    fn z_log_derivative_of_z_exp_z() {
        // g = z e^z has z g'/g = 1 + z.
        let unit = TaylorSeries::from_real(&[0.0, 1.0, 0.0, 0.0, 0.0, 0.0]).exponential();
        let g = ValuedSeries::new(1.0, unit).unwrap();
        let q = g.z_log_derivative().unwrap();
        assert!((q.coeff(0) - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((q.coeff(1) - C64::new(1.0, 0.0)).norm() < 1e-12);
        for k in 2..=5 {
            assert!(q.coeff(k).norm() < 1e-12);
        }
    }

    #[test]
    fn derivative_drops_exponent() {
        // d/dz of z^2 * 1 = 2 z; exponent 1, unit 2.
        let v = ValuedSeries::new(2.0, TaylorSeries::one(4)).unwrap();
        let d = v.derivative().unwrap();
        assert!((d.exponent() - 1.0).abs() < 1e-12);
        assert!((d.unit().coeff(0) - C64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn multiply_adds_exponents() {
        let a = ValuedSeries::new(0.5, TaylorSeries::one(3)).unwrap();
        let b = ValuedSeries::new(1.25, TaylorSeries::one(3)).unwrap();
        assert!((a.multiply(&b).unwrap().exponent() - 1.75).abs() < 1e-15);
    }

    #[test]
    fn serde_round_trip() {
        let v = ValuedSeries::new(0.75, TaylorSeries::from_real(&[2.0, -1.0])).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("exponent"));
        let back: ValuedSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(v, back);
    }

    #[test]
    fn cvalued_cancellation_check() {
        let a = CValued::new(C64::new(0.0, 0.4), TaylorSeries::one(3)).unwrap();
        assert!(a.clone().into_valued("test").is_err());
        let b = a.divide(&a).unwrap();
        assert!(b.into_valued("test").is_ok());
    }
}
