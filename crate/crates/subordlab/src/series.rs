//! Truncated complex Taylor series and their algebra.
//!
//! A `TaylorSeries` holds coefficients c_0..c_N of an analytic function on
//! the unit disk, truncated at order N. Binary operations truncate to the
//! smaller order of the two operands. Division, logarithms and fractional
//! powers require the constant term to stay away from zero; the guard
//! threshold is 1e-12. All branch choices are principal.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Constant-term modulus below which divide/log/power refuse to run.
pub const UNIT_EPS: f64 = 1e-12;

/// Truncated Taylor series: coefficients `coeffs[k]` of z^k, k = 0..=order.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    order: usize,
    coeffs: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
struct SeriesDto {
    order: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for TaylorSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesDto {
            order: self.order,
            re: self.coeffs.iter().map(|c| c.re).collect(),
            im: self.coeffs.iter().map(|c| c.im).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TaylorSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dto = SeriesDto::deserialize(d)?;
        if dto.re.len() != dto.order + 1 || dto.im.len() != dto.order + 1 {
            return Err(serde::de::Error::custom(format!(
                "coefficient arrays must have order+1 = {} entries",
                dto.order + 1
            )));
        }
        let coeffs: Vec<C64> = dto
            .re
            .iter()
            .zip(&dto.im)
            .map(|(&re, &im)| C64::new(re, im))
            .collect();
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(serde::de::Error::custom("non-finite coefficient"));
        }
        Ok(TaylorSeries {
            order: dto.order,
            coeffs,
        })
    }
}

impl TaylorSeries {
    /// Series with the given coefficients; order = len - 1.
    pub fn from_coeffs(coeffs: Vec<C64>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        TaylorSeries {
            order: coeffs.len() - 1,
            coeffs,
        }
    }

    /// Series with the given real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// The zero series at the given order.
    pub fn zero(order: usize) -> Self {
        TaylorSeries {
            order,
            coeffs: vec![C64::new(0.0, 0.0); order + 1],
        }
    }

    /// The constant-one series at the given order.
    pub fn one(order: usize) -> Self {
        Self::constant(C64::new(1.0, 0.0), order)
    }

    /// A constant series at the given order.
    pub fn constant(c: C64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial z^k at the given order (k <= order).
    pub fn monomial(k: usize, order: usize) -> Self {
        assert!(k <= order, "monomial degree exceeds order");
        let mut s = Self::zero(order);
        s.coeffs[k] = C64::new(1.0, 0.0);
        s
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, k: usize) -> C64 {
        if k <= self.order {
            self.coeffs[k]
        } else {
            C64::new(0.0, 0.0)
        }
    }

    /// Constant term c_0.
    #[inline]
    pub fn constant_term(&self) -> C64 {
        self.coeffs[0]
    }

    /// Copy truncated (or zero-extended) to the given order.
    pub fn resized(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, C64::new(0.0, 0.0));
        TaylorSeries { order, coeffs }
    }

    /// Smallest k with |c_k| > tol, or None for the (numerically) zero series.
    pub fn valuation(&self, tol: f64) -> Option<usize> {
        self.coeffs.iter().position(|c| c.norm() > tol)
    }

    /// Largest coefficient modulus.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// True when every coefficient has |Im| <= tol.
    pub fn has_real_coeffs(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.im.abs() <= tol)
    }

    /// a*f + b*g, truncated to the smaller order.
    pub fn linear_combine(a: C64, f: &TaylorSeries, b: C64, g: &TaylorSeries) -> TaylorSeries {
        let order = f.order.min(g.order);
        let coeffs = (0..=order).map(|k| a * f.coeffs[k] + b * g.coeffs[k]).collect();
        TaylorSeries { order, coeffs }
    }

    /// f + g.
    pub fn add(&self, g: &TaylorSeries) -> TaylorSeries {
        Self::linear_combine(C64::new(1.0, 0.0), self, C64::new(1.0, 0.0), g)
    }

    /// f - g.
    pub fn sub(&self, g: &TaylorSeries) -> TaylorSeries {
        Self::linear_combine(C64::new(1.0, 0.0), self, C64::new(-1.0, 0.0), g)
    }

    /// c * f.
    pub fn scaled(&self, c: C64) -> TaylorSeries {
        TaylorSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|&x| c * x).collect(),
        }
    }

    /// f + c (shift the constant term).
    pub fn plus_constant(&self, c: C64) -> TaylorSeries {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn multiply(&self, g: &TaylorSeries) -> TaylorSeries {
        let order = self.order.min(g.order);
        let mut coeffs = vec![C64::new(0.0, 0.0); order + 1];
        for i in 0..=order {
            let a = self.coeffs[i];
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..=(order - i) {
                coeffs[i + j] += a * g.coeffs[j];
            }
        }
        TaylorSeries { order, coeffs }
    }

    /// f / g by the standard recursion; requires |g_0| > 1e-12.
    pub fn divide(&self, g: &TaylorSeries) -> Result<TaylorSeries> {
        let g0 = g.coeffs[0];
        if g0.norm() <= UNIT_EPS {
            return Err(Error::NearZeroConstantTerm {
                op: "divide",
                modulus: g0.norm(),
            });
        }
        let order = self.order.min(g.order);
        let mut q = vec![C64::new(0.0, 0.0); order + 1];
        for k in 0..=order {
            let mut acc = self.coeffs[k];
            for j in 0..k {
                acc -= q[j] * g.coeffs[k - j];
            }
            q[k] = acc / g0;
        }
        Ok(TaylorSeries { order, coeffs: q })
    }

    /// Multiplicative inverse 1/f.
    pub fn inverse(&self) -> Result<TaylorSeries> {
        TaylorSeries::one(self.order).divide(self)
    }

    /// exp(f), via E' = f' E.
    pub fn exponential(&self) -> TaylorSeries {
        let n = self.order;
        let mut e = vec![C64::new(0.0, 0.0); n + 1];
        e[0] = self.coeffs[0].exp();
        for k in 1..=n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 1..=k {
                acc += (j as f64) * self.coeffs[j] * e[k - j];
            }
            e[k] = acc / (k as f64);
        }
        TaylorSeries {
            order: n,
            coeffs: e,
        }
    }

    /// Principal log(f); requires |f_0| > 1e-12. Uses f' = f L'.
    pub fn logarithm(&self) -> Result<TaylorSeries> {
        let f0 = self.coeffs[0];
        if f0.norm() <= UNIT_EPS {
            return Err(Error::NearZeroConstantTerm {
                op: "logarithm",
                modulus: f0.norm(),
            });
        }
        let n = self.order;
        let mut l = vec![C64::new(0.0, 0.0); n + 1];
        l[0] = f0.ln();
        for k in 1..=n {
            // k f_k = sum_{j=1..k} j L_j f_{k-j}
            let mut acc = (k as f64) * self.coeffs[k];
            for j in 1..k {
                acc -= (j as f64) * l[j] * self.coeffs[k - j];
            }
            l[k] = acc / ((k as f64) * f0);
        }
        Ok(TaylorSeries {
            order: n,
            coeffs: l,
        })
    }

    /// Principal f^s for real s, via f P' = s f' P; requires |f_0| > 1e-12.
    pub fn power_real(&self, s: f64) -> Result<TaylorSeries> {
        self.power_complex(C64::new(s, 0.0))
    }

    /// Principal f^s for complex s.
    pub fn power_complex(&self, s: C64) -> Result<TaylorSeries> {
        let f0 = self.coeffs[0];
        if f0.norm() <= UNIT_EPS {
            return Err(Error::NearZeroConstantTerm {
                op: "power",
                modulus: f0.norm(),
            });
        }
        let n = self.order;
        let mut p = vec![C64::new(0.0, 0.0); n + 1];
        p[0] = (s * f0.ln()).exp();
        for k in 1..=n {
            // k P_k f_0 = s sum_{j=1..k} j f_j P_{k-j} - sum_{j=1..k-1} j P_j f_{k-j}
            let mut acc = C64::new(0.0, 0.0);
            for j in 1..=k {
                acc += s * (j as f64) * self.coeffs[j] * p[k - j];
            }
            for j in 1..k {
                acc -= (j as f64) * p[j] * self.coeffs[k - j];
            }
            p[k] = acc / ((k as f64) * f0);
        }
        Ok(TaylorSeries {
            order: n,
            coeffs: p,
        })
    }

    /// Plain derivative f'; order drops by one (padded with a trailing zero).
    pub fn derivative(&self) -> TaylorSeries {
        let n = self.order;
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        for k in 1..=n {
            coeffs[k - 1] = (k as f64) * self.coeffs[k];
        }
        TaylorSeries {
            order: n,
            coeffs,
        }
    }

    /// z f'(z): coefficient k c_k at index k. Exact at every order.
    pub fn z_derivative(&self) -> TaylorSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| (k as f64) * c)
            .collect();
        TaylorSeries {
            order: self.order,
            coeffs,
        }
    }

    /// Termwise primitive: integral from 0 to z of f(t) dt. The order-N input
    /// coefficient would land at degree N+1 and is dropped by truncation.
    pub fn integrate(&self) -> TaylorSeries {
        let n = self.order;
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        for k in 1..=n {
            coeffs[k] = self.coeffs[k - 1] / (k as f64);
        }
        TaylorSeries {
            order: n,
            coeffs,
        }
    }

    /// Integral from 0 to z of f(t)/t dt; requires f(0) = 0 (within 1e-12).
    pub fn integrate_log(&self) -> Result<TaylorSeries> {
        if self.coeffs[0].norm() > UNIT_EPS {
            return Err(Error::SingularAtOrigin {
                op: "integrate_log",
            });
        }
        let n = self.order;
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        for k in 1..=n {
            coeffs[k] = self.coeffs[k] / (k as f64);
        }
        Ok(TaylorSeries {
            order: n,
            coeffs,
        })
    }

    /// h(w(z)) by Horner in w; requires w(0) = 0 (within 1e-12).
    pub fn compose(&self, w: &TaylorSeries) -> Result<TaylorSeries> {
        if w.coeffs[0].norm() > UNIT_EPS {
            return Err(Error::InvalidParameter {
                op: "compose",
                detail: format!("inner series has w(0) = {} != 0", w.coeffs[0]),
            });
        }
        let order = self.order.min(w.order);
        let mut acc = TaylorSeries::constant(self.coeff(order), order);
        for k in (0..order).rev() {
            acc = acc.multiply(w);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// f(λ z) as a formal series: coefficients c_k λ^k.
    pub fn scale_argument(&self, lambda: C64) -> TaylorSeries {
        let mut pow = C64::new(1.0, 0.0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let out = c * pow;
                pow *= lambda;
                out
            })
            .collect();
        TaylorSeries {
            order: self.order,
            coeffs,
        }
    }

    /// Horner evaluation at a point strictly inside the unit disk.
    pub fn evaluate(&self, z: C64) -> Result<C64> {
        if z.norm() >= 1.0 {
            return Err(Error::InvalidParameter {
                op: "evaluate",
                detail: format!("|z| = {} not strictly inside the unit disk", z.norm()),
            });
        }
        Ok(self.evaluate_unchecked(z))
    }

    #[inline]
    pub(crate) fn evaluate_unchecked(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Crude truncation-tail estimate |c_N| r^N / (1 - r) at radius r < 1.
    pub fn tail_estimate(&self, r: f64) -> f64 {
        debug_assert!((0.0..1.0).contains(&r));
        self.coeffs[self.order].norm() * r.powi(self.order as i32) / (1.0 - r)
    }

    /// Values at the M points r e^{2 pi i k / M}, k = 0..M, with the tail
    /// estimate at radius r. Requires 0 < r < 1.
    pub fn boundary_profile(&self, r: f64, m: usize) -> Result<Profile> {
        if !(0.0 < r && r < 1.0) {
            return Err(Error::InvalidParameter {
                op: "boundary_profile",
                detail: format!("radius {r} outside (0, 1)"),
            });
        }
        if m == 0 {
            return Err(Error::InvalidParameter {
                op: "boundary_profile",
                detail: "zero sample count".into(),
            });
        }
        let points = (0..m)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / (m as f64);
                let z = C64::from_polar(r, theta);
                (z, self.evaluate_unchecked(z))
            })
            .collect();
        Ok(Profile {
            radius: r,
            tail: self.tail_estimate(r),
            points,
        })
    }
}

/// Boundary sample of a series: (z, f(z)) pairs on |z| = radius plus the
/// truncation-tail estimate there. Tail above 1e-6 flags the profile as
/// numerically soft; callers report but do not reject.
#[derive(Debug, Clone)]
pub struct Profile {
    pub radius: f64,
    pub tail: f64,
    pub points: Vec<(C64, C64)>,
}

impl Profile {
    pub fn tail_flagged(&self) -> bool {
        self.tail > 1e-6
    }
}

impl std::ops::Add for &TaylorSeries {
    type Output = TaylorSeries;
    fn add(self, rhs: &TaylorSeries) -> TaylorSeries {
        TaylorSeries::add(self, rhs)
    }
}

impl std::ops::Sub for &TaylorSeries {
    type Output = TaylorSeries;
    fn sub(self, rhs: &TaylorSeries) -> TaylorSeries {
        TaylorSeries::sub(self, rhs)
    }
}

impl std::ops::Mul for &TaylorSeries {
    type Output = TaylorSeries;
    fn mul(self, rhs: &TaylorSeries) -> TaylorSeries {
        self.multiply(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: C64, b: C64, eps: f64) {
        assert!(
            (a - b).norm() <= eps,
            "expected {b}, got {a} (|diff| = {:.3e})",
            (a - b).norm()
        );
    }

    #[test]
    fn multiply_matches_hand_convolution() {
        // (1 + z + z^2 + z^3)^2, convolved by hand: [1, 2, 3, 4] at order 3.
        let f = TaylorSeries::from_real(&[1.0, 1.0, 1.0, 1.0]);
        let p = f.multiply(&f);
        for (k, want) in [1.0, 2.0, 3.0, 4.0].into_iter().enumerate() {
            assert_close(p.coeff(k), C64::new(want, 0.0), 1e-12);
        }
    }

    #[test]
    fn divide_matches_long_division() {
        // z / (1 + z) by long division: z - z^2 + z^3 - ...
        let num = TaylorSeries::from_real(&[0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let den = TaylorSeries::from_real(&[1.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let q = num.divide(&den).unwrap();
        let want = [0.0, 1.0, -1.0, 1.0, -1.0, 1.0];
        for (k, w) in want.into_iter().enumerate() {
            assert_close(q.coeff(k), C64::new(w, 0.0), 1e-12);
        }
    }

    #[test]
    fn divide_rejects_vanishing_constant_term() {
        let num = TaylorSeries::one(4);
        let den = TaylorSeries::from_real(&[0.0, 1.0, 0.0, 0.0, 0.0]);
        match num.divide(&den) {
            Err(Error::NearZeroConstantTerm { .. }) => {}
            other => panic!("expected NearZeroConstantTerm, got {other:?}"),
        }
    }

    #[test]
    fn exponential_of_z() {
        let e = TaylorSeries::from_real(&[0.0, 1.0, 0.0, 0.0, 0.0]).exponential();
        let want = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0];
        for (k, w) in want.into_iter().enumerate() {
            assert_close(e.coeff(k), C64::new(w, 0.0), 1e-12);
        }
    }

    #[test]
    fn logarithm_of_one_minus_z() {
        // log(1 - z) = -sum z^k / k.
        let mut f = TaylorSeries::zero(8);
        f = f.plus_constant(C64::new(1.0, 0.0));
        let l = f
            .sub(&TaylorSeries::monomial(1, 8))
            .logarithm()
            .unwrap();
        for k in 1..=8 {
            assert_close(l.coeff(k), C64::new(-1.0 / k as f64, 0.0), 1e-12);
        }
        assert_close(l.coeff(0), C64::new(0.0, 0.0), 1e-15);
    }

    #[test]
    fn integrate_log_of_halfplane_numerator() {
        // (Q - 1) for Q = (1+z)/(1-z) is [0, 2, 2, 2, ...];
        // the termwise integral of (Q-1)/t is 2 z^k / k = -2 log(1 - z).
        let f = TaylorSeries::from_real(&[0.0, 2.0, 2.0, 2.0, 2.0, 2.0]);
        let g = f.integrate_log().unwrap();
        for k in 1..=5 {
            assert_close(g.coeff(k), C64::new(2.0 / k as f64, 0.0), 1e-12);
        }
    }

    #[test]
    fn integrate_log_requires_zero_constant_term() {
        let f = TaylorSeries::one(4);
        match f.integrate_log() {
            Err(Error::SingularAtOrigin { .. }) => {}
            other => panic!("expected SingularAtOrigin, got {other:?}"),
        }
    }

    #[test]
    fn power_real_square_root_squares_back() {
        let f = TaylorSeries::from_real(&[1.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let r = f.power_real(0.5).unwrap();
        let sq = r.multiply(&r);
        for k in 0..=5 {
            assert_close(sq.coeff(k), f.coeff(k), 1e-12);
        }
        // (1+z)^2 via the same recursion.
        let p2 = f.power_real(2.0).unwrap();
        let want = [1.0, 2.0, 1.0, 0.0, 0.0, 0.0];
        for (k, w) in want.into_iter().enumerate() {
            assert_close(p2.coeff(k), C64::new(w, 0.0), 1e-12);
        }
    }

    #[test]
    fn compose_direct_substitution() {
        // h = z + z^2 composed with w = z^2 gives z^2 + z^4 exactly.
        let h = TaylorSeries::from_real(&[0.0, 1.0, 1.0, 0.0, 0.0]);
        let w = TaylorSeries::from_real(&[0.0, 0.0, 1.0, 0.0, 0.0]);
        let c = h.compose(&w).unwrap();
        let want = [0.0, 0.0, 1.0, 0.0, 1.0];
        for (k, wv) in want.into_iter().enumerate() {
            assert_close(c.coeff(k), C64::new(wv, 0.0), 1e-12);
        }
    }

    #[test]
    fn compose_requires_vanishing_inner_constant() {
        let h = TaylorSeries::one(4);
        let w = TaylorSeries::one(4);
        assert!(h.compose(&w).is_err());
    }

    #[test]
    fn evaluate_geometric_sum() {
        // sum_{k=0}^{19} (1/2)^k = 2 - 2^{-19}.
        let f = TaylorSeries::from_real(&vec![1.0; 20]);
        let v = f.evaluate(C64::new(0.5, 0.0)).unwrap();
        assert_close(v, C64::new(2.0 - 2f64.powi(-19), 0.0), 1e-14);
        assert!((v.re - 1.999998).abs() < 1e-6);
    }

    #[test]
    fn evaluate_rejects_boundary() {
        let f = TaylorSeries::one(3);
        assert!(f.evaluate(C64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn z_derivative_then_integrate_log_round_trips() {
        let f = TaylorSeries::from_real(&[0.0, 3.0, -2.5, 0.125, 7.0]);
        let back = f.z_derivative().integrate_log().unwrap();
        for k in 0..=4 {
            assert_close(back.coeff(k), f.coeff(k), 1e-12);
        }
    }

    #[test]
    fn scale_argument_applies_powers() {
        let f = TaylorSeries::from_real(&[1.0, 1.0, 1.0]);
        let g = f.scale_argument(C64::new(1.2, 0.0));
        assert_close(g.coeff(2), C64::new(1.44, 0.0), 1e-12);
    }

    #[test]
    fn serde_round_trip_preserves_coefficients() {
        let f = TaylorSeries::from_coeffs(vec![
            C64::new(1.0, -0.5),
            C64::new(0.25, 2.0),
            C64::new(-3.0, 0.0),
        ]);
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"order\":2"));
        let back: TaylorSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn serde_rejects_mismatched_lengths() {
        let bad = r#"{"order":2,"re":[1.0,2.0],"im":[0.0,0.0]}"#;
        assert!(serde_json::from_str::<TaylorSeries>(bad).is_err());
    }

    #[test]
    fn tail_estimate_matches_formula() {
        let f = TaylorSeries::from_real(&[1.0, 0.0, 0.0, 4.0]);
        let tail = f.tail_estimate(0.5);
        assert!((tail - 4.0 * 0.125 / 0.5).abs() < 1e-15);
    }

    #[test]
    fn binary_ops_truncate_to_smaller_order() {
        let f = TaylorSeries::one(8);
        let g = TaylorSeries::one(3);
        assert_eq!(f.multiply(&g).order(), 3);
        assert_eq!(f.add(&g).order(), 3);
        assert_eq!(f.divide(&g).unwrap().order(), 3);
    }
}
