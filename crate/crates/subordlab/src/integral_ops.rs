//! Integral operators built on valued-series algebra.
//!
//! Every operator here is a termwise integral followed by exponent
//! arithmetic; no quadrature, no contour choices. Fractional powers act on
//! the exponent directly and on the unit through the principal branch,
//! which is legal because every admissible unit has value 1 at the origin.

use num_complex::Complex64 as C64;

use crate::briot_bouquet::{bb_operator, BBParams};
use crate::config::Config;
use crate::dominants::DominantSpec;
use crate::error::{Error, Result};
use crate::series::TaylorSeries;
use crate::subordination::{is_subordinate, Tristate};
use crate::valued::{CValued, ValuedSeries};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Parameters shared by the integral operators. alpha and beta are real
/// with beta != 0; the splitting weights lambda, delta and eta, gamma are
/// complex and must pair up to 1; sigma feeds the two-function operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorParams {
    pub alpha: f64,
    pub beta: f64,
    pub lambda: C64,
    pub eta: C64,
    pub gamma: C64,
    pub delta: C64,
    pub sigma: C64,
}

impl OperatorParams {
    /// Neutral splitting: lambda = eta = 1, gamma = delta = sigma = 0.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let params = OperatorParams {
            alpha,
            beta,
            lambda: ONE,
            eta: ONE,
            gamma: ZERO,
            delta: ZERO,
            sigma: ZERO,
        };
        params.validate()?;
        Ok(params)
    }

    /// Replace the splitting weights; the pairs must each sum to 1 and
    /// eta must stay away from zero.
    pub fn with_splitting(mut self, lambda: C64, delta: C64, eta: C64, gamma: C64) -> Result<Self> {
        self.lambda = lambda;
        self.delta = delta;
        self.eta = eta;
        self.gamma = gamma;
        self.validate()?;
        Ok(self)
    }

    pub fn with_sigma(mut self, sigma: C64) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.beta.abs() <= 1e-12 {
            return Err(Error::InvalidParameter {
                op: "operator_params",
                detail: format!("|beta| = {:.3e} is numerically zero", self.beta.abs()),
            });
        }
        if (self.lambda + self.delta - ONE).norm() >= 1e-12 {
            return Err(Error::InvalidParameter {
                op: "operator_params",
                detail: format!("lambda + delta = {} must be 1", self.lambda + self.delta),
            });
        }
        if (self.eta + self.gamma - ONE).norm() >= 1e-12 {
            return Err(Error::InvalidParameter {
                op: "operator_params",
                detail: format!("eta + gamma = {} must be 1", self.eta + self.gamma),
            });
        }
        if self.eta.norm() <= 1e-12 {
            return Err(Error::InvalidParameter {
                op: "operator_params",
                detail: format!("|eta| = {:.3e} is numerically zero", self.eta.norm()),
            });
        }
        Ok(())
    }
}

fn require_valuation_one(s: &ValuedSeries, op: &'static str) -> Result<()> {
    if (s.exponent() - 1.0).abs() > 1e-9 || (s.unit().constant_term() - ONE).norm() > 1e-9 {
        return Err(Error::ValuationMismatch {
            op,
            expected: "valuation 1 with unit constant 1".into(),
            found: format!(
                "exponent {}, unit constant {}",
                s.exponent(),
                s.unit().constant_term()
            ),
        });
    }
    Ok(())
}

fn require_unit(s: &TaylorSeries, op: &'static str) -> Result<()> {
    if (s.constant_term() - ONE).norm() > 1e-9 {
        return Err(Error::ValuationMismatch {
            op,
            expected: "unit series with value 1 at 0".into(),
            found: format!("constant term {}", s.constant_term()),
        });
    }
    Ok(())
}

/// z·phi'/phi for a unit series phi.
fn z_log_derivative_unit(phi: &TaylorSeries) -> Result<TaylorSeries> {
    phi.z_derivative().divide(phi)
}

/// The function g with z·g'/g = Q and g(z)/z -> 1:
///
///   g(z) = z·exp ∫_0^z (Q(t) - 1)/t dt.
///
/// Q must have constant term 1; anything else makes the integrand singular
/// at the origin.
#[allow(non_snake_case)]
pub fn g_from_Q(q: &TaylorSeries) -> Result<ValuedSeries> {
    let q0 = q.constant_term();
    if (q0 - ONE).norm() > 1e-10 {
        return Err(Error::SingularAtOrigin { op: "g_from_Q" });
    }
    let unit = q.plus_constant(-q0).integrate_log()?.exponential();
    let g = ValuedSeries::new(1.0, unit)?;
    debug_assert!({
        let back = g.z_log_derivative().expect("unit constant is 1");
        (1..=q.order()).all(|k| (back.coeff(k) - q.coeff(k)).norm() < 1e-10)
    });
    Ok(g)
}

/// The relative averaging operator
///
///   F = ((alpha+beta)·g^{-alpha}·∫_0^z g'·g^{alpha-1}·f^beta dt)^{1/beta}.
///
/// f and g must have valuation 1 with unit constant 1. The inner expression
/// carries exponent exactly beta before the 1/beta power; alpha + beta > 0
/// is what keeps the integral free of a logarithm, and its violation
/// surfaces as LogarithmicTerm.
pub fn bernardi_general(
    f: &ValuedSeries,
    g: &ValuedSeries,
    params: &OperatorParams,
) -> Result<ValuedSeries> {
    require_valuation_one(f, "bernardi_general")?;
    require_valuation_one(g, "bernardi_general")?;
    let (alpha, beta) = (params.alpha, params.beta);
    let integrand = g
        .derivative()?
        .multiply(&g.power_real(alpha - 1.0)?)?
        .multiply(&f.power_real(beta)?)?;
    let inner = integrand
        .integrate()?
        .multiply(&g.power_real(-alpha)?)?
        .scaled(C64::new(alpha + beta, 0.0))?;
    assert!(
        (inner.exponent() - beta).abs() < 1e-9,
        "inner exponent {} drifted from beta = {beta}",
        inner.exponent()
    );
    let out = inner.power_real(1.0 / beta)?;
    assert!(
        (out.exponent() - 1.0).abs() < 1e-9 && (out.unit().constant_term() - ONE).norm() < 1e-9,
        "output lost its normalization"
    );
    Ok(out)
}

/// `bernardi_general` with the real-parameter gate removed: alpha, beta may
/// be complex, and the caller takes on the convergence obligations the gate
/// normally enforces. Re(alpha + beta) > 0 is still required to integrate.
pub fn bernardi_general_complex(
    f: &ValuedSeries,
    g: &ValuedSeries,
    alpha: C64,
    beta: C64,
) -> Result<ValuedSeries> {
    require_valuation_one(f, "bernardi_general")?;
    require_valuation_one(g, "bernardi_general")?;
    if beta.norm() <= 1e-12 {
        return Err(Error::InvalidParameter {
            op: "bernardi_general",
            detail: format!("|beta| = {:.3e} is numerically zero", beta.norm()),
        });
    }
    let cf = CValued::from_valued(f);
    let cg = CValued::from_valued(g);
    let g_prime = CValued::from_valued(&g.derivative()?);
    let integrand = g_prime
        .multiply(&cg.power(alpha - ONE)?)?
        .multiply(&cf.power(beta)?)?;
    let inner = integrand
        .integrate()?
        .multiply(&cg.power(-alpha)?)?
        .scaled(alpha + beta)?;
    assert!(
        (inner.exponent - beta).norm() < 1e-9,
        "inner exponent {} drifted from beta = {beta}",
        inner.exponent
    );
    inner.power(ONE / beta)?.into_valued("bernardi_general")
}

/// The self-averaging operator
///
///   F = ((alpha+beta)·f^{-alpha}·∫_0^z f^{alpha-1}·f'·t^beta dt)^{1/beta}.
pub fn bernardi_power(f: &ValuedSeries, params: &OperatorParams) -> Result<ValuedSeries> {
    require_valuation_one(f, "bernardi_power")?;
    let (alpha, beta) = (params.alpha, params.beta);
    let t_beta = ValuedSeries::new(beta, TaylorSeries::one(f.unit().order()))?;
    let integrand = f
        .power_real(alpha - 1.0)?
        .multiply(&f.derivative()?)?
        .multiply(&t_beta)?;
    let inner = integrand
        .integrate()?
        .multiply(&f.power_real(-alpha)?)?
        .scaled(C64::new(alpha + beta, 0.0))?;
    assert!(
        (inner.exponent() - beta).abs() < 1e-9,
        "inner exponent {} drifted from beta = {beta}",
        inner.exponent()
    );
    let out = inner.power_real(1.0 / beta)?;
    assert!(
        (out.exponent() - 1.0).abs() < 1e-9 && (out.unit().constant_term() - ONE).norm() < 1e-9,
        "output lost its normalization"
    );
    Ok(out)
}

/// The weight attached to (g, varphi) and a splitting:
/// lambda·z g'/g + z varphi'/varphi + delta. With lambda + delta = 1 it has
/// value 1 at the origin.
pub fn existence_weight(
    g: &ValuedSeries,
    varphi: &TaylorSeries,
    params: &OperatorParams,
) -> Result<TaylorSeries> {
    let zg = g.z_log_derivative()?;
    let zv = z_log_derivative_unit(varphi)?;
    Ok(zg
        .scaled(params.lambda)
        .add(&zv)
        .plus_constant(params.delta))
}

/// The concluded quotient (eta·z F'/F + z phi'/phi + gamma) / weight.
pub fn existence_quotient(
    f_out: &ValuedSeries,
    phi: &TaylorSeries,
    weight: &TaylorSeries,
    params: &OperatorParams,
) -> Result<TaylorSeries> {
    let zf = f_out.z_log_derivative()?;
    let zp = z_log_derivative_unit(phi)?;
    zf.scaled(params.eta)
        .add(&zp)
        .plus_constant(params.gamma)
        .divide(weight)
}

/// The existence operator
///
///   F = ( (alpha+beta) / (phi^beta · g^{lambda·alpha} · varphi^alpha ·
///         z^{delta·alpha + beta·gamma})
///         · ∫_0^z g^{lambda·alpha} varphi^alpha t^{beta + delta·alpha - 1} Q dt
///       )^{1/(eta·beta)},
///
/// where Q = lambda·z g'/g + z varphi'/varphi + delta, required subordinate
/// to the half plane. alpha >= 0 and beta > 0. On success F has valuation 1
/// and the quotient (eta·z F'/F + z phi'/phi + gamma)/Q keeps positive real
/// part on the standard grid; either check failing is reported as
/// HypothesisFailed, since it means the instance escaped the hypothesis
/// territory numerically.
pub fn existence_operator(
    g: &ValuedSeries,
    varphi: &TaylorSeries,
    phi: &TaylorSeries,
    params: &OperatorParams,
    cfg: &Config,
) -> Result<ValuedSeries> {
    params.validate()?;
    require_valuation_one(g, "existence_operator")?;
    require_unit(varphi, "existence_operator")?;
    require_unit(phi, "existence_operator")?;
    if params.alpha < 0.0 || params.beta <= 0.0 {
        return Err(Error::InvalidParameter {
            op: "existence_operator",
            detail: format!(
                "requires alpha >= 0 and beta > 0, got alpha = {}, beta = {}",
                params.alpha, params.beta
            ),
        });
    }

    let weight = existence_weight(g, varphi, params)?;
    let verdict = is_subordinate(&weight, &DominantSpec::HalfPlane, cfg);
    if verdict.holds != Tristate::True {
        return Err(Error::HypothesisFailed {
            id: "existence_operator".into(),
            detail: format!(
                "weight is not subordinate to the half plane ({:?}, margin {:.3e})",
                verdict.holds, verdict.margin
            ),
        });
    }

    let la = params.lambda * params.alpha;
    let cg_la = CValued::from_valued(g).power(la)?;
    let varphi_a = CValued::new(ZERO, varphi.clone())?.power(C64::new(params.alpha, 0.0))?;
    let head_exponent = params.delta * params.alpha + params.beta;
    let t_pow = CValued::new(head_exponent - ONE, TaylorSeries::one(g.unit().order()))?;
    let integrand = cg_la
        .multiply(&varphi_a)?
        .multiply(&t_pow)?
        .multiply(&CValued::new(ZERO, weight.clone())?)?;
    let integral = integrand.integrate()?;

    let phi_b = CValued::new(ZERO, phi.clone())?.power(C64::new(params.beta, 0.0))?;
    let z_pow = CValued::new(
        params.delta * params.alpha + params.gamma * params.beta,
        TaylorSeries::one(g.unit().order()),
    )?;
    let denom = phi_b.multiply(&cg_la)?.multiply(&varphi_a)?.multiply(&z_pow)?;

    let eta_beta = params.eta * params.beta;
    let ratio = integral
        .scaled(C64::new(params.alpha + params.beta, 0.0))?
        .divide(&denom)?;
    assert!(
        (ratio.exponent - eta_beta).norm() < 1e-9,
        "inner exponent {} drifted from eta·beta = {eta_beta}",
        ratio.exponent
    );
    let f_out = ratio.power(ONE / eta_beta)?.into_valued("existence_operator")?;
    assert!(
        (f_out.exponent() - 1.0).abs() < 1e-9
            && (f_out.unit().constant_term() - ONE).norm() < 1e-9,
        "output lost its normalization"
    );

    let quotient = existence_quotient(&f_out, phi, &weight, params)?;
    let mut worst = f64::INFINITY;
    let tau = std::f64::consts::TAU;
    for &r in &cfg.geometry_radii {
        for k in 0..cfg.geometry_angles {
            let z = C64::from_polar(r, tau * k as f64 / cfg.geometry_angles as f64);
            worst = worst.min(quotient.evaluate_unchecked(z).re);
        }
    }
    if worst <= 0.0 {
        return Err(Error::HypothesisFailed {
            id: "existence_operator".into(),
            detail: format!("concluded quotient lost positivity (worst margin {worst:.3e})"),
        });
    }
    Ok(f_out)
}

fn two_function_integrand(
    f: &ValuedSeries,
    g: &ValuedSeries,
    sigma: C64,
    params: &OperatorParams,
) -> Result<CValued> {
    let cf = CValued::from_valued(f).power(C64::new(params.beta, 0.0))?;
    let cg = CValued::from_valued(g).power(sigma)?;
    let t_pow = CValued::new(
        C64::new(params.alpha, 0.0) - sigma - ONE,
        TaylorSeries::one(f.unit().order()),
    )?;
    cf.multiply(&cg)?.multiply(&t_pow)
}

/// The auxiliary function of the two-function construction,
///
///   p = (1/beta)·f^beta g^sigma z^{alpha-sigma}
///       ·(∫_0^z f^beta g^sigma t^{alpha-sigma-1} dt)^{-1} - alpha/beta,
///
/// which satisfies p + z p'/(beta p + alpha) = z f'/f + (sigma/beta)(z g'/g - 1)
/// as a series identity; `two_function_residual` measures the worst
/// coefficient deviation.
pub fn two_function_witness(
    f: &ValuedSeries,
    g: &ValuedSeries,
    sigma: C64,
    params: &OperatorParams,
) -> Result<TaylorSeries> {
    let integrand = two_function_integrand(f, g, sigma, params)?;
    let z_factor = CValued::new(ONE, TaylorSeries::one(f.unit().order()))?;
    let ratio = integrand.multiply(&z_factor)?.divide(&integrand.integrate()?)?;
    let p = ratio
        .scaled(C64::new(1.0 / params.beta, 0.0))?
        .into_valued("two_function_witness")?
        .to_taylor()?;
    Ok(p.plus_constant(C64::new(-params.alpha / params.beta, 0.0)))
}

/// Worst coefficient residual of the defining identity of
/// `two_function_witness`.
pub fn two_function_residual(
    f: &ValuedSeries,
    g: &ValuedSeries,
    sigma: C64,
    params: &OperatorParams,
) -> Result<f64> {
    let p = two_function_witness(f, g, sigma, params)?;
    let bb = BBParams::new(
        C64::new(params.alpha, 0.0),
        C64::new(params.beta, 0.0),
        1,
    )?;
    let lhs = bb_operator(&p, &TaylorSeries::one(p.order()), &bb)?;
    let rhs = f.z_log_derivative()?.add(
        &g.z_log_derivative()?
            .plus_constant(-ONE)
            .scaled(sigma / params.beta),
    );
    let mut worst: f64 = 0.0;
    for k in 0..=lhs.order().min(rhs.order()) {
        worst = worst.max((lhs.coeff(k) - rhs.coeff(k)).norm());
    }
    Ok(worst)
}

/// The two-function operator
///
///   F = ( (beta+alpha)/(z^alpha·phi)
///         · ∫_0^z f^beta g^sigma t^{alpha-sigma-1} dt )^{1/beta}.
///
/// f and g must have valuation 1, phi value 1 at the origin; sigma may be
/// any complex number (its contribution to the exponent cancels). The
/// subordination content of the construction (a convex h with
/// Re(beta·h + alpha) > 0) lives in the verification harness; here only the
/// series algebra and the defining identity are enforced.
pub fn two_function_operator(
    f: &ValuedSeries,
    g: &ValuedSeries,
    phi: &TaylorSeries,
    sigma: C64,
    params: &OperatorParams,
) -> Result<ValuedSeries> {
    require_valuation_one(f, "two_function_operator")?;
    require_valuation_one(g, "two_function_operator")?;
    require_unit(phi, "two_function_operator")?;
    let integrand = two_function_integrand(f, g, sigma, params)?;
    let integral = integrand.integrate()?;
    let denom = CValued::new(C64::new(params.alpha, 0.0), phi.clone())?;
    let inner = integral
        .scaled(C64::new(params.beta + params.alpha, 0.0))?
        .divide(&denom)?;
    assert!(
        (inner.exponent - C64::new(params.beta, 0.0)).norm() < 1e-9,
        "inner exponent {} drifted from beta = {}",
        inner.exponent,
        params.beta
    );
    let f_out = inner
        .power(C64::new(1.0 / params.beta, 0.0))?
        .into_valued("two_function_operator")?;
    assert!(
        (f_out.exponent() - 1.0).abs() < 1e-9
            && (f_out.unit().constant_term() - ONE).norm() < 1e-9,
        "output lost its normalization"
    );
    debug_assert!(
        two_function_residual(f, g, sigma, params)? < 1e-9,
        "defining identity failed"
    );
    Ok(f_out)
}
