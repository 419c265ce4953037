//! Symplectic volume of the deformed Fubini–Study form on `CP^1`.
//!
//! For `t = ½ λ X₁₂ ∧ Y₁₂` the deformed form on the chart is
//! `ρ(r) dx∧dy` with `ρ(r) = 1/((1+½λ) r⁴ + 2r² + (1−½λ))`. Its integral
//! reduces to `∫₀^∞ π du / ((1+½λ)u² + 2u + (1−½λ))`, which is evaluated on
//! `θ ∈ [0, π/2)` after `u = tan θ`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::cpn::{deformed_form, Action, ChartPoint};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::exterior::Multivector;
use crate::quadrature::{integrate, Settings};
use crate::rational;

/// Largest `|λ|` for which the deformation is admissible on all of `CP^1`.
pub const ADMISSIBLE_BOUND: f64 = 1.0;

/// `π` at `λ = 0`, otherwise `(π/λ) log|(2+λ)/(2−λ)|`.
pub fn closed_volume(lambda: f64) -> Result<f64> {
    if !lambda.is_finite() {
        return Err(Error::OutOfDomain(lambda));
    }
    if (lambda.abs() - 2.0).abs() == 0.0 {
        return Err(Error::Pole(lambda));
    }
    if lambda == 0.0 {
        return Ok(PI);
    }
    Ok(PI * log_ratio(lambda) / lambda)
}

/// `log|(2+λ)/(2−λ)|`, accurate for small `λ`.
fn log_ratio(lambda: f64) -> f64 {
    let h = 0.5 * lambda;
    if h.abs() < 1.0 {
        h.ln_1p() - (-h).ln_1p()
    } else {
        ((2.0 + lambda) / (2.0 - lambda)).abs().ln()
    }
}

/// `k_λ = (1/λ) log|(2+λ)/(2−λ)|` on `0 < |λ| < 2`, with the limit `1` at `λ = 0`.
pub fn k_lambda(lambda: f64) -> Result<f64> {
    if !(lambda.abs() < 2.0) {
        return Err(Error::OutOfDomain(lambda));
    }
    if lambda == 0.0 {
        return Ok(1.0);
    }
    Ok(log_ratio(lambda) / lambda)
}

/// Radial density of the deformed form.
pub fn chart_density(lambda: f64, r_sq: f64) -> f64 {
    1.0 / ((1.0 + 0.5 * lambda) * r_sq * r_sq + 2.0 * r_sq + (1.0 - 0.5 * lambda))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeResult {
    pub lambda: f64,
    pub numeric_volume: f64,
    pub closed_form: f64,
    pub k_lambda: f64,
    pub rel_error: f64,
    pub error_estimate: f64,
    pub quadrature_nodes: usize,
    /// `|λ| < 1`; outside this range the density is still positive for `|λ| < 2`
    /// but the deformation is not covered by the admissibility theorem.
    pub in_admissible_range: bool,
}

fn check_density_domain(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda.abs() < 2.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain(lambda))
    }
}

fn result(lambda: f64, numeric: f64, error: f64, nodes: usize) -> Result<VolumeResult> {
    let closed = closed_volume(lambda)?;
    Ok(VolumeResult {
        lambda,
        numeric_volume: numeric,
        closed_form: closed,
        k_lambda: k_lambda(lambda)?,
        rel_error: ((numeric - closed) / closed).abs(),
        error_estimate: error,
        quadrature_nodes: nodes,
        in_admissible_range: lambda.abs() < ADMISSIBLE_BOUND,
    })
}

/// Integrates the transcribed chart density.
pub fn numeric_volume(lambda: f64, settings: Settings) -> Result<VolumeResult> {
    check_density_domain(lambda)?;
    let a = 1.0 + 0.5 * lambda;
    let b = 1.0 - 0.5 * lambda;
    let est = integrate(
        |theta: f64| {
            let (s, c) = theta.sin_cos();
            PI / (a * s * s + 2.0 * s * c + b * c * c)
        },
        0.0,
        FRAC_PI_2,
        settings,
    )?;
    result(lambda, est.value, est.error, est.nodes)
}

/// Integrates the `dx∧dy` coefficient of the form produced by
/// [`deformed_form`] over the plane, in polar coordinates with `r = tan θ`.
pub fn pipeline_volume(lambda: f64, settings: Settings) -> Result<VolumeResult> {
    check_density_domain(lambda)?;
    let lam = rational::parse(&format!("{lambda:e}"))?;
    let t = Multivector::twist_from_lambdas(3, [((0, 1), lam)])?;
    let form = deformed_form(&Action::unitary(1)?, &t)?;
    let nodes = std::cell::Cell::new(0usize);
    let failure = std::cell::RefCell::new(None);
    let radial = |phi: f64| -> f64 {
        let (sp, cp) = phi.sin_cos();
        let inner = integrate(
            |theta: f64| {
                let r = theta.tan();
                let sec_sq = 1.0 + r * r;
                let p = ChartPoint::new(vec![r * cp, r * sp]).expect("finite point");
                match form.eval(&p) {
                    Ok(m) => m[(0, 1)] * r * sec_sq,
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        f64::NAN
                    }
                }
            },
            0.0,
            FRAC_PI_2,
            settings,
        );
        match inner {
            Ok(est) => {
                nodes.set(nodes.get() + est.nodes);
                est.value
            }
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let outer = integrate(radial, 0.0, 2.0 * PI, settings);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let est = outer?;
    result(lambda, est.value, est.error, nodes.get() + est.nodes)
}

/// [`numeric_volume`] over a list of `λ`.
pub fn volume_sweep(
    exec: Execution,
    lambdas: &[f64],
    settings: Settings,
) -> Result<Vec<VolumeResult>> {
    if lambdas.is_empty() {
        return Err(Error::Empty("lambda range"));
    }
    exec.try_map(lambdas, |&l| numeric_volume(l, settings))
}
