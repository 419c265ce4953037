//! The matrix `A_t(ξ)` of a twisted complement and admissibility scans.
//!
//! For `t = ½ T^{ij} e_i ∧ e_j` the matrix is
//! `A[i][l] = −δ_il − Σ_{j,k} T^{ij} c_{lj}^k ξ_k`, whose determinant has
//! constant term `(−1)^n`. [`f_t`] reports the sign-normalized determinant
//! `(−1)^n det A_t(ξ) = det(−A_t(ξ))`, which equals `1` at `ξ = 0` and is the
//! square `(1 + 2λ₂₃ξ₁ − 2λ₁₃ξ₂ + 2λ₁₂ξ₃)²` on `su(2)`.

use nalgebra::DMatrix;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::exterior::Multivector;
use crate::lie::{check_dim, AlgebraVector, DualPoint, LieAlgebra};
use crate::rational::{self, Rational};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_SPHERE_SAMPLES: usize = 10_000;

/// `A_t` as an affine function of `ξ`: `A_t(ξ) = −I − Σ_k ξ_k B_k`.
#[derive(Clone, Debug)]
pub struct AdmissibilityMatrix {
    n: usize,
    slopes: Vec<DMatrix<f64>>,
    exact_slopes: Vec<Vec<Vec<Rational>>>,
}

impl AdmissibilityMatrix {
    pub fn new(g: &LieAlgebra, t: &Multivector) -> Result<Self> {
        check_dim(g.dim(), t.dim())?;
        let n = g.dim();
        let tm = t.twist_components()?;
        let mut exact_slopes = vec![vec![vec![Rational::zero(); n]; n]; n];
        for (i, row) in tm.iter().enumerate() {
            for (j, tij) in row.iter().enumerate() {
                if tij.is_zero() {
                    continue;
                }
                for l in 0..n {
                    for (k, c) in g.basis_bracket(l, j) {
                        exact_slopes[*k][i][l] += tij * c;
                    }
                }
            }
        }
        let slopes = exact_slopes
            .iter()
            .map(|b| DMatrix::from_fn(n, n, |i, l| rational::to_f64(&b[i][l])))
            .collect();
        Ok(AdmissibilityMatrix {
            n,
            slopes,
            exact_slopes,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn at(&self, xi: &DualPoint) -> Result<DMatrix<f64>> {
        check_dim(self.n, xi.dim())?;
        let mut a = -DMatrix::<f64>::identity(self.n, self.n);
        for (b, x) in self.slopes.iter().zip(&xi.0) {
            if *x != 0.0 {
                a -= b * *x;
            }
        }
        Ok(a)
    }

    pub fn at_exact(&self, xi: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        check_dim(self.n, xi.len())?;
        let n = self.n;
        let mut a = vec![vec![Rational::zero(); n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = -Rational::one();
        }
        for (b, x) in self.exact_slopes.iter().zip(xi) {
            if x.is_zero() {
                continue;
            }
            for i in 0..n {
                for l in 0..n {
                    if !b[i][l].is_zero() {
                        a[i][l] -= &b[i][l] * x;
                    }
                }
            }
        }
        Ok(a)
    }

    /// `det A_t(ξ)` by LU with partial pivoting.
    pub fn raw_determinant(&self, xi: &DualPoint) -> Result<f64> {
        Ok(self.at(xi)?.lu().determinant())
    }

    /// `(−1)^n det A_t(ξ)`.
    pub fn f(&self, xi: &DualPoint) -> Result<f64> {
        let d = self.raw_determinant(xi)?;
        Ok(if self.n.is_multiple_of(2) { d } else { -d })
    }

    pub fn f_exact(&self, xi: &[Rational]) -> Result<Rational> {
        let d = exact_determinant(self.at_exact(xi)?);
        Ok(if self.n.is_multiple_of(2) { d } else { -d })
    }
}

pub fn build_a(g: &LieAlgebra, t: &Multivector, xi: &DualPoint) -> Result<DMatrix<f64>> {
    check_dim(g.dim(), xi.dim())?;
    AdmissibilityMatrix::new(g, t)?.at(xi)
}

pub fn build_a_exact(
    g: &LieAlgebra,
    t: &Multivector,
    xi: &[Rational],
) -> Result<Vec<Vec<Rational>>> {
    check_dim(g.dim(), xi.len())?;
    AdmissibilityMatrix::new(g, t)?.at_exact(xi)
}

/// `det A_t(ξ)`, constant term `(−1)^n`.
pub fn raw_determinant(g: &LieAlgebra, t: &Multivector, xi: &DualPoint) -> Result<f64> {
    check_dim(g.dim(), xi.dim())?;
    AdmissibilityMatrix::new(g, t)?.raw_determinant(xi)
}

/// `(−1)^n det A_t(ξ)`, equal to `1` at `ξ = 0`.
pub fn f_t(g: &LieAlgebra, t: &Multivector, xi: &DualPoint) -> Result<f64> {
    check_dim(g.dim(), xi.dim())?;
    AdmissibilityMatrix::new(g, t)?.f(xi)
}

pub fn f_t_exact(g: &LieAlgebra, t: &Multivector, xi: &[Rational]) -> Result<Rational> {
    check_dim(g.dim(), xi.len())?;
    AdmissibilityMatrix::new(g, t)?.f_exact(xi)
}

/// Gaussian elimination over the rationals.
pub fn exact_determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// `count` Fibonacci-lattice points on the sphere of the given radius in
/// `R³`, followed by the six axis points `±r e_i`.
pub fn fibonacci_sphere(count: usize, radius: f64) -> Vec<DualPoint> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut pts = Vec::with_capacity(count + 6);
    for i in 0..count {
        let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
        let rho = (1.0 - z * z).max(0.0).sqrt();
        let phi = golden * i as f64;
        pts.push(DualPoint(vec![
            radius * rho * phi.cos(),
            radius * rho * phi.sin(),
            radius * z,
        ]));
    }
    for axis in 0..3 {
        for s in [1.0, -1.0] {
            let mut v = vec![0.0; 3];
            v[axis] = s * radius;
            pts.push(DualPoint(v));
        }
    }
    pts
}

#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    pub twist: Multivector,
    pub samples: Vec<DualPoint>,
    pub values: Vec<f64>,
    pub min_abs: f64,
    pub argmin: usize,
    pub verdict: bool,
    pub tolerance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportSummary {
    pub twist: crate::exterior::MultivectorJson,
    pub n_samples: usize,
    pub min_abs: f64,
    pub argmin: Vec<f64>,
    pub verdict: bool,
    pub tolerance: f64,
}

impl AdmissibilityReport {
    pub fn argmin_point(&self) -> &DualPoint {
        &self.samples[self.argmin]
    }

    pub fn summary(&self) -> ReportSummary {
        ReportSummary {
            twist: self.twist.to_json(),
            n_samples: self.samples.len(),
            min_abs: self.min_abs,
            argmin: self.argmin_point().0.clone(),
            verdict: self.verdict,
            tolerance: self.tolerance,
        }
    }
}

fn check_tolerance(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

pub fn admissible_on(
    g: &LieAlgebra,
    t: &Multivector,
    samples: Vec<DualPoint>,
    tol: f64,
) -> Result<AdmissibilityReport> {
    admissible_on_with(Execution::default(), g, t, samples, tol)
}

/// Evaluates `f_t` on every sample; the verdict is `min |f_t| > tol`.
pub fn admissible_on_with(
    exec: Execution,
    g: &LieAlgebra,
    t: &Multivector,
    samples: Vec<DualPoint>,
    tol: f64,
) -> Result<AdmissibilityReport> {
    check_tolerance(tol)?;
    if samples.is_empty() {
        return Err(Error::Empty("sample set"));
    }
    let a = AdmissibilityMatrix::new(g, t)?;
    let values = exec.try_map(&samples, |xi| a.f(xi))?;
    let (argmin, min_abs) =
        values
            .iter()
            .map(|v| v.abs())
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |best, (i, v)| if v < best.1 { (i, v) } else { best },
            );
    Ok(AdmissibilityReport {
        twist: t.clone(),
        samples,
        values,
        min_abs,
        argmin,
        verdict: min_abs > tol,
        tolerance: tol,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineCheck {
    /// `1 + ⟨ξ, aX + bY⟩`.
    pub value: f64,
    pub regular: bool,
}

/// Regularity test for `t = ½ X ∧ Y` with `[X, Y] = aX + bY`.
///
/// The hypothesis is checked exactly. `regular` is `|value| > ε` with
/// `ε = 1e−12 · (1 + Σ_k |η_k ξ_k|)`.
pub fn affine_case_check(
    g: &LieAlgebra,
    x: &AlgebraVector,
    y: &AlgebraVector,
    a: &Rational,
    b: &Rational,
    xi: &DualPoint,
) -> Result<AffineCheck> {
    check_dim(g.dim(), xi.dim())?;
    let bracket = g.bracket(x, y)?;
    let eta = x.scale(a).add(&y.scale(b))?;
    if bracket != eta {
        return Err(Error::Hypothesis(format!(
            "[X, Y] = {bracket} differs from aX + bY = {eta}"
        )));
    }
    let terms: Vec<f64> = eta.to_f64().iter().zip(&xi.0).map(|(e, x)| e * x).collect();
    let value = 1.0 + terms.iter().sum::<f64>();
    let eps = 1e-12 * (1.0 + terms.iter().map(|v| v.abs()).sum::<f64>());
    Ok(AffineCheck {
        value,
        regular: value.abs() > eps,
    })
}

/// `(1 + ⟨ξ, [X, Y]⟩)²`, the value of [`f_t`] for `t = ½ X ∧ Y` whenever
/// `[t, t] = 0`.
pub fn decomposable_closed_form(
    g: &LieAlgebra,
    x: &AlgebraVector,
    y: &AlgebraVector,
    xi: &DualPoint,
) -> Result<f64> {
    let v = 1.0 + g.bracket(x, y)?.pair(xi)?;
    Ok(v * v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub scale: f64,
    pub min_abs: f64,
    pub argmin: Vec<f64>,
}

/// `min |f_{s·t}|` over the samples for each scale `s`.
pub fn scaling_sweep(
    exec: Execution,
    g: &LieAlgebra,
    t: &Multivector,
    samples: &[DualPoint],
    scales: &[Rational],
) -> Result<Vec<SweepPoint>> {
    if samples.is_empty() {
        return Err(Error::Empty("sample set"));
    }
    exec.try_map(scales, |s| {
        let report = admissible_on_with(
            Execution::Sequential,
            g,
            &t.scale(s),
            samples.to_vec(),
            DEFAULT_TOLERANCE,
        )?;
        Ok(SweepPoint {
            scale: rational::to_f64(s),
            min_abs: report.min_abs,
            argmin: report.argmin_point().0.clone(),
        })
    })
}
