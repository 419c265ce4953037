//! Chart geometry on `U_1 = {z_1 ≠ 0} ⊂ CP^n`.
//!
//! A point is `w = (z_2/z_1, …, z_{n+1}/z_1)` stored as real coordinates
//! `(x_1, y_1, …, x_n, y_n)`. A two-form is the antisymmetric matrix `Ω` with
//! `ω = ½ Ω_ab dx^a ∧ dx^b`; a bivector is `Π` with `π = ½ Π^{ab} ∂_a ∧ ∂_b`.
//! Forms and bivectors are exchanged by `Π = Ω⁻¹`, which with the fundamental
//! fields below makes `ι_{X_M} ω = dμ^X` for the moment map [`moment_map_su`].

use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::exterior::Multivector;
use crate::lie::{check_dim, DualPoint, SuBasis};
use crate::rational;

/// Relative threshold below which a coordinate matrix counts as singular.
pub const DEGENERACY_THRESHOLD: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint(Vec<f64>);

impl ChartPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || !coords.len().is_multiple_of(2) {
            return Err(Error::InvalidPoint(format!(
                "expected 2n coordinates, got {}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint(format!(
                "non-finite coordinate in {coords:?}"
            )));
        }
        Ok(ChartPoint(coords))
    }

    pub fn origin(n: usize) -> Self {
        ChartPoint(vec![0.0; 2 * n])
    }

    pub fn from_complex(w: &[Complex64]) -> Result<Self> {
        Self::new(w.iter().flat_map(|c| [c.re, c.im]).collect())
    }

    /// Complex dimension `n`.
    pub fn n(&self) -> usize {
        self.0.len() / 2
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn w(&self) -> Vec<Complex64> {
        self.0
            .chunks(2)
            .map(|c| Complex64::new(c[0], c[1]))
            .collect()
    }

    /// Homogeneous representative `(1, w)`.
    pub fn homogeneous(&self) -> Vec<Complex64> {
        let mut z = vec![Complex64::new(1.0, 0.0)];
        z.extend(self.w());
        z
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    /// `p + h e_a`.
    pub fn shifted(&self, a: usize, h: f64) -> Self {
        let mut c = self.0.clone();
        c[a] += h;
        ChartPoint(c)
    }
}

impl fmt::Display for ChartPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn check_point(n: usize, p: &ChartPoint) -> Result<()> {
    check_dim(2 * n, p.0.len())
}

#[derive(Clone, Copy, Debug)]
pub enum FormKind {}
#[derive(Clone, Copy, Debug)]
pub enum BivectorKind {}

type Evaluator = Arc<dyn Fn(&ChartPoint) -> Result<DMatrix<f64>> + Send + Sync>;

/// Pointwise antisymmetric matrix field on `U_1 ⊂ CP^n`.
pub struct ChartField<K> {
    n: usize,
    eval: Evaluator,
    kind: PhantomData<fn() -> K>,
}

pub type TwoFormField = ChartField<FormKind>;
pub type BivectorField = ChartField<BivectorKind>;

impl<K> Clone for ChartField<K> {
    fn clone(&self) -> Self {
        ChartField {
            n: self.n,
            eval: Arc::clone(&self.eval),
            kind: PhantomData,
        }
    }
}

impl<K> fmt::Debug for ChartField<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChartField {{ n: {} }}", self.n)
    }
}

impl<K> ChartField<K> {
    pub fn new<F>(n: usize, f: F) -> Self
    where
        F: Fn(&ChartPoint) -> Result<DMatrix<f64>> + Send + Sync + 'static,
    {
        ChartField {
            n,
            eval: Arc::new(f),
            kind: PhantomData,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, p: &ChartPoint) -> Result<DMatrix<f64>> {
        check_point(self.n, p)?;
        (self.eval)(p)
    }
}

/// A Lie group acting on `CP^n`: `SU(n+1)` by fractional-linear maps on
/// `U_1`, or `T^n` rotating each `w_i`.
#[derive(Clone, Debug)]
pub enum Action {
    Unitary(Arc<SuBasis>),
    Torus(usize),
}

impl Action {
    pub fn unitary(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension {
                what: "CP^n",
                value: 0,
            });
        }
        Ok(Action::Unitary(Arc::new(SuBasis::new(n + 1)?)))
    }

    pub fn torus(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension {
                what: "CP^n",
                value: 0,
            });
        }
        Ok(Action::Torus(n))
    }

    /// Complex dimension of the manifold.
    pub fn n(&self) -> usize {
        match self {
            Action::Unitary(b) => b.n - 1,
            Action::Torus(n) => *n,
        }
    }

    /// Dimension of the acting Lie algebra.
    pub fn algebra_dim(&self) -> usize {
        match self {
            Action::Unitary(b) => b.dim(),
            Action::Torus(n) => *n,
        }
    }

    /// `(e_a)_M` at `p` for every basis index `a`.
    pub fn basis_fields(&self, p: &ChartPoint) -> Result<Vec<DVector<f64>>> {
        check_point(self.n(), p)?;
        Ok((0..self.algebra_dim())
            .map(|a| {
                let mut x = vec![0.0; self.algebra_dim()];
                x[a] = 1.0;
                self.field_unchecked(&x, p)
            })
            .collect())
    }

    /// `X_M` at `p` for `X = Σ x_a e_a`.
    pub fn fundamental_vector_field(&self, x: &[f64], p: &ChartPoint) -> Result<DVector<f64>> {
        check_dim(self.algebra_dim(), x.len())?;
        check_point(self.n(), p)?;
        Ok(self.field_unchecked(x, p))
    }

    fn field_unchecked(&self, x: &[f64], p: &ChartPoint) -> DVector<f64> {
        let n = self.n();
        let mut out = DVector::zeros(2 * n);
        match self {
            Action::Unitary(basis) => {
                let m = su_matrix(basis, x);
                let z = DVector::from_vec(p.homogeneous());
                let xz = &m * &z;
                for i in 0..n {
                    let dw = xz[i + 1] - z[i + 1] * xz[0];
                    out[2 * i] = dw.re;
                    out[2 * i + 1] = dw.im;
                }
            }
            Action::Torus(_) => {
                let c = p.coords();
                for i in 0..n {
                    out[2 * i] = -x[i] * c[2 * i + 1];
                    out[2 * i + 1] = x[i] * c[2 * i];
                }
            }
        }
        out
    }

    /// `t_M = Σ_{a<b} t_ab (v_a v_bᵀ − v_b v_aᵀ)` with `v = (e_·)_M`.
    pub fn twist_field(&self, t: &Multivector, p: &ChartPoint) -> Result<DMatrix<f64>> {
        check_dim(self.algebra_dim(), t.dim())?;
        if t.grade() != 2 {
            return Err(Error::WrongGrade {
                expected: 2,
                found: t.grade(),
            });
        }
        let v = self.basis_fields(p)?;
        let m = 2 * self.n();
        let mut out = DMatrix::zeros(m, m);
        for (k, c) in t.terms() {
            let c = rational::to_f64(c);
            let (va, vb) = (&v[k[0]], &v[k[1]]);
            out += (va * vb.transpose() - vb * va.transpose()) * c;
        }
        Ok(out)
    }

    pub fn twist_bivector(&self, t: &Multivector) -> Result<BivectorField> {
        check_dim(self.algebra_dim(), t.dim())?;
        let action = self.clone();
        let t = t.clone();
        Ok(BivectorField::new(self.n(), move |p| {
            action.twist_field(&t, p)
        }))
    }

    /// Moment map of the action, in the reference normalization for each group.
    pub fn moment_map(&self, p: &ChartPoint) -> Result<DualPoint> {
        match self {
            Action::Unitary(basis) => {
                check_point(basis.n - 1, p)?;
                Ok(moment_su(basis, p))
            }
            Action::Torus(n) => moment_map_torus(p, *n),
        }
    }
}

/// Complex matrix `Σ x_a e_a` in the defining representation.
pub fn su_matrix(basis: &SuBasis, x: &[f64]) -> DMatrix<Complex64> {
    let n = basis.n;
    let mut m = DMatrix::zeros(n, n);
    for (coef, e) in x.iter().zip(&basis.matrices) {
        if *coef == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                let v = e[i * n + j];
                if v.re != 0 || v.im != 0 {
                    m[(i, j)] += Complex64::new(v.re as f64, v.im as f64) * *coef;
                }
            }
        }
    }
    m
}

/// Coordinates of a traceless anti-Hermitian matrix in the basis.
pub fn su_coefficients(basis: &SuBasis, m: &DMatrix<Complex64>) -> Vec<f64> {
    let n = basis.n;
    let mut x = Vec::with_capacity(basis.dim());
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    x.extend(pairs.iter().map(|&(i, j)| m[(i, j)].re));
    x.extend(pairs.iter().map(|&(i, j)| m[(i, j)].im));
    x.extend((0..n - 1).map(|k| m[(k, k)].im));
    x
}

/// `g · p` for `g ∈ SU(n+1)`; fails when the image leaves `U_1`.
pub fn act(g: &DMatrix<Complex64>, p: &ChartPoint) -> Result<ChartPoint> {
    check_dim(p.n() + 1, g.nrows())?;
    let z = g * DVector::from_vec(p.homogeneous());
    if z[0].norm() < 1e-300 {
        return Err(Error::InvalidPoint(format!(
            "g·{p} is not in the chart U_1"
        )));
    }
    ChartPoint::from_complex(&z.iter().skip(1).map(|c| c / z[0]).collect::<Vec<_>>())
}

/// `Ad*_g ξ`, i.e. `e_a ↦ ξ(g⁻¹ e_a g)`.
pub fn coadjoint(basis: &SuBasis, g: &DMatrix<Complex64>, xi: &DualPoint) -> Result<DualPoint> {
    check_dim(basis.dim(), xi.dim())?;
    let g_inv = g.adjoint();
    let mut out = Vec::with_capacity(basis.dim());
    for a in 0..basis.dim() {
        let mut e = vec![0.0; basis.dim()];
        e[a] = 1.0;
        let conj = &g_inv * su_matrix(basis, &e) * g;
        let coeffs = su_coefficients(basis, &conj);
        out.push(coeffs.iter().zip(&xi.0).map(|(c, x)| c * x).sum());
    }
    Ok(DualPoint(out))
}

/// `exp(Σ x_a e_a) ∈ SU(n+1)`.
pub fn group_element(basis: &SuBasis, x: &[f64]) -> Result<DMatrix<Complex64>> {
    check_dim(basis.dim(), x.len())?;
    Ok(su_matrix(basis, x).exp())
}

/// Coordinate matrix of `ω_FS = (i/2) ∂∂̄ log(1 + |w|²)`.
pub fn fubini_study(p: &ChartPoint) -> DMatrix<f64> {
    let n = p.n();
    let w = p.w();
    let s = 1.0 + p.norm_sq();
    let i_half = Complex64::new(0.0, 0.5);
    let i_unit = Complex64::new(0.0, 1.0);
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        for k in 0..n {
            let delta = if j == k { 1.0 / s } else { 0.0 };
            let h = Complex64::new(delta, 0.0) - w[j].conj() * w[k] / (s * s);
            let c = i_half * h;
            // dw_j ∧ dw̄_k = dx_j∧dx_k − i dx_j∧dy_k + i dy_j∧dx_k + dy_j∧dy_k
            let blades = [
                (2 * j, 2 * k, c),
                (2 * j, 2 * k + 1, -c * i_unit),
                (2 * j + 1, 2 * k, c * i_unit),
                (2 * j + 1, 2 * k + 1, c),
            ];
            for (u, v, coef) in blades {
                out[(u, v)] += coef.re;
                out[(v, u)] -= coef.re;
            }
        }
    }
    out
}

pub fn fubini_study_field(n: usize) -> TwoFormField {
    TwoFormField::new(n, |p| Ok(fubini_study(p)))
}

fn invert_checked(m: &DMatrix<f64>, p: &ChartPoint) -> Result<DMatrix<f64>> {
    let dim = m.nrows() as i32;
    let scale = m.amax();
    let lu = m.clone().lu();
    let abs_det = lu.determinant().abs();
    if !(abs_det > DEGENERACY_THRESHOLD * scale.powi(dim)) {
        return Err(Error::Degenerate {
            point: p.coords().to_vec(),
            abs_det,
        });
    }
    lu.try_inverse().ok_or_else(|| Error::Degenerate {
        point: p.coords().to_vec(),
        abs_det,
    })
}

/// Bivector `Π = Ω⁻¹` of a nondegenerate form.
pub fn invert_form(field: &TwoFormField) -> BivectorField {
    let inner = field.clone();
    BivectorField::new(field.n(), move |p| invert_checked(&inner.eval(p)?, p))
}

/// Form `Ω = Π⁻¹` of a nondegenerate bivector.
pub fn invert_bivector(field: &BivectorField) -> TwoFormField {
    let inner = field.clone();
    TwoFormField::new(field.n(), move |p| invert_checked(&inner.eval(p)?, p))
}

/// `π − t_M`.
pub fn deform(pi: &BivectorField, action: &Action, t: &Multivector) -> Result<BivectorField> {
    check_dim(action.n(), pi.n())?;
    let tm = action.twist_bivector(t)?;
    let pi = pi.clone();
    Ok(BivectorField::new(pi.n(), move |p| {
        Ok(pi.eval(p)? - tm.eval(p)?)
    }))
}

/// `ω^t = (π_FS − t_M)⁻¹`.
pub fn deformed_form(action: &Action, t: &Multivector) -> Result<TwoFormField> {
    let pi = invert_form(&fubini_study_field(action.n()));
    Ok(invert_bivector(&deform(&pi, action, t)?))
}

fn moment_su(basis: &SuBasis, p: &ChartPoint) -> DualPoint {
    let z = DVector::from_vec(p.homogeneous());
    let norm_sq = 1.0 + p.norm_sq();
    let mut out = Vec::with_capacity(basis.dim());
    for a in 0..basis.dim() {
        let mut e = vec![0.0; basis.dim()];
        e[a] = 1.0;
        let ez = su_matrix(basis, &e) * &z;
        let q: Complex64 = z.iter().zip(ez.iter()).map(|(zi, v)| zi.conj() * v).sum();
        out.push(0.5 * q.im / norm_sq);
    }
    DualPoint(out)
}

/// `μ_a(p) = ½ Im(z^H e_a z)/|z|²` on `CP^n` with `z = (1, w)`.
pub fn moment_map_su(p: &ChartPoint, n: usize) -> Result<DualPoint> {
    check_point(n, p)?;
    Ok(moment_su(&SuBasis::new(n + 1)?, p))
}

/// `μ_i(p) = −½ |w_i|² / (1 + |w|²)`.
pub fn moment_map_torus(p: &ChartPoint, n: usize) -> Result<DualPoint> {
    check_point(n, p)?;
    let s = 1.0 + p.norm_sq();
    Ok(DualPoint(
        p.coords()
            .chunks(2)
            .map(|c| -0.5 * (c[0] * c[0] + c[1] * c[1]) / s)
            .collect(),
    ))
}

/// `max_{a<b<c} |∂_a Ω_bc + ∂_b Ω_ca + ∂_c Ω_ab|` by central differences.
pub fn closedness_residual(field: &TwoFormField, p: &ChartPoint, h: f64) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidTolerance(h));
    }
    check_point(field.n(), p)?;
    let m = 2 * field.n();
    let mut deriv = Vec::with_capacity(m);
    for a in 0..m {
        let plus = field.eval(&p.shifted(a, h))?;
        let minus = field.eval(&p.shifted(a, -h))?;
        deriv.push((plus - minus) / (2.0 * h));
    }
    let mut worst = 0.0f64;
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let r = deriv[a][(b, c)] + deriv[b][(c, a)] + deriv[c][(a, b)];
                worst = worst.max(r.abs());
            }
        }
    }
    Ok(worst)
}

/// Uniform grid on `[−half_width, half_width]^{2n}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub n: usize,
    pub half_width: f64,
    pub points_per_axis: usize,
}

impl GridSpec {
    pub fn points(&self) -> Result<Vec<ChartPoint>> {
        if self.n == 0 || self.points_per_axis == 0 {
            return Err(Error::Empty("grid"));
        }
        let k = self.points_per_axis;
        let axis: Vec<f64> = if k == 1 {
            vec![0.0]
        } else {
            (0..k)
                .map(|i| -self.half_width + 2.0 * self.half_width * i as f64 / (k - 1) as f64)
                .collect()
        };
        let dims = 2 * self.n;
        let total = k.pow(dims as u32);
        let mut out = Vec::with_capacity(total);
        for mut idx in 0..total {
            let mut c = Vec::with_capacity(dims);
            for _ in 0..dims {
                c.push(axis[idx % k]);
                idx /= k;
            }
            out.push(ChartPoint(c));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub n_points: usize,
    /// `min |det|^{1/2}` over the grid.
    pub min_value: f64,
    pub argmin: Vec<f64>,
    pub tolerance: f64,
    pub flagged: Vec<Vec<f64>>,
    pub nondegenerate: bool,
}

/// `|det|^{1/2}` of the field matrix over a grid; points where evaluation
/// itself hits a degeneracy count as zero.
pub fn nondegeneracy_scan<K>(
    exec: Execution,
    field: &ChartField<K>,
    grid: &GridSpec,
    tol: f64,
) -> Result<ScanReport> {
    check_dim(field.n(), grid.n)?;
    let points = grid.points()?;
    let values = exec.try_map(&points, |p| match field.eval(p) {
        Ok(m) => Ok(m.lu().determinant().abs().sqrt()),
        Err(Error::Degenerate { .. }) => Ok(0.0),
        Err(e) => Err(e),
    })?;
    let (argmin, min_value) =
        values
            .iter()
            .copied()
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |best, (i, v)| if v < best.1 { (i, v) } else { best },
            );
    let flagged: Vec<Vec<f64>> = points
        .iter()
        .zip(&values)
        .filter(|(_, v)| **v <= tol)
        .map(|(p, _)| p.coords().to_vec())
        .collect();
    Ok(ScanReport {
        n_points: points.len(),
        min_value,
        argmin: points[argmin].coords().to_vec(),
        tolerance: tol,
        nondegenerate: flagged.is_empty(),
        flagged,
    })
}

/// Column names for [`field_rows`]: coordinates, then upper-triangle entries.
pub fn field_header(n: usize) -> Vec<String> {
    let mut h: Vec<String> = (1..=n)
        .flat_map(|i| [format!("x{i}"), format!("y{i}")])
        .collect();
    let names = &h.clone();
    for a in 0..2 * n {
        for b in a + 1..2 * n {
            h.push(format!("m_{}_{}", names[a], names[b]));
        }
    }
    h
}

pub fn field_rows<K>(
    exec: Execution,
    field: &ChartField<K>,
    points: &[ChartPoint],
) -> Result<Vec<Vec<f64>>> {
    exec.try_map(points, |p| {
        let m = field.eval(p)?;
        let mut row = p.coords().to_vec();
        for a in 0..m.nrows() {
            for b in a + 1..m.ncols() {
                row.push(m[(a, b)]);
            }
        }
        Ok(row)
    })
}
