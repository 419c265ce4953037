//! Finite-dimensional real Lie algebras given by exact structure constants.
//!
//! Indices are zero-based in the API. Reports and JSON use one-based indices
//! so they read like `c_{ij}^k`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// `[e_i, e_j] = Σ_k c_{ij}^k e_k` stored as one sparse row per ordered pair.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    table: Vec<Vec<Vec<(usize, Rational)>>>,
}

/// Element `X = X^i e_i` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraVector(Vec<Rational>);

/// Point `ξ = ξ_i ε^i` of the dual space, in the dual basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualPoint(pub Vec<f64>);

impl AlgebraVector {
    pub fn zero(dim: usize) -> Self {
        AlgebraVector(vec![Rational::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = rational::int(1);
        v
    }

    pub fn new(coeffs: Vec<Rational>) -> Self {
        AlgebraVector(coeffs)
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        AlgebraVector(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational::to_f64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        AlgebraVector(self.0.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(AlgebraVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(AlgebraVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// `Σ_k X^k ξ_k`.
    pub fn pair(&self, xi: &DualPoint) -> Result<f64> {
        check_dim(self.dim(), xi.0.len())?;
        Ok(self
            .0
            .iter()
            .zip(&xi.0)
            .map(|(c, x)| rational::to_f64(c) * x)
            .sum())
    }
}

impl DualPoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl LieAlgebra {
    /// Builds an algebra from arbitrary entries `((i, j, k), c_{ij}^k)`.
    ///
    /// No symmetry is imposed; use [`LieAlgebra::validate`] to check the
    /// axioms. Repeated entries are summed.
    pub fn from_constants<I>(labels: Vec<String>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize, usize), Rational)>,
    {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidDimension {
                what: "Lie algebra",
                value: 0,
            });
        }
        let mut dense: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for ((i, j, k), c) in entries {
            for idx in [i, j, k] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, dim: n });
                }
            }
            *dense.entry((i, j, k)).or_insert_with(Rational::zero) += c;
        }
        let mut table = vec![vec![Vec::new(); n]; n];
        for ((i, j, k), c) in dense {
            if !c.is_zero() {
                table[i][j].push((k, c));
            }
        }
        Ok(LieAlgebra { labels, table })
    }

    /// The abelian algebra `R^n`, basis labelled `X1..Xn` as for the torus.
    pub fn abelian(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension {
                what: "abelian algebra",
                value: n,
            });
        }
        let labels = (1..=n).map(|i| format!("X{i}")).collect();
        Self::from_constants(labels, std::iter::empty())
    }

    /// `su(n)` in the basis `X_ij, Y_ij (i<j), Z_k (k<n)`; structure
    /// constants come from commutators of the basis matrices.
    pub fn su(n: usize) -> Result<Self> {
        let basis = SuBasis::new(n)?;
        let dim = basis.dim();
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue;
                }
                let c = basis.commutator(i, j);
                for (k, v) in basis.expand(&c) {
                    entries.push(((i, j, k), rational::int(v)));
                }
            }
        }
        Self::from_constants(basis.labels.clone(), entries)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sparse expansion of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i][j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.table[i][j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().all(Vec::is_empty)
    }

    /// `([X,Y])^k = Σ_{i,j} X^i Y^j c_{ij}^k`.
    pub fn bracket(&self, x: &AlgebraVector, y: &AlgebraVector) -> Result<AlgebraVector> {
        check_dim(self.dim(), x.dim())?;
        check_dim(self.dim(), y.dim())?;
        let mut out = AlgebraVector::zero(self.dim());
        for (i, xi) in x.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let w = xi * yj;
                for (k, c) in &self.table[i][j] {
                    out.0[*k] += &w * c;
                }
            }
        }
        Ok(out)
    }

    /// `[X, e_j]` for every basis index `j`, i.e. the matrix of `ad_X`.
    pub fn ad(&self, x: &AlgebraVector) -> Result<Vec<Vec<(usize, Rational)>>> {
        check_dim(self.dim(), x.dim())?;
        let n = self.dim();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (i, xi) in x.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (k, c) in &self.table[i][j] {
                    *acc.entry(*k).or_insert_with(Rational::zero) += xi * c;
                }
            }
            cols.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
        Ok(cols)
    }

    /// Exact antisymmetry and Jacobi residuals.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut report = ValidationReport::default();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r =
                        (self.structure_constant(i, j, k) + self.structure_constant(j, i, k)).abs();
                    if r > report.max_antisymmetry {
                        report.max_antisymmetry = r;
                        if report.antisymmetry_violation.is_none() {
                            report.antisymmetry_violation = Some([i + 1, j + 1, k + 1]);
                        }
                    }
                }
            }
        }
        let basis: Vec<AlgebraVector> = (0..n).map(|i| AlgebraVector::basis(n, i)).collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let cyclic = [(i, j, k), (j, k, i), (k, i, j)];
                    let mut sum = AlgebraVector::zero(n);
                    for (a, b, c) in cyclic {
                        let inner = self.bracket(&basis[a], &basis[b]).expect("dims match");
                        let outer = self.bracket(&inner, &basis[c]).expect("dims match");
                        sum = sum.add(&outer).expect("dims match");
                    }
                    for (l, r) in sum.0.iter().enumerate() {
                        let r = r.abs();
                        if r > report.max_jacobi {
                            report.max_jacobi = r;
                            if report.jacobi_violation.is_none() {
                                report.jacobi_violation = Some([i + 1, j + 1, k + 1, l + 1]);
                            }
                        }
                    }
                }
            }
        }
        report
    }

    pub fn to_json(&self) -> AlgebraJson {
        let mut c = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                for (k, v) in &self.table[i][j] {
                    c.push(ConstantEntry(i + 1, j + 1, k + 1, rational::format(v)));
                }
            }
        }
        AlgebraJson {
            dim: self.dim(),
            labels: self.labels.clone(),
            c,
        }
    }

    /// Rebuilds an algebra from its `i<j` entries, filling in `c_{ji}^k = −c_{ij}^k`.
    pub fn from_json(json: &AlgebraJson) -> Result<Self> {
        if json.labels.len() != json.dim {
            return Err(Error::DimensionMismatch {
                expected: json.dim,
                found: json.labels.len(),
            });
        }
        let mut entries = Vec::new();
        for ConstantEntry(i, j, k, v) in &json.c {
            for &idx in [i, j, k] {
                if idx == 0 || idx > json.dim {
                    return Err(Error::IndexOutOfRange {
                        index: idx,
                        dim: json.dim,
                    });
                }
            }
            if i >= j {
                return Err(Error::Parse(format!(
                    "structure constant ({i},{j},{k}) must have i < j"
                )));
            }
            let v = rational::parse(v)?;
            entries.push(((j - 1, i - 1, k - 1), -v.clone()));
            entries.push(((i - 1, j - 1, k - 1), v));
        }
        Self::from_constants(json.labels.clone(), entries)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub max_antisymmetry: Rational,
    pub max_jacobi: Rational,
    /// First `(i, j, k)` (one-based) where `c_{ij}^k + c_{ji}^k ≠ 0`.
    pub antisymmetry_violation: Option<[usize; 3]>,
    /// First `(i, j, k, l)` (one-based) with a nonzero Jacobi component.
    pub jacobi_violation: Option<[usize; 4]>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.max_antisymmetry.is_zero() && self.max_jacobi.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantEntry(pub usize, pub usize, pub usize, pub String);

/// `{ "dim": n, "labels": [...], "c": [[i, j, k, "p/q"], ...] }`, one-based, `i<j` only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub labels: Vec<String>,
    pub c: Vec<ConstantEntry>,
}

impl fmt::Display for AlgebraVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational::format).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Integer complex matrix, row-major.
pub type IntMatrix = Vec<Complex<i64>>;

/// The basis matrices of `su(n)`:
///
/// * `X_ij`: `(i,j)` entry 1, `(j,i)` entry −1;
/// * `Y_ij`: `(i,j)` and `(j,i)` entries `i`;
/// * `Z_k`: `(k,k)` entry `i`, `(n,n)` entry `−i`.
///
/// Ordered as all `X_ij` (lexicographic `i<j`), all `Y_ij`, then `Z_1..Z_{n−1}`.
#[derive(Clone, Debug)]
pub struct SuBasis {
    pub n: usize,
    pub labels: Vec<String>,
    pub matrices: Vec<IntMatrix>,
}

impl SuBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension {
                what: "su(n)",
                value: n,
            });
        }
        let zero = Complex::new(0, 0);
        let one = Complex::new(1, 0);
        let i_unit = Complex::new(0, 1);
        let mut labels = Vec::new();
        let mut matrices = Vec::new();
        for (i, j) in upper_pairs(n) {
            let mut m = vec![zero; n * n];
            m[i * n + j] = one;
            m[j * n + i] = -one;
            labels.push(format!("X{}", pair_label(n, i, j)));
            matrices.push(m);
        }
        for (i, j) in upper_pairs(n) {
            let mut m = vec![zero; n * n];
            m[i * n + j] = i_unit;
            m[j * n + i] = i_unit;
            labels.push(format!("Y{}", pair_label(n, i, j)));
            matrices.push(m);
        }
        for k in 0..n - 1 {
            let mut m = vec![zero; n * n];
            m[k * n + k] = i_unit;
            m[(n - 1) * n + (n - 1)] = -i_unit;
            labels.push(format!("Z{}", k + 1));
            matrices.push(m);
        }
        Ok(SuBasis {
            n,
            labels,
            matrices,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrices.len()
    }

    /// Index of `X_ij` for one-based `i < j`.
    pub fn x_index(&self, i: usize, j: usize) -> usize {
        pair_index(self.n, i - 1, j - 1)
    }

    pub fn y_index(&self, i: usize, j: usize) -> usize {
        self.n * (self.n - 1) / 2 + pair_index(self.n, i - 1, j - 1)
    }

    /// Index of `Z_k` for one-based `k < n`.
    pub fn z_index(&self, k: usize) -> usize {
        self.n * (self.n - 1) + k - 1
    }

    pub fn commutator(&self, a: usize, b: usize) -> IntMatrix {
        let (x, y) = (&self.matrices[a], &self.matrices[b]);
        let xy = matmul(self.n, x, y);
        let yx = matmul(self.n, y, x);
        xy.iter().zip(&yx).map(|(p, q)| p - q).collect()
    }

    /// Coefficients of a traceless anti-Hermitian integer matrix in the basis.
    pub fn expand(&self, m: &IntMatrix) -> Vec<(usize, i64)> {
        let n = self.n;
        debug_assert!(is_su(n, m), "matrix is not in su({n})");
        let mut out = Vec::new();
        for (idx, (i, j)) in upper_pairs(n).enumerate() {
            let e = m[i * n + j];
            if e.re != 0 {
                out.push((idx, e.re));
            }
            if e.im != 0 {
                out.push((n * (n - 1) / 2 + idx, e.im));
            }
        }
        for k in 0..n - 1 {
            let e = m[k * n + k];
            if e.im != 0 {
                out.push((n * (n - 1) + k, e.im));
            }
        }
        out
    }
}

fn upper_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // rows 0..i contribute (n-1) + (n-2) + ... + (n-i) pairs
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn pair_label(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("{}{}", i + 1, j + 1)
    } else {
        format!("{}_{}", i + 1, j + 1)
    }
}

fn matmul(n: usize, a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = vec![Complex::new(0, 0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == Complex::new(0, 0) {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

fn is_su(n: usize, m: &IntMatrix) -> bool {
    let trace: Complex<i64> = (0..n).map(|i| m[i * n + i]).sum();
    let anti_hermitian = (0..n).all(|i| (0..n).all(|j| m[i * n + j] == -m[j * n + i].conj()));
    trace == Complex::new(0, 0) && anti_hermitian
}
