//! The canonical r-matrix of `su(n)` and its Schouten square modulo
//! `h = s(u(r) ⊕ u(n−r))`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::exterior::{is_r_matrix, quotient_project, Multivector, SubalgebraBasisSet};
use crate::lie::{AlgebraVector, LieAlgebra, SuBasis};
use crate::rational::{self, Rational};

/// `t = (1/(4n)) Σ_{i<j} X_ij ∧ Y_ij`.
pub fn canonical_r_matrix(n: usize) -> Result<Multivector> {
    let basis = SuBasis::new(n)?;
    let c = rational::ratio(1, 4 * n as i64);
    let mut terms = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            terms.push((vec![basis.x_index(i, j), basis.y_index(i, j)], c.clone()));
        }
    }
    Multivector::from_terms(basis.dim(), 2, terms)
}

/// Basis indices of `s(u(r) ⊕ u(n−r))` inside `su(n)`.
pub fn block_indices(basis: &SuBasis, r: usize) -> Vec<usize> {
    let n = basis.n;
    let same_block = |i: usize, j: usize| j <= r || i > r;
    let mut idx = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if same_block(i, j) {
                idx.push(basis.x_index(i, j));
                idx.push(basis.y_index(i, j));
            }
        }
    }
    idx.extend((1..n).map(|k| basis.z_index(k)));
    idx
}

#[derive(Clone, Debug)]
pub struct GrassmannInstance {
    pub n: usize,
    pub r: usize,
    pub basis: SuBasis,
    pub algebra: LieAlgebra,
    pub h: SubalgebraBasisSet,
    pub t: Multivector,
}

impl GrassmannInstance {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r == 0 || r >= n {
            return Err(Error::InvalidDimension {
                what: "Grassmannian rank r (need 1 <= r < n)",
                value: r,
            });
        }
        let basis = SuBasis::new(n)?;
        let algebra = LieAlgebra::su(n)?;
        let h = SubalgebraBasisSet::new(&algebra, block_indices(&basis, r))?;
        let t = canonical_r_matrix(n)?;
        Ok(GrassmannInstance {
            n,
            r,
            basis,
            algebra,
            h,
            t,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrassmannReport {
    pub n: usize,
    pub r: usize,
    pub is_r_matrix: bool,
    pub square_nonzero: bool,
    pub quotient_vanishes: bool,
    pub n_terms_square: usize,
    /// Sum of absolute coefficients of the projected square.
    pub quotient_norm: f64,
}

impl GrassmannReport {
    pub fn all_hold(&self) -> bool {
        self.is_r_matrix && self.square_nonzero && self.quotient_vanishes
    }
}

pub fn verify_instance(inst: &GrassmannInstance) -> Result<GrassmannReport> {
    let r = is_r_matrix(&inst.algebra, &inst.t)?;
    let q = quotient_project(&r.square, &inst.h)?;
    let norm: Rational = q
        .terms()
        .map(|(_, c)| c.abs())
        .fold(Rational::zero(), |a, b| a + b);
    Ok(GrassmannReport {
        n: inst.n,
        r: inst.r,
        is_r_matrix: r.is_r_matrix,
        square_nonzero: !r.square.is_zero(),
        quotient_vanishes: q.is_zero(),
        n_terms_square: r.square.len(),
        quotient_norm: rational::to_f64(&norm),
    })
}

/// Every `(n, r)` with `2 ≤ n ≤ max_n`, `1 ≤ r < n`.
pub fn verify_all(exec: Execution, max_n: usize) -> Result<Vec<GrassmannReport>> {
    let pairs: Vec<(usize, usize)> = (2..=max_n)
        .flat_map(|n| (1..n).map(move |r| (n, r)))
        .collect();
    if pairs.is_empty() {
        return Err(Error::Empty("(n, r) range"));
    }
    exec.try_map(&pairs, |&(n, r)| {
        verify_instance(&GrassmannInstance::new(n, r)?)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BracketCase {
    pub bracket: String,
    pub reference: String,
    pub computed: String,
    pub matches: bool,
    pub in_h: bool,
}

fn label_combination(basis: &SuBasis, v: &AlgebraVector) -> String {
    let parts: Vec<String> = v
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{}{}", coefficient_prefix(c), basis.labels[i]))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ").trim_start_matches("+ ").to_string()
    }
}

fn coefficient_prefix(c: &Rational) -> String {
    let one = rational::int(1);
    if *c == one {
        "+ ".into()
    } else if *c == -one {
        "- ".into()
    } else if c.is_negative() {
        format!("- {}·", rational::format(&-c))
    } else {
        format!("+ {}·", rational::format(c))
    }
}

/// The bracket relations used to show that every term of `[t, t]` meets `h`,
/// for `i ≤ r < j < l`: the reference value beside the computed one.
pub fn bracket_case_table(n: usize, r: usize) -> Result<Vec<BracketCase>> {
    let inst = GrassmannInstance::new(n, r)?;
    let b = &inst.basis;
    let g = &inst.algebra;
    let dim = b.dim();
    let e = |i: usize| AlgebraVector::basis(dim, i);
    let z = |k: usize| {
        if k == n {
            AlgebraVector::zero(dim)
        } else {
            e(b.z_index(k))
        }
    };
    let in_h = |v: &AlgebraVector| {
        v.coeffs()
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || inst.h.contains(i))
    };
    let mut rows = Vec::new();
    let mut push = |lhs: (usize, usize), reference: AlgebraVector| -> Result<()> {
        let computed = g.bracket(&e(lhs.0), &e(lhs.1))?;
        rows.push(BracketCase {
            bracket: format!("[{}, {}]", b.labels[lhs.0], b.labels[lhs.1]),
            reference: label_combination(b, &reference),
            computed: label_combination(b, &computed),
            matches: computed == reference,
            in_h: in_h(&computed),
        });
        Ok(())
    };
    for i in 1..=r {
        for j in r + 1..=n {
            let two = rational::int(2);
            push(
                (b.x_index(i, j), b.y_index(i, j)),
                z(i).sub(&z(j))?.scale(&two),
            )?;
            for l in j + 1..=n {
                let minus_x = e(b.x_index(j, l)).scale(&rational::int(-1));
                let minus_y = e(b.y_index(j, l)).scale(&rational::int(-1));
                push((b.x_index(i, j), b.x_index(i, l)), minus_x.clone())?;
                push((b.y_index(i, j), b.y_index(i, l)), minus_x)?;
                push((b.y_index(i, j), b.x_index(i, l)), minus_y.clone())?;
                push((b.y_index(i, l), b.x_index(i, j)), minus_y)?;
            }
        }
    }
    Ok(rows)
}
