//! Sparse multivectors in `Λ^k g` over a structure-constant Lie algebra.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{check_dim, AlgebraVector, LieAlgebra};
use crate::rational::{self, Rational};

/// Homogeneous element of `Λ^k g`: strictly increasing index tuples mapped to
/// nonzero exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivector {
    dim: usize,
    grade: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

/// Sorts `indices` in place and returns the permutation sign, or `None` when
/// an index repeats (the blade vanishes).
fn sort_with_sign(indices: &mut [usize]) -> Option<bool> {
    let mut negate = false;
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            negate = !negate;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negate)
    }
}

impl Multivector {
    pub fn zero(dim: usize, grade: usize) -> Self {
        Multivector {
            dim,
            grade,
            terms: BTreeMap::new(),
        }
    }

    /// Scalar `c ∈ Λ^0 g`.
    pub fn scalar(dim: usize, c: Rational) -> Self {
        let mut m = Self::zero(dim, 0);
        m.accumulate(Vec::new(), c);
        m
    }

    /// `e_{i_1} ∧ … ∧ e_{i_k}` for indices in any order.
    pub fn blade(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut m = Self::zero(dim, indices.len());
        for &i in indices {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
        }
        m.add_term(indices.to_vec(), rational::int(1));
        Ok(m)
    }

    pub fn from_vector(x: &AlgebraVector) -> Self {
        let mut m = Self::zero(x.dim(), 1);
        for (i, c) in x.coeffs().iter().enumerate() {
            m.accumulate(vec![i], c.clone());
        }
        m
    }

    /// Sums `c · e_{i_1} ∧ … ∧ e_{i_k}` over the given (possibly unsorted) tuples.
    pub fn from_terms<I>(dim: usize, grade: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Rational)>,
    {
        let mut m = Self::zero(dim, grade);
        for (idx, c) in terms {
            if idx.len() != grade {
                return Err(Error::WrongGrade {
                    expected: grade,
                    found: idx.len(),
                });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::IndexOutOfRange { index: bad, dim });
            }
            m.add_term(idx, c);
        }
        Ok(m)
    }

    /// Bivector `Σ_{i<j} ½ λ_ij e_i ∧ e_j` from `((i, j), λ_ij)` pairs.
    pub fn twist_from_lambdas<I>(dim: usize, lambdas: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Rational)>,
    {
        let half = rational::ratio(1, 2);
        Self::from_terms(
            dim,
            2,
            lambdas
                .into_iter()
                .map(|((i, j), l)| (vec![i, j], l * &half)),
        )
    }

    fn add_term(&mut self, mut idx: Vec<usize>, c: Rational) {
        if let Some(negate) = sort_with_sign(&mut idx) {
            self.accumulate(idx, if negate { -c } else { c });
        }
    }

    /// Adds to an already sorted key, dropping the entry if it cancels.
    fn accumulate(&mut self, key: Vec<usize>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Coefficient of `e_{i_1} ∧ … ∧ e_{i_k}`; the tuple may be unsorted.
    pub fn coefficient(&self, indices: &[usize]) -> Rational {
        let mut idx = indices.to_vec();
        match sort_with_sign(&mut idx) {
            None => Rational::zero(),
            Some(negate) => {
                let c = self.terms.get(&idx).cloned().unwrap_or_else(Rational::zero);
                if negate {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> Rational {
        self.terms
            .values()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        check_dim(self.dim, other.dim)?;
        if self.grade != other.grade {
            return Err(Error::WrongGrade {
                expected: self.grade,
                found: other.grade,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.accumulate(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&rational::int(-1)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.grade);
        for (k, v) in &self.terms {
            out.accumulate(k.clone(), v * s);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut out = Self::zero(self.dim, self.grade + other.grade);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut idx = Vec::with_capacity(a.len() + b.len());
                idx.extend_from_slice(a);
                idx.extend_from_slice(b);
                out.add_term(idx, ca * cb);
            }
        }
        Ok(out)
    }

    /// Antisymmetric component matrix `t^{ij}` of a bivector, with
    /// `t^{ij} = 2 × coeff(e_i ∧ e_j)` for `i<j`; so for
    /// `t = Σ_{i<j} ½ λ_ij e_i ∧ e_j` this returns `λ`.
    pub fn twist_components(&self) -> Result<Vec<Vec<Rational>>> {
        self.expect_grade(2)?;
        let n = self.dim;
        let mut m = vec![vec![Rational::zero(); n]; n];
        let two = rational::int(2);
        for (k, c) in &self.terms {
            m[k[0]][k[1]] = c * &two;
            m[k[1]][k[0]] = -(c * &two);
        }
        Ok(m)
    }

    fn expect_grade(&self, grade: usize) -> Result<()> {
        if self.grade == grade {
            Ok(())
        } else {
            Err(Error::WrongGrade {
                expected: grade,
                found: self.grade,
            })
        }
    }

    /// Drops every term whose index tuple meets `h`. Stays in `Λ g`; idempotent.
    pub fn drop_meeting(&self, h: &SubalgebraBasisSet) -> Self {
        let mut out = Self::zero(self.dim, self.grade);
        for (k, v) in &self.terms {
            if !k.iter().any(|i| h.contains(*i)) {
                out.terms.insert(k.clone(), v.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> MultivectorJson {
        MultivectorJson {
            grade: self.grade,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().map(|i| i + 1).collect(), rational::format(v)))
                .collect(),
        }
    }

    pub fn from_json(dim: usize, json: &MultivectorJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(json.terms.len());
        for (idx, v) in &json.terms {
            if idx.contains(&0) {
                return Err(Error::Parse("multivector indices are one-based".into()));
            }
            terms.push((idx.iter().map(|i| i - 1).collect(), rational::parse(v)?));
        }
        Self::from_terms(dim, json.grade, terms)
    }
}

/// `{ "grade": k, "terms": [[[i_1, …, i_k], "p/q"], …] }` with one-based indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub grade: usize,
    pub terms: Vec<(Vec<usize>, String)>,
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, v)| {
                let blade: Vec<String> = k.iter().map(|i| format!("e{}", i + 1)).collect();
                format!("({})·{}", rational::format(v), blade.join("∧"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Schouten square `[t, t] ∈ Λ³ g` of a bivector.
///
/// Normalized so that `[½ X∧Y, ½ X∧Y] = ½ X ∧ [X,Y] ∧ Y` for decomposable
/// twists. Writing `t = ½ T^{ab} e_a ∧ e_b` with `T` antisymmetric,
/// `[t,t] = −Σ T^{ab} T^{cd} [e_a, e_c] ∧ e_b ∧ e_d`.
pub fn schouten_square(g: &LieAlgebra, t: &Multivector) -> Result<Multivector> {
    t.expect_grade(2)?;
    check_dim(g.dim(), t.dim)?;
    // integer arithmetic on cleared denominators; one division at the end
    let lt = common_denominator(t.terms.values());
    let lg = common_denominator((0..g.dim()).flat_map(|i| {
        (0..g.dim()).flat_map(move |j| g.basis_bracket(i, j).iter().map(|(_, c)| c))
    }));
    let scaled = |c: &Rational, l: &BigInt| -> BigInt {
        (c * Rational::from_integer(l.clone())).to_integer()
    };
    // both orientations of every stored pair, T^{ab} = coeff, T^{ba} = −coeff
    let oriented: Vec<(usize, usize, BigInt)> = t
        .terms
        .iter()
        .flat_map(|(k, c)| {
            let v = scaled(c, &lt);
            [(k[0], k[1], v.clone()), (k[1], k[0], -v)]
        })
        .collect();
    let table: Vec<Vec<Vec<(usize, BigInt)>>> = (0..g.dim())
        .map(|i| {
            (0..g.dim())
                .map(|j| {
                    g.basis_bracket(i, j)
                        .iter()
                        .map(|(m, c)| (*m, scaled(c, &lg)))
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut acc: HashMap<[usize; 3], BigInt> = HashMap::new();
    for (a, b, tab) in &oriented {
        for (c, d, tcd) in &oriented {
            let bracket = &table[*a][*c];
            if bracket.is_empty() || b == d {
                continue;
            }
            let w = tab * tcd;
            for (m, s) in bracket {
                let mut key = [*m, *b, *d];
                if let Some(negate) = sort_with_sign(&mut key) {
                    let v = &w * s;
                    let e = acc.entry(key).or_default();
                    // overall minus sign of the square
                    if negate {
                        *e += v;
                    } else {
                        *e -= v;
                    }
                }
            }
        }
    }
    let denom = Rational::from_integer(&lt * &lt * &lg);
    let mut out = Multivector::zero(t.dim, 3);
    for (key, c) in acc {
        out.accumulate(key.to_vec(), Rational::from_integer(c) / &denom);
    }
    Ok(out)
}

fn common_denominator<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |l, c| l.lcm(c.denom()))
}

/// `ad_X` extended to `Λ g` as a degree-zero derivation of the wedge.
pub fn ad_derivation(g: &LieAlgebra, x: &AlgebraVector, m: &Multivector) -> Result<Multivector> {
    check_dim(g.dim(), m.dim)?;
    let ad = g.ad(x)?;
    let mut out = Multivector::zero(m.dim, m.grade);
    for (key, c) in &m.terms {
        for slot in 0..key.len() {
            for (l, s) in &ad[key[slot]] {
                let mut idx = key.clone();
                idx[slot] = *l;
                out.add_term(idx, c * s);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RMatrixReport {
    pub is_r_matrix: bool,
    pub square: Multivector,
    /// `(i, ad_{e_i}[t,t])` for every basis index with a nonzero result.
    pub residuals: Vec<(usize, Multivector)>,
}

impl RMatrixReport {
    pub fn square_is_zero(&self) -> bool {
        self.square.is_zero()
    }
}

/// Tests ad-invariance of `[t, t]` basis vector by basis vector.
pub fn is_r_matrix(g: &LieAlgebra, t: &Multivector) -> Result<RMatrixReport> {
    let square = schouten_square(g, t)?;
    let mut residuals = Vec::new();
    if !square.is_zero() {
        for i in 0..g.dim() {
            let r = ad_derivation(g, &AlgebraVector::basis(g.dim(), i), &square)?;
            if !r.is_zero() {
                residuals.push((i, r));
            }
        }
    }
    Ok(RMatrixReport {
        is_r_matrix: residuals.is_empty(),
        square,
        residuals,
    })
}

/// Basis indices spanning a subalgebra `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraBasisSet {
    dim: usize,
    indices: BTreeSet<usize>,
}

impl SubalgebraBasisSet {
    /// Checks exactly that `[e_i, e_j]` stays in the span for all `i, j` in the set.
    pub fn new(g: &LieAlgebra, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&bad) = indices.iter().find(|&&i| i >= g.dim()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: g.dim(),
            });
        }
        for &i in &indices {
            for &j in &indices {
                if g.basis_bracket(i, j)
                    .iter()
                    .any(|(k, _)| !indices.contains(k))
                {
                    return Err(Error::NotClosed { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(SubalgebraBasisSet {
            dim: g.dim(),
            indices,
        })
    }

    /// Accepts spanning vectors, each of which must be a nonzero multiple of a
    /// basis vector.
    pub fn from_span(g: &LieAlgebra, vectors: &[AlgebraVector]) -> Result<Self> {
        let mut idx = Vec::with_capacity(vectors.len());
        for v in vectors {
            check_dim(g.dim(), v.dim())?;
            let support: Vec<usize> = v
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, _)| i)
                .collect();
            match support.as_slice() {
                [i] => idx.push(*i),
                _ => return Err(Error::NotBasisAligned(v.to_string())),
            }
        }
        Self::new(g, idx)
    }

    pub fn empty(g: &LieAlgebra) -> Self {
        SubalgebraBasisSet {
            dim: g.dim(),
            indices: BTreeSet::new(),
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Basis indices not in `h`, in increasing order; position `p` in this
    /// list is the index of the image of `e_{complement[p]}` in `g/h`.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.dim).filter(|i| !self.contains(*i)).collect()
    }
}

/// Image of `m` under `Λ g → Λ(g/h)`, reindexed over the complement of `h`.
pub fn quotient_project(m: &Multivector, h: &SubalgebraBasisSet) -> Result<Multivector> {
    check_dim(h.dim, m.dim)?;
    let complement = h.complement();
    let mut position = vec![usize::MAX; m.dim];
    for (p, &i) in complement.iter().enumerate() {
        position[i] = p;
    }
    let kept = m.drop_meeting(h);
    let mut out = Multivector::zero(complement.len(), m.grade);
    for (k, v) in kept.terms {
        // the complement is increasing, so reindexing preserves order
        out.terms
            .insert(k.iter().map(|i| position[*i]).collect(), v);
    }
    Ok(out)
}
