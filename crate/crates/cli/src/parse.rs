//! Parsers for algebra, twist, image and range arguments.

use std::fs;
use std::path::Path;

use symtwist::grassmann::canonical_r_matrix;
use symtwist::rational::{self, Rational};
use symtwist::{AlgebraVector, LieAlgebra, Multivector};

use crate::report::Diagnostic;

/// A parsed `--algebra` value.
pub struct AlgebraSpec {
    pub algebra: LieAlgebra,
    /// `Some(n)` for the builtin `su(n)`.
    pub su_n: Option<usize>,
}

fn builtin_rank(s: &str, prefix: &str) -> Option<usize> {
    let rest = s.strip_prefix(prefix)?;
    let rest = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(rest);
    rest.parse().ok()
}

/// `su2`, `su(3)`, `abelian4`, `torus2` or a path to a structure-constant JSON file.
pub fn algebra(s: &str) -> Result<AlgebraSpec, Diagnostic> {
    let bad = |m: String| Diagnostic::new("algebra", m);
    let key = s.trim().to_ascii_lowercase();
    if let Some(n) = builtin_rank(&key, "su") {
        let algebra = LieAlgebra::su(n).map_err(|e| bad(e.to_string()))?;
        return Ok(AlgebraSpec {
            algebra,
            su_n: Some(n),
        });
    }
    for prefix in ["abelian", "torus"] {
        if let Some(n) = builtin_rank(&key, prefix) {
            let algebra = LieAlgebra::abelian(n).map_err(|e| bad(e.to_string()))?;
            return Ok(AlgebraSpec {
                algebra,
                su_n: None,
            });
        }
    }
    let path = Path::new(s.trim());
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        let algebra = LieAlgebra::from_json_str(&text)
            .map_err(|e| bad(format!("{}: {e}", path.display())))?;
        return Ok(AlgebraSpec {
            algebra,
            su_n: None,
        });
    }
    Err(bad(format!(
        "unknown algebra {s:?}: expected suN, abelianN, torusN or a JSON file"
    )))
}

fn twist_error(m: impl Into<String>) -> Diagnostic {
    Diagnostic::new("twist", m)
}

fn coefficient(s: &str) -> Result<Rational, Diagnostic> {
    rational::parse(s).map_err(|e| twist_error(e.to_string()))
}

/// `lij=v` or `l_i_j=v`, one-based.
fn lambda_item(key: &str, value: &str, dim: usize) -> Result<Multivector, Diagnostic> {
    let idx = &key[1..];
    let (i, j) = match idx.trim_start_matches('_').split_once('_') {
        Some((a, b)) => (a.parse::<usize>().ok(), b.parse::<usize>().ok()),
        None if idx.len() == 2 => (idx[..1].parse().ok(), idx[1..].parse().ok()),
        None => (None, None),
    };
    let (Some(i), Some(j)) = (i, j) else {
        return Err(twist_error(format!(
            "cannot read indices from {key:?}: use lij for single digits or l_i_j"
        )));
    };
    if i == 0 || j == 0 || i > dim || j > dim || i == j {
        return Err(twist_error(format!(
            "{key}: indices must be distinct and in 1..={dim}"
        )));
    }
    Multivector::twist_from_lambdas(dim, [((i - 1, j - 1), coefficient(value)?)])
        .map_err(|e| twist_error(e.to_string()))
}

/// Linear combination of basis labels such as `Y23`, `2Z1-Z2` or `(1/2X12+Y12)`.
fn combination(s: &str, g: &LieAlgebra) -> Result<AlgebraVector, Diagnostic> {
    let s = s.trim();
    let body = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s)
        .replace(' ', "");
    if body.is_empty() {
        return Err(twist_error("empty factor"));
    }
    let mut coeffs = vec![Rational::from_integer(0.into()); g.dim()];
    let mut rest = body.as_str();
    while !rest.is_empty() {
        let (negative, r) = match rest.as_bytes()[0] {
            b'-' => (true, &rest[1..]),
            b'+' => (false, &rest[1..]),
            _ => (false, rest),
        };
        let num_len = r
            .find(|c: char| !(c.is_ascii_digit() || c == '.' || c == '/'))
            .unwrap_or(r.len());
        let mut c = if num_len == 0 {
            Rational::from_integer(1.into())
        } else {
            coefficient(&r[..num_len])?
        };
        let r = r[num_len..].strip_prefix('*').unwrap_or(&r[num_len..]);
        let label_len = r.find(['+', '-']).unwrap_or(r.len());
        let label = &r[..label_len];
        let index = g
            .index_of(label)
            .ok_or_else(|| twist_error(format!("unknown basis label {label:?} in {s:?}")))?;
        if negative {
            c = -c;
        }
        coeffs[index] += c;
        rest = &r[label_len..];
    }
    Ok(AlgebraVector::new(coeffs))
}

/// `A^B:c` meaning `c · A∧B`; the coefficient defaults to 1.
fn wedge_item(item: &str, g: &LieAlgebra) -> Result<Multivector, Diagnostic> {
    let (pair, c) = match item.rsplit_once(':') {
        Some((p, c)) => (p, coefficient(c)?),
        None => (item, Rational::from_integer(1.into())),
    };
    let (a, b) = pair
        .split_once('^')
        .ok_or_else(|| twist_error(format!("expected A^B in {item:?}")))?;
    let (a, b) = (combination(a, g)?, combination(b, g)?);
    Ok(Multivector::from_vector(&a)
        .wedge(&Multivector::from_vector(&b))
        .map_err(|e| twist_error(e.to_string()))?
        .scale(&c))
}

/// Comma-separated sum of `lij=v`, `A^B:c` and `canonical` items.
pub fn twist(s: &str, spec: &AlgebraSpec) -> Result<Multivector, Diagnostic> {
    let g = &spec.algebra;
    let mut total = Multivector::zero(g.dim(), 2);
    for item in s.split(',').map(str::trim) {
        if item.is_empty() {
            return Err(twist_error(format!("empty item in {s:?}")));
        }
        let term = if item == "canonical" {
            let n = spec
                .su_n
                .ok_or_else(|| twist_error("canonical needs a builtin su(n) algebra"))?;
            canonical_r_matrix(n).map_err(|e| twist_error(e.to_string()))?
        } else if item.contains('^') {
            wedge_item(item, g)?
        } else if let Some((key, value)) = item.split_once('=').filter(|(k, _)| k.starts_with('l'))
        {
            lambda_item(key.trim(), value.trim(), g.dim())?
        } else {
            return Err(twist_error(format!(
                "cannot parse {item:?}: expected lij=v, A^B:c or canonical"
            )));
        };
        total = total.add(&term).map_err(|e| twist_error(e.to_string()))?;
    }
    Ok(total)
}

/// Where admissibility is sampled.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Image {
    /// Fibonacci lattice on the sphere of this radius in a 3-dimensional dual.
    Sphere(f64),
    /// Moment image of `CP^n` under `SU(n+1)`.
    ProjectiveSpace(usize),
}

pub fn image(s: &str) -> Result<Image, Diagnostic> {
    let bad = |m: String| Diagnostic::new("image", m);
    let (kind, arg) = s
        .split_once(':')
        .ok_or_else(|| bad(format!("expected sphere:R or cp:N, got {s:?}")))?;
    match kind.trim() {
        "sphere" => {
            let r: f64 = arg
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad radius {arg:?}")))?;
            if !(r > 0.0 && r.is_finite()) {
                return Err(bad(format!("radius must be positive, got {r}")));
            }
            Ok(Image::Sphere(r))
        }
        "cp" => {
            let n: usize = arg
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad dimension {arg:?}")))?;
            if n == 0 {
                return Err(bad("cp:N needs N ≥ 1".into()));
            }
            Ok(Image::ProjectiveSpace(n))
        }
        other => Err(bad(format!("unknown image kind {other:?}"))),
    }
}

/// `start:stop:step` (inclusive) or a comma-separated list.
pub fn range(field: &'static str, s: &str) -> Result<Vec<f64>, Diagnostic> {
    let bad = |m: String| Diagnostic::new(field, m);
    let num = |t: &str| -> Result<f64, Diagnostic> {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| bad(format!("not a finite number: {t:?}")))
    };
    let values = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, step] = parts[..] else {
            return Err(bad(format!("expected start:stop:step, got {s:?}")));
        };
        let (a, b, step) = (num(a)?, num(b)?, num(step)?);
        if step <= 0.0 || b < a {
            return Err(bad(format!("empty range {s:?}")));
        }
        let count = ((b - a) / step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| {
                let v = ((a + i as f64 * step) * 1e12).round() / 1e12;
                if v == 0.0 {
                    0.0
                } else {
                    v
                }
            })
            .collect()
    } else {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(num)
            .collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() {
        return Err(bad(format!("empty range {s:?}")));
    }
    Ok(values)
}
