//! One function per subcommand; each returns an [`Outcome`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde_json::{json, Value};
use symtwist::admissibility::{admissible_on_with, fibonacci_sphere};
use symtwist::cpn::{
    deformed_form, field_header, field_rows, moment_map_su, nondegeneracy_scan, Action, ChartPoint,
    GridSpec,
};
use symtwist::exterior::is_r_matrix;
use symtwist::grassmann::{
    bracket_case_table, verify_all, verify_instance, GrassmannInstance, GrassmannReport,
};
use symtwist::quadrature::Settings;
use symtwist::rational;
use symtwist::volume::{numeric_volume, pipeline_volume, VolumeResult};
use symtwist::{DualPoint, Execution, LieAlgebra, Multivector};

use crate::args::{
    ActionKind, AdmissibleArgs, DeformArgs, GrassmannArgs, RmatrixArgs, SweepTarget, ValidateArgs,
    VolumeArgs,
};
use crate::parse::{self, AlgebraSpec, Image};
use crate::report::{Diagnostic, Outcome, Table};

fn core_error(field: &str) -> impl Fn(symtwist::Error) -> Diagnostic + '_ {
    move |e| Diagnostic::new(field, e.to_string())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn check_tolerance(tol: f64) -> Result<f64, Diagnostic> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(Diagnostic::new(
            "tolerance",
            format!("must be positive and finite, got {tol}"),
        ))
    }
}

fn check_count(field: &str, n: usize) -> Result<usize, Diagnostic> {
    if n >= 1 {
        Ok(n)
    } else {
        Err(Diagnostic::new(field, "must be at least 1"))
    }
}

fn labelled(g: &LieAlgebra, m: &Multivector) -> Vec<Value> {
    m.terms()
        .map(|(k, c)| {
            let names: Vec<&str> = k.iter().map(|&i| g.label(i)).collect();
            json!([names.join("^"), rational::format(c)])
        })
        .collect()
}

fn number(v: f64) -> String {
    // no "-0" cells
    format!("{}", if v == 0.0 { 0.0 } else { v })
}

pub fn validate(args: &ValidateArgs) -> Result<Outcome, Diagnostic> {
    let spec = parse::algebra(&args.algebra)?;
    let g = &spec.algebra;
    let r = g.validate();
    Ok(Outcome {
        result: json!({
            "dim": g.dim(),
            "labels": g.labels(),
            "max_antisymmetry": rational::format(&r.max_antisymmetry),
            "max_jacobi": rational::format(&r.max_jacobi),
            "antisymmetry_violation": r.antisymmetry_violation,
            "jacobi_violation": r.jacobi_violation,
        }),
        verdict: Some(r.is_valid()),
        tolerance: None,
        table: None,
    })
}

pub fn rmatrix(args: &RmatrixArgs) -> Result<Outcome, Diagnostic> {
    let spec = parse::algebra(&args.algebra)?;
    let t = parse::twist(&args.twist, &spec)?;
    let g = &spec.algebra;
    let r = is_r_matrix(g, &t).map_err(core_error("twist"))?;
    let residual_labels: Vec<&str> = r.residuals.iter().map(|(i, _)| g.label(*i)).collect();
    Ok(Outcome {
        result: json!({
            "twist": labelled(g, &t),
            "square": labelled(g, &r.square),
            "square_zero": r.square_is_zero(),
            "is_r_matrix": r.is_r_matrix,
            "non_invariant_directions": residual_labels,
        }),
        verdict: Some(r.is_r_matrix),
        tolerance: None,
        table: None,
    })
}

fn image_samples(
    image: Image,
    spec: &AlgebraSpec,
    samples: usize,
    seed: u64,
) -> Result<Vec<DualPoint>, Diagnostic> {
    let dim = spec.algebra.dim();
    match image {
        Image::Sphere(r) => {
            if dim != 3 {
                return Err(Diagnostic::new(
                    "image",
                    format!("sphere images live in a 3-dimensional dual, the algebra has dimension {dim}"),
                ));
            }
            Ok(fibonacci_sphere(samples, r))
        }
        Image::ProjectiveSpace(n) => {
            if spec.su_n != Some(n + 1) {
                return Err(Diagnostic::new(
                    "image",
                    format!("cp:{n} needs --algebra su{}", n + 1),
                ));
            }
            // Gaussian vectors in C^{n+1} give Fubini–Study-uniform points
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(samples);
            while out.len() < samples {
                let z: Vec<f64> = (0..2 * (n + 1))
                    .map(|_| StandardNormal.sample(&mut rng))
                    .collect();
                let z0 = num_complex::Complex64::new(z[0], z[1]);
                if z0.norm() < 1e-12 {
                    continue;
                }
                let w: Vec<num_complex::Complex64> = z[2..]
                    .chunks(2)
                    .map(|c| num_complex::Complex64::new(c[0], c[1]) / z0)
                    .collect();
                let p = ChartPoint::from_complex(&w).map_err(core_error("image"))?;
                out.push(moment_map_su(&p, n).map_err(core_error("image"))?);
            }
            Ok(out)
        }
    }
}

pub fn admissible(args: &AdmissibleArgs, exec: Execution) -> Result<Outcome, Diagnostic> {
    let tol = check_tolerance(args.tolerance)?;
    let samples = check_count("samples", args.samples)?;
    let spec = parse::algebra(&args.algebra)?;
    let t = parse::twist(&args.twist, &spec)?;
    let image = parse::image(&args.image)?;
    let points = image_samples(image, &spec, samples, args.seed)?;
    let report =
        admissible_on_with(exec, &spec.algebra, &t, points, tol).map_err(core_error("twist"))?;
    let dim = spec.algebra.dim();
    let mut header: Vec<String> = (1..=dim).map(|i| format!("xi{i}")).collect();
    header.push("f_t".into());
    let rows = report
        .samples
        .iter()
        .zip(&report.values)
        .map(|(p, v)| p.0.iter().chain([v]).map(|&x| number(x)).collect())
        .collect();
    let mut result = to_value(&report.summary());
    result["twist_labels"] = json!(labelled(&spec.algebra, &t));
    Ok(Outcome {
        result,
        verdict: Some(report.verdict),
        tolerance: Some(tol),
        table: Some(Table { header, rows }),
    })
}

pub fn deform(args: &DeformArgs, exec: Execution) -> Result<Outcome, Diagnostic> {
    let tol = check_tolerance(args.tolerance)?;
    let points_per_axis = check_count("points-per-axis", args.points_per_axis)?;
    check_count("n", args.n)?;
    if !(args.half_width > 0.0 && args.half_width.is_finite()) {
        return Err(Diagnostic::new("half-width", "must be positive and finite"));
    }
    let (action, spec) = match args.action {
        ActionKind::Unitary => (
            Action::unitary(args.n).map_err(core_error("n"))?,
            parse::algebra(&format!("su{}", args.n + 1))?,
        ),
        ActionKind::Torus => (
            Action::torus(args.n).map_err(core_error("n"))?,
            parse::algebra(&format!("torus{}", args.n))?,
        ),
    };
    let t = parse::twist(&args.twist, &spec)?;
    let form = deformed_form(&action, &t).map_err(core_error("twist"))?;
    let grid = GridSpec {
        n: args.n,
        half_width: args.half_width,
        points_per_axis,
    };
    let scan = nondegeneracy_scan(exec, &form, &grid, tol).map_err(core_error("twist"))?;
    let points = grid.points().map_err(core_error("points-per-axis"))?;
    let table = if args.csv.is_some() {
        let rows = field_rows(exec, &form, &points)
            .map_err(core_error("twist"))?
            .into_iter()
            .map(|r| r.into_iter().map(number).collect())
            .collect();
        Some(Table {
            header: field_header(args.n),
            rows,
        })
    } else {
        None
    };
    let mut result = to_value(&scan);
    result["twist_labels"] = json!(labelled(&spec.algebra, &t));
    Ok(Outcome {
        result,
        verdict: Some(scan.nondegenerate),
        tolerance: Some(tol),
        table,
    })
}

fn one_volume(lambda: f64, pipeline: bool) -> Result<VolumeResult, Diagnostic> {
    let r = if pipeline {
        pipeline_volume(
            lambda,
            Settings {
                abs_tol: 1e-10,
                rel_tol: 1e-9,
                max_nodes: 100_000,
            },
        )
    } else {
        numeric_volume(lambda, Settings::default())
    };
    r.map_err(core_error("lambda"))
}

pub fn volume(args: &VolumeArgs) -> Result<Outcome, Diagnostic> {
    let tol = check_tolerance(args.tolerance)?;
    let r = one_volume(args.lambda, args.pipeline)?;
    Ok(Outcome {
        result: to_value(&r),
        verdict: Some(r.rel_error < tol),
        tolerance: Some(tol),
        table: None,
    })
}

fn grassmann_row(r: &GrassmannReport) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.r.to_string(),
        r.is_r_matrix.to_string(),
        r.square_nonzero.to_string(),
        r.quotient_vanishes.to_string(),
        r.n_terms_square.to_string(),
    ]
}

fn grassmann_header() -> Vec<String> {
    [
        "n",
        "r",
        "is_r_matrix",
        "square_nonzero",
        "quotient_vanishes",
        "n_terms_square",
    ]
    .map(String::from)
    .to_vec()
}

pub fn grassmann(args: &GrassmannArgs, exec: Execution) -> Result<Outcome, Diagnostic> {
    let reports = match (args.n, args.r) {
        (Some(n), Some(r)) => {
            let inst = GrassmannInstance::new(n, r).map_err(core_error("r"))?;
            vec![verify_instance(&inst).map_err(core_error("r"))?]
        }
        (None, None) => verify_all(exec, args.max_n).map_err(core_error("max-n"))?,
        (Some(_), None) => return Err(Diagnostic::new("r", "--n needs --r")),
        (None, Some(_)) => return Err(Diagnostic::new("n", "--r needs --n")),
    };
    let mut result = json!({ "instances": reports });
    if args.table {
        let mut cases = Vec::new();
        for rep in &reports {
            if rep.n >= 3 {
                cases.push(json!({
                    "n": rep.n,
                    "r": rep.r,
                    "rows": bracket_case_table(rep.n, rep.r).map_err(core_error("n"))?,
                }));
            }
        }
        result["bracket_cases"] = json!(cases);
    }
    Ok(Outcome {
        result,
        verdict: Some(reports.iter().all(GrassmannReport::all_hold)),
        tolerance: None,
        table: Some(Table {
            header: grassmann_header(),
            rows: reports.iter().map(grassmann_row).collect(),
        }),
    })
}

pub fn sweep(target: &SweepTarget, exec: Execution) -> Result<Outcome, Diagnostic> {
    match target {
        SweepTarget::Volume {
            lambda,
            pipeline,
            tolerance,
            ..
        } => {
            let tol = check_tolerance(*tolerance)?;
            let lambdas = parse::range("lambda", lambda)?;
            let results = exec.try_map(&lambdas, |&l| one_volume(l, *pipeline))?;
            let header = [
                "lambda",
                "numeric_volume",
                "closed_form",
                "k_lambda",
                "rel_error",
                "verdict",
            ]
            .map(String::from)
            .to_vec();
            let rows = results
                .iter()
                .map(|r| {
                    vec![
                        number(r.lambda),
                        number(r.numeric_volume),
                        number(r.closed_form),
                        number(r.k_lambda),
                        number(r.rel_error),
                        (r.rel_error < tol).to_string(),
                    ]
                })
                .collect();
            Ok(Outcome {
                result: json!({ "rows": results }),
                verdict: Some(results.iter().all(|r| r.rel_error < tol)),
                tolerance: Some(tol),
                table: Some(Table { header, rows }),
            })
        }
        SweepTarget::Admissible {
            algebra,
            twist,
            scales,
            image,
            samples,
            tolerance,
            seed,
            ..
        } => {
            let tol = check_tolerance(*tolerance)?;
            let samples = check_count("samples", *samples)?;
            let scales = parse::range("scales", scales)?;
            let spec = parse::algebra(algebra)?;
            let t = parse::twist(twist, &spec)?;
            let points = image_samples(parse::image(image)?, &spec, samples, *seed)?;
            let reports = exec.try_map(&scales, |&s| {
                let scaled =
                    t.scale(&rational::parse(&format!("{s:e}")).map_err(core_error("scales"))?);
                admissible_on_with(
                    Execution::Sequential,
                    &spec.algebra,
                    &scaled,
                    points.clone(),
                    tol,
                )
                .map_err(core_error("twist"))
            })?;
            let rows_json: Vec<Value> = scales
                .iter()
                .zip(&reports)
                .map(|(s, r)| json!({ "scale": s, "min_abs": r.min_abs, "argmin": r.argmin_point().0, "verdict": r.verdict }))
                .collect();
            let dim = spec.algebra.dim();
            let mut header = vec!["scale".to_string(), "min_abs".to_string()];
            header.extend((1..=dim).map(|i| format!("argmin_xi{i}")));
            header.push("verdict".into());
            let rows = scales
                .iter()
                .zip(&reports)
                .map(|(s, r)| {
                    let mut row = vec![number(*s), number(r.min_abs)];
                    row.extend(r.argmin_point().0.iter().map(|&x| number(x)));
                    row.push(r.verdict.to_string());
                    row
                })
                .collect();
            Ok(Outcome {
                result: json!({ "twist_labels": labelled(&spec.algebra, &t), "n_samples": points.len(), "rows": rows_json }),
                verdict: Some(reports.iter().all(|r| r.verdict)),
                tolerance: Some(tol),
                table: Some(Table { header, rows }),
            })
        }
        SweepTarget::Grassmann { max_n, .. } => {
            let reports = verify_all(exec, *max_n).map_err(core_error("max-n"))?;
            Ok(Outcome {
                result: json!({ "rows": reports }),
                verdict: Some(reports.iter().all(GrassmannReport::all_hold)),
                tolerance: None,
                table: Some(Table {
                    header: grassmann_header(),
                    rows: reports.iter().map(grassmann_row).collect(),
                }),
            })
        }
    }
}
