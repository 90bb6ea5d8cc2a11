//! `algebroid`, `path`, `homotopy`, `oracle` and `convergence`.

use std::f64::consts::PI;
use std::sync::Arc;

use algebroid_paths::path::{smoothstep, smoothstep_prime};
use algebroid_paths::{
    check_connection_independence, check_dual_apath, develop, equivalent_oracle, fit_order, is_homotopy, solve_b,
    tangent_oracle, APath, Algebroid, Connection, Convention, Family, HomotopySheet, MatrixModel, Order,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::{At, CliError};
use crate::input::{self, Problem, SheetContext};
use crate::report::Report;

fn so3_doc() -> Value {
    json!({"family": "lie_algebra", "structure": "so3"})
}

fn corrupted_so3_doc() -> Value {
    let spec = Algebroid::so3();
    let n = 3;
    let mut c = spec.structure(&[]);
    // one entry off, leaving its antisymmetric partner alone
    c[(2 * n) * n + 1] += 0.1;
    let nested: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|k| (0..n).map(|i| c[(k * n + i) * n..(k * n + i + 1) * n].to_vec()).collect())
        .collect();
    json!({"family": "lie_algebra", "n": 3, "structure": nested})
}

fn twisted_doc(lambdas: &[(&str, &str)], connection: &str) -> Value {
    json!({
        "family": "twisted_surface",
        "omega": {"factors": lambdas.len(), "d": 2, "lambdas": lambdas.iter().map(|(p, q)| [p, q]).collect::<Vec<_>>()},
        "connection": connection,
    })
}

/// Named problem documents for the numeric commands.
pub fn preset(name: &str, seed: u64) -> Option<Value> {
    let tangent = |connection: &str| json!({"family": "tangent", "m": 2, "connection": connection});
    let doc = match name {
        "so3" | "su2" => json!({"algebroid": so3_doc()}),
        "heisenberg" | "sl2" | "upper_triangular" => {
            json!({"algebroid": {"family": "lie_algebra", "structure": name}})
        }
        "corrupted-so3" => json!({"algebroid": corrupted_so3_doc()}),
        "tangent2" => json!({"algebroid": tangent("random(1)")}),
        "twisted-s2" => json!({"algebroid": twisted_doc(&[("1", "0")], "random(1)")}),
        "paper-s2xs2" => json!({"algebroid": twisted_doc(&[("1", "0"), ("0", "1")], "random(1)")}),
        "su2-random" => json!({"algebroid": so3_doc(), "paths": [format!("random({seed}, 1)")]}),
        "su2-pair" => json!({
            "algebroid": so3_doc(),
            "paths": [format!("random({seed}, 1)"), format!("random({}, 1)", seed + 1)],
        }),
        "circle" => json!({"algebroid": tangent("zero"), "paths": ["circle"]}),
        "su2-gauge" => json!({"algebroid": so3_doc(), "sheet": format!("gauge({seed})")}),
        "su2-shift" => json!({"algebroid": so3_doc(), "sheet": format!("shift({seed})")}),
        "su2-associator" => json!({"algebroid": so3_doc(), "sheet": format!("associator({seed})")}),
        "su2-zero-associator" => json!({
            "algebroid": so3_doc(),
            "paths": ["constant", "constant", "constant"],
            "sheet": "associator",
        }),
        "tangent-arc" => json!({"algebroid": tangent("random(1)"), "paths": ["arc(0)", "arc(0.8)"], "sheet": "interpolate"}),
        "twisted-meridian" => json!({"algebroid": twisted_doc(&[("1", "0")], "random(1)"), "sheet": "meridian"}),
        "s2xs2-meridian" => {
            json!({"algebroid": twisted_doc(&[("1", "0"), ("0", "1")], "random(1)"), "sheet": "meridian"})
        }
        _ => return None,
    };
    Some(doc)
}

fn load_problem(config: &RunConfig, n: usize) -> Result<Problem, CliError> {
    let value = if let Some(first) = config.inputs.first() {
        input::load(first)?
    } else if let Some(name) = &config.preset {
        preset(name, config.seed).ok_or_else(|| CliError::Usage(format!("unknown preset {name:?}")))?
    } else {
        return Err(CliError::Usage("give --input or --preset".into()));
    };
    input::problem(&value, n)
}

fn sheet_of(problem: &Problem, config: &RunConfig) -> Result<HomotopySheet, CliError> {
    let value = problem
        .sheet
        .as_ref()
        .ok_or_else(|| CliError::schema("", "missing field `sheet`"))?;
    let is_associator = value.as_str().is_some_and(|s| s.starts_with("associator"));
    let (n_eps, n_t) = if is_associator {
        let n_t = config.grid_or(1600);
        (config.grid.get(1).copied().unwrap_or(n_t / 4), n_t)
    } else {
        let n = config.grid_or(200);
        (config.grid.get(1).copied().unwrap_or(n), n)
    };
    // associator inputs live on the sheet's time grid
    let ctx = SheetContext {
        spec: &problem.spec,
        paths: &problem.paths,
        n_eps,
        n_t,
        seed: config.seed,
    };
    input::sheet(value, "/sheet", &ctx)
}

fn path_grid(config: &RunConfig, command: &[String]) -> usize {
    if command.get(1).map(String::as_str) == Some("associator") {
        config.grid_or(1600)
    } else if command.first().map(String::as_str) == Some("homotopy") {
        config.grid_or(200)
    } else {
        config.grid_or(2000)
    }
}

fn need_paths(problem: &Problem, k: usize) -> Result<(), CliError> {
    if problem.paths.len() < k {
        Err(CliError::schema("/paths", format!("expected at least {k} paths, got {}", problem.paths.len())))
    } else {
        Ok(())
    }
}

fn sample_points(spec: &Algebroid, seed: u64, count: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..spec.m()).map(|_| rng.random_range(0.2..2.9)).collect())
        .collect()
}

pub fn algebroid(config: &RunConfig, action: &str) -> Result<Report, CliError> {
    if action != "validate" {
        return Err(CliError::Usage(format!("unknown action `algebroid {action}`")));
    }
    let problem = load_problem(config, 16)?;
    let spec = &problem.spec;
    let samples = sample_points(spec, config.seed, 8);
    let v = spec.validate(&problem.connection, &samples, 1e-5, config.tol.quad_tol);
    let mut r = Report::new("algebroid validate", "algebroid_core", "validate", config);
    r.metric("antisymmetry", v.antisymmetry)
        .metric("jacobi", v.jacobi)
        .metric("anchor", v.anchor)
        .cert("algebroid", spec.name())
        .cert("rank", spec.n().to_string())
        .cert("base_dimension", spec.m().to_string());
    if let Some(msg) = &v.message {
        r.cert("message", msg.as_str());
    }
    r.require("connection", v.connection_ok)
        .require("antisymmetry", v.antisymmetry == 0.0)
        .require("jacobi", v.jacobi <= config.tol.quad_tol)
        .require("anchor", v.anchor <= config.tol.quad_tol);
    Ok(r)
}

fn rows_json(rows: Vec<Vec<f64>>) -> Value {
    json!(rows)
}

pub fn path(config: &RunConfig, action: &str) -> Result<Report, CliError> {
    if action != "build" && action != "check" {
        return Err(CliError::Usage(format!("unknown action `path {action}`")));
    }
    let problem = load_problem(config, config.grid_or(2000))?;
    need_paths(&problem, 1)?;
    let p = &problem.paths[0];
    let mut r = Report::new(&format!("path {action}"), "path_engine", action, config);
    let residual = p.residual();
    let (start, end) = p.endpoints();
    let (d0, d1) = p.boundary_derivatives();
    r.metric("residual", residual)
        .metric("boundary_derivative_start", d0)
        .metric("boundary_derivative_end", d1)
        .cert("N", p.n().to_string())
        .cert("a0", p.is_a0().to_string())
        .array("source", json!(start))
        .array("target", json!(end));
    if action == "build" {
        r.array("a", rows_json(p.a_rows())).array("gamma", rows_json(p.gamma_rows()));
    }
    r.require("residual", residual <= config.tol.path_tol);
    Ok(r)
}

pub fn homotopy(config: &RunConfig, action: &str) -> Result<Report, CliError> {
    let n = path_grid(config, &config.command);
    let problem = load_problem(config, n)?;
    let sheet = sheet_of(&problem, config)?;
    let conn = &problem.connection;
    let tol = config.tol.path_tol;
    let mut r = Report::new(&format!("homotopy {action}"), "homotopy_engine", action, config);
    r.metric("row_residual", sheet.max_row_residual())
        .cert("n_eps", sheet.n_eps().to_string())
        .cert("n_t", sheet.n_t().to_string())
        .cert("connection", conn.label());
    match action {
        "solve" => {
            let sol = solve_b(conn, &sheet).at("/sheet")?;
            let dual = check_dual_apath(&sheet, &sol, tol);
            let end: Vec<Vec<f64>> = (0..=sol.n_eps()).map(|j| sol.b(j, sol.n_t()).to_vec()).collect();
            r.metric("max_terminal", sol.max_terminal())
                .metric("dual_residual", dual.max_residual)
                .array("terminal", json!(sol.terminal))
                .array("b_at_end", json!(end));
            r.require("terminal", sol.max_terminal() <= tol);
        }
        "check" => {
            let h = is_homotopy(conn, &sheet, tol).at("/sheet")?;
            r.metric("max_terminal", h.max_terminal).array("terminal", json!(h.profile));
            r.require("homotopy", h.pass);
            if !conn.is_zero() {
                let zero = Connection::zero(&problem.spec);
                let ind = check_connection_independence(&sheet, &zero, conn, 1e-3).at("/sheet")?;
                r.metric("connection_difference", ind.max_difference);
            }
        }
        "associator" => {
            let generated = problem.sheet.as_ref().and_then(Value::as_str).unwrap_or("");
            if !generated.starts_with("associator") {
                return Err(CliError::schema("/sheet", "`homotopy associator` needs an associator sheet"));
            }
            let h = is_homotopy(conn, &sheet, tol).at("/sheet")?;
            r.metric("max_terminal", h.max_terminal).array("terminal", json!(h.profile));
            if let Some(model) = MatrixModel::for_spec(&problem.spec) {
                let d0 = develop(&model, &sheet.row(0), Convention::Right).at("/sheet")?;
                let d1 = develop(&model, &sheet.row(sheet.n_eps()), Convention::Right).at("/sheet")?;
                r.metric("bracketing_distance", d0.distance(&d1));
            }
            r.require("homotopy", h.pass);
        }
        _ => return Err(CliError::Usage(format!("unknown action `homotopy {action}`"))),
    }
    Ok(r)
}

fn matrix_json(m: &algebroid_paths::oracle::CMat) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect();
    json!(rows)
}

fn model_for(spec: &Arc<Algebroid>) -> Result<MatrixModel, CliError> {
    MatrixModel::for_spec(spec)
        .ok_or_else(|| CliError::schema("/algebroid", format!("no matrix model for {}", spec.name())))
}

pub fn oracle(config: &RunConfig, action: &str) -> Result<Report, CliError> {
    let problem = load_problem(config, config.grid_or(2000))?;
    let mut r = Report::new(&format!("oracle {action}"), "oracle_dev", action, config);
    match action {
        "develop" => {
            need_paths(&problem, 1)?;
            let model = model_for(&problem.spec)?;
            let d = develop(&model, &problem.paths[0], Convention::Right).at("/paths/0")?;
            r.metric("drift", d.drift)
                .metric("distance_to_identity", d.distance_to_identity())
                .cert("model", model.name())
                .array("matrix", matrix_json(&d.matrix));
            r.require("drift", d.drift <= config.tol.equiv_tol);
        }
        "equiv" => {
            need_paths(&problem, 2)?;
            let (p0, p1) = (&problem.paths[0], &problem.paths[1]);
            let equivalent = if problem.spec.family() == Family::Tangent {
                tangent_oracle(p0, p1, config.tol.equiv_tol).at("/paths")?
            } else {
                let model = model_for(&problem.spec)?;
                let d0 = develop(&model, p0, Convention::Right).at("/paths/0")?;
                let d1 = develop(&model, p1, Convention::Right).at("/paths/1")?;
                r.metric("distance", d0.distance(&d1)).cert("model", model.name());
                equivalent_oracle(&model, p0, p1, config.tol.equiv_tol).at("/paths")?
            };
            r.cert("equivalent", equivalent.to_string());
            r.require("equivalent", equivalent);
        }
        _ => return Err(CliError::Usage(format!("unknown action `oracle {action}`"))),
    }
    Ok(r)
}

/// Residual and expected order band of each convergence study.
fn study(name: &str, n: usize, seed: u64) -> Result<(f64, (f64, f64)), CliError> {
    let second = (1.8, 2.2);
    let value = preset(
        match name {
            "tangent-dual" => "tangent-arc",
            "twisted-dual" | "twisted-independence" => "twisted-meridian",
            "circle" => "circle",
            "constant" => "so3",
            _ => return Err(CliError::Usage(format!("unknown convergence study {name:?}"))),
        },
        seed,
    )
    .expect("study presets exist");
    let problem = input::problem(&value, n)?;
    let sheet = || {
        let ctx = SheetContext {
            spec: &problem.spec,
            paths: &problem.paths,
            n_eps: n,
            n_t: n,
            seed,
        };
        input::sheet(problem.sheet.as_ref().expect("sheet preset"), "/sheet", &ctx)
    };
    match name {
        "tangent-dual" | "twisted-dual" => {
            let s = sheet()?;
            let sol = solve_b(&problem.connection, &s).at("/sheet")?;
            Ok((check_dual_apath(&s, &sol, 0.0).max_residual, second))
        }
        "twisted-independence" => {
            let s = sheet()?;
            let zero = Connection::zero(&problem.spec);
            let d = check_connection_independence(&s, &zero, &problem.connection, 0.0).at("/sheet")?;
            Ok((d.max_difference, second))
        }
        "circle" => {
            // eased speed, so the closure gap is a genuine quadrature error
            let p = APath::integrate_base(
                problem.spec.clone(),
                |t| {
                    let (s, ds) = (smoothstep(t), smoothstep_prime(t));
                    vec![2.0 * PI * ds * (2.0 * PI * s).cos(), 2.0 * PI * ds * (2.0 * PI * s).sin()]
                },
                &[0.0, 0.0],
                n,
            )
            .at("")?;
            let (s, t) = p.endpoints();
            let gap = s.iter().zip(&t).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            Ok((gap, (3.5, 4.5)))
        }
        _ => {
            let p = APath::constant(problem.spec.clone(), &[], n).at("")?;
            let sheet = HomotopySheet::constant(&p, n).at("")?;
            let sol = solve_b(&problem.connection, &sheet).at("")?;
            Ok((sol.max_terminal(), second))
        }
    }
}

pub fn convergence(config: &RunConfig) -> Result<Report, CliError> {
    let name = config
        .preset
        .as_deref()
        .ok_or_else(|| CliError::Usage("convergence needs --preset".into()))?;
    let grids = config.grids_or(&[50, 100, 200]);
    let mut residuals = Vec::with_capacity(grids.len());
    let mut band = (0.0, 0.0);
    for &n in &grids {
        let (res, b) = study(name, n, config.seed)?;
        residuals.push(res);
        band = b;
    }
    let order = fit_order(&grids, &residuals).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut r = Report::new("convergence", "cli_runner", "convergence_study", config);
    r.cert("study", name)
        .cert("convergence_order", order.to_string())
        .array("grids", json!(grids))
        .array("residuals", json!(residuals));
    let in_band = match order {
        Order::Exact => true,
        Order::Fitted(p) => {
            r.metric("order", p);
            (band.0..=band.1).contains(&p)
        }
    };
    r.require("order", in_band);
    Ok(r)
}
