//! `period verdict|discrete|member|integral`.

use std::f64::consts::PI;
use std::sync::Arc;

use algebroid_paths::{Algebroid, MeridianSweep};
use num_bigint::BigInt;
use quadratic_field::{
    integrability_verdict, is_discrete, period_group, Discreteness, PeriodGroup, QuadField, QuadNumber, TwistedPathData,
    TwistedSpec, Verdict,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::{At, CliError};
use crate::input::{self, TwistedDoc};
use crate::report::Report;

fn spec_preset(name: &str) -> Option<Value> {
    let lambdas: &[[&str; 2]] = match name {
        "paper-s2xs2" => &[["1", "0"], ["0", "1"]],
        "s2xs2-rational" => &[["1", "0"], ["2", "0"]],
        "s2xs2-proportional" => &[["1", "1"], ["2", "2"]],
        "s2" => &[["1", "0"]],
        "s2-sqrt2" => &[["0", "1"]],
        _ => return None,
    };
    Some(json!({"factors": lambdas.len(), "d": 2, "lambdas": lambdas}))
}

fn member_preset(name: &str) -> Option<Value> {
    let spec = spec_preset("paper-s2xs2")?;
    let doc = match name {
        "sqrt2-member" => json!({"spec": spec, "u0": "sqrt(2)", "u1": "0", "wrap": [0, 1]}),
        "half-member" => json!({"spec": spec, "u0": "1/2", "u1": "0"}),
        "same-member" => json!({"spec": spec, "u0": "3/7", "u1": "3/7", "wrap": [0, 0]}),
        _ => return None,
    };
    Some(doc)
}

fn document(config: &RunConfig, presets: fn(&str) -> Option<Value>) -> Result<Value, CliError> {
    if let Some(first) = config.inputs.first() {
        input::load(first)
    } else if let Some(name) = &config.preset {
        presets(name).ok_or_else(|| CliError::Usage(format!("unknown preset {name:?}")))
    } else {
        Err(CliError::Usage("give --input or --preset".into()))
    }
}

fn twisted_spec(config: &RunConfig) -> Result<TwistedSpec, CliError> {
    let value = document(config, spec_preset)?;
    let doc: TwistedDoc = input::parse_at(&value, "")?;
    doc.to_spec("")
}

fn strings(values: &[QuadNumber]) -> Value {
    json!(values.iter().map(ToString::to_string).collect::<Vec<_>>())
}

pub fn run(config: &RunConfig, action: &str) -> Result<Report, CliError> {
    match action {
        "verdict" => verdict(config),
        "discrete" => discrete(config),
        "member" => member(config),
        "integral" => integral(config),
        _ => Err(CliError::Usage(format!("unknown action `period {action}`"))),
    }
}

/// Strictly decreasing magnitudes, none zero, each of Pell norm `+-1`
/// when the generators are `1` and `sqrt(d)`.
fn verdict(config: &RunConfig) -> Result<Report, CliError> {
    let spec = twisted_spec(config)?;
    let count = config.grid_or(7);
    let v = integrability_verdict(&spec, count);
    let mut r = Report::new("period verdict", "period_lattice", "integrability_verdict", config);
    r.cert("generators", strings(spec.lambdas()));
    match &v {
        Verdict::Integrable { generator } => {
            r.cert("verdict", "Integrable")
                .cert("discreteness", "Discrete")
                .cert("generator", generator.to_string());
            let single = PeriodGroup::new(spec.field(), vec![generator.clone()]).at("")?;
            let generated = generator.is_zero()
                || period_group(&spec)
                    .generators()
                    .iter()
                    .all(|g| matches!(single.membership(g), Ok(Some(_))));
            r.require("generator_spans", generated);
        }
        Verdict::NonIntegrable {
            first,
            second,
            witnesses,
        } => {
            let d = spec.field().d();
            r.cert("verdict", "NonIntegrable")
                .cert("discreteness", "Dense")
                .cert("rank", "2")
                .cert("independent", strings(&[first.clone(), second.clone()]));
            let rows: Vec<Value> = witnesses
                .iter()
                .map(|w| {
                    json!({
                        "p": w.p.to_string(),
                        "q": w.q.to_string(),
                        "element": w.element.to_string(),
                        "pell": w.pell_value(d).to_string(),
                    })
                })
                .collect();
            r.cert("witnesses", Value::Array(rows));
            let decreasing = witnesses
                .windows(2)
                .all(|w| w[1].magnitude() < w[0].magnitude());
            let nonzero = witnesses.iter().all(|w| !w.element.is_zero());
            r.require("witnesses_decrease", decreasing).require("witnesses_nonzero", nonzero);
            let unit_basis = first == &spec.field().one() && second == &spec.field().sqrt_d();
            if unit_basis {
                let one = BigInt::from(1);
                let pell = witnesses.iter().all(|w| {
                    let v = w.pell_value(d);
                    v == one || v == -one.clone()
                });
                r.require("pell_identity", pell);
            }
            if let Some(last) = witnesses.last() {
                r.metric("smallest_witness", last.magnitude().to_f64());
            }
        }
    }
    Ok(r)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorsDoc {
    #[serde(default = "two")]
    d: i64,
    generators: Vec<String>,
}

fn two() -> i64 {
    2
}

fn generators_preset(name: &str) -> Option<Value> {
    let gens: &[&str] = match name {
        "paper-s2xs2" => &["1", "sqrt(2)"],
        "cyclic" => &["2", "4"],
        "proportional" => &["1+sqrt(2)", "2+2*sqrt(2)"],
        "dense-shifted" => &["1", "1+sqrt(2)"],
        _ => return None,
    };
    Some(json!({"d": 2, "generators": gens}))
}

fn discrete(config: &RunConfig) -> Result<Report, CliError> {
    let value = document(config, generators_preset)?;
    let doc: GeneratorsDoc = input::parse_at(&value, "")?;
    let field = QuadField::new(doc.d).at("/d")?;
    let gens = doc
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| field.parse(g).at(&format!("/generators/{i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let group = PeriodGroup::new(field, gens).at("/generators")?;
    let mut r = Report::new("period discrete", "period_lattice", "is_discrete", config);
    r.cert("generators", strings(group.generators()))
        .cert("rank", group.rank().to_string());
    match is_discrete(&group) {
        Discreteness::Discrete { generator } => {
            r.cert("discreteness", "Discrete").cert("generator", generator.to_string());
        }
        Discreteness::Dense { first, second } => {
            r.cert("discreteness", "Dense").cert("independent", strings(&[first, second]));
        }
    }
    Ok(r)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MemberDoc {
    spec: Value,
    u0: String,
    u1: String,
    #[serde(default)]
    wrap: Option<Vec<i64>>,
}

fn member(config: &RunConfig) -> Result<Report, CliError> {
    let value = document(config, member_preset)?;
    let doc: MemberDoc = input::parse_at(&value, "")?;
    let twisted: TwistedDoc = input::parse_at(&doc.spec, "/spec")?;
    let spec = twisted.to_spec("/spec")?;
    let d = spec.field().d();
    let data = |u: &str, pointer: &str| -> Result<TwistedPathData, CliError> {
        if u.contains('.') {
            return Err(CliError::schema(pointer, "u-integrals must be exact, not floating point"));
        }
        Ok(TwistedPathData {
            source: "north".into(),
            target: "south".into(),
            u_integral: QuadNumber::parse(u, d).at(pointer)?,
        })
    };
    let (p0, p1) = (data(&doc.u0, "/u0")?, data(&doc.u1, "/u1")?);
    let mut r = Report::new("period member", "period_lattice", "equivalence_twisted", config);
    let diff = p0.u_integral.try_add(&-&p1.u_integral).at("")?;
    r.cert("difference", diff.to_string());
    let equivalent = match &doc.wrap {
        Some(wrap) => {
            r.cert("wrap", json!(wrap.iter().map(ToString::to_string).collect::<Vec<_>>()));
            quadratic_field::equivalence_twisted(&spec, &p0, &p1, wrap).at("/wrap")?
        }
        None => {
            let class = spec.connecting_class(&p0, &p1).at("")?;
            if let Some(c) = &class {
                r.cert("wrap", json!(c.iter().map(ToString::to_string).collect::<Vec<_>>()));
            }
            class.is_some()
        }
    };
    r.cert("equivalent", equivalent.to_string());
    r.require("equivalent", equivalent);
    Ok(r)
}

fn integral(config: &RunConfig) -> Result<Report, CliError> {
    let spec = twisted_spec(config)?;
    let lambdas: Vec<f64> = spec.lambdas().iter().map(QuadNumber::to_f64).collect();
    let algebroid = Arc::new(Algebroid::twisted_surface(lambdas.clone()));
    let sweep = MeridianSweep::full(algebroid).at("")?;
    let n = config.grid_or(400);
    if !n.is_multiple_of(2) {
        return Err(CliError::Usage(format!("Simpson quadrature needs an even grid, got {n}")));
    }
    let (area, flux) = sweep.integrals(n);
    let expected: f64 = lambdas.iter().map(|l| 4.0 * PI * l).sum();
    let mut r = Report::new("period integral", "period_lattice", "twisted_homotopy_integral", config);
    r.metric("area", area)
        .metric("u_difference", flux)
        .metric("expected", expected)
        .metric("area_error", (area - expected).abs())
        .metric("u_error", (flux - expected).abs())
        .cert("lambdas", strings(spec.lambdas()));
    r.require("area", (area - expected).abs() <= config.tol.quad_tol)
        .require("u_difference", (flux - expected).abs() <= config.tol.quad_tol);
    Ok(r)
}
