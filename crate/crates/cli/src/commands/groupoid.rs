//! `groupoid check|compose|morita|two-morphisms|weinstein|associator`.

use std::sync::Arc;

use finite_groupoid::json::{BibundleDoc, GroupoidDoc, HomomorphismDoc, WeinsteinDoc};
use finite_groupoid::{
    bz2, count_two_morphisms, find_two_morphism, point, two_morphisms, z2_star_bz2, Bibundle, FaceRule,
    FiniteGroupoid, Homomorphism, WeinsteinGroupoid,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::{At, CliError};
use crate::input;
use crate::report::Report;

pub fn groupoid_preset(name: &str) -> Option<FiniteGroupoid> {
    Some(match name {
        "point" => FiniteGroupoid::point(),
        "z2" => FiniteGroupoid::z2(),
        "z3" => FiniteGroupoid::cyclic(3),
        "pair2" => FiniteGroupoid::pair(2),
        "pair3" => FiniteGroupoid::pair(3),
        "z2xpair2" => FiniteGroupoid::product(&FiniteGroupoid::z2(), &FiniteGroupoid::pair(2)),
        "z2-star-bz2" => (*z2_star_bz2().presentation).clone(),
        _ => return None,
    })
}

pub fn weinstein_preset(name: &str) -> Option<WeinsteinGroupoid> {
    match name {
        "bz2" => Some(bz2()),
        "point" => Some(point()),
        "z2-star-bz2" => Some(z2_star_bz2()),
        "bz3" => finite_groupoid::abelian_bg(FiniteGroupoid::cyclic(3)).ok(),
        _ => None,
    }
}

/// Bibundles from homomorphisms between small groupoids.
pub fn bibundle_preset(name: &str) -> Option<Bibundle> {
    let z2 = Arc::new(FiniteGroupoid::z2());
    let pt = Arc::new(FiniteGroupoid::point());
    Some(match name {
        "z2-identity" => Bibundle::identity(z2),
        "z2-inversion" => {
            let inv = Homomorphism::new(&z2, &z2, vec![0], vec![z2.inv(0), z2.inv(1)]).ok()?;
            Bibundle::from_homomorphism(z2.clone(), z2, &inv).ok()?
        }
        "z2-to-point" => {
            let f = Homomorphism::new(&z2, &pt, vec![0], vec![0, 0]).ok()?;
            Bibundle::from_homomorphism(z2, pt, &f).ok()?
        }
        "pair3-to-point" => {
            let p3 = Arc::new(FiniteGroupoid::pair(3));
            let f = Homomorphism::new(&p3, &pt, vec![0; 3], vec![0; 9]).ok()?;
            Bibundle::from_homomorphism(p3, pt, &f).ok()?
        }
        _ => return None,
    })
}

fn source(config: &RunConfig) -> Result<Option<Value>, CliError> {
    match config.inputs.first() {
        Some(first) => input::load(first).map(Some),
        None if config.preset.is_some() => Ok(None),
        None => Err(CliError::Usage("give --input or --preset".into())),
    }
}

fn unknown(config: &RunConfig) -> CliError {
    CliError::Usage(format!("unknown preset {:?}", config.preset.as_deref().unwrap_or("")))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FromHomomorphismDoc {
    from: GroupoidDoc,
    to: GroupoidDoc,
    homomorphism: HomomorphismDoc,
}

/// A bibundle document, or `{"from", "to", "homomorphism"}`.
fn bibundle(value: &Value, pointer: &str) -> Result<Bibundle, CliError> {
    if value.get("homomorphism").is_some() {
        let doc: FromHomomorphismDoc = input::parse_at(value, pointer)?;
        let g = Arc::new(doc.from.to_groupoid().at(&format!("{pointer}/from"))?);
        let h = Arc::new(doc.to.to_groupoid().at(&format!("{pointer}/to"))?);
        let f = doc.homomorphism.to_homomorphism(&g, &h).at(&format!("{pointer}/homomorphism"))?;
        Bibundle::from_homomorphism(g, h, &f).at(pointer)
    } else {
        let doc: BibundleDoc = input::parse_at(value, pointer)?;
        doc.to_bibundle().at(pointer)
    }
}

fn pair_of_bibundles(config: &RunConfig) -> Result<(Bibundle, Bibundle), CliError> {
    match source(config)? {
        Some(v) => {
            let first = v.get("first").ok_or_else(|| CliError::schema("", "missing field `first`"))?;
            let second = v.get("second").ok_or_else(|| CliError::schema("", "missing field `second`"))?;
            Ok((bibundle(first, "/first")?, bibundle(second, "/second")?))
        }
        None => {
            let name = config.preset.as_deref().unwrap_or("");
            let (a, b) = name.split_once('+').unwrap_or((name, name));
            let a = bibundle_preset(a).ok_or_else(|| unknown(config))?;
            let b = bibundle_preset(b).ok_or_else(|| unknown(config))?;
            Ok((a, b))
        }
    }
}

fn describe_bibundle(r: &mut Report, e: &Bibundle) {
    r.cert("size", e.len().to_string())
        .cert("principal", e.is_principal().to_string())
        .cert("left_principal", e.is_left_principal().to_string())
        .cert("morita", e.is_morita().to_string())
        .cert("elements", json!(e.elements()));
}

fn weinstein(config: &RunConfig) -> Result<WeinsteinGroupoid, CliError> {
    match source(config)? {
        Some(v) => {
            let doc: WeinsteinDoc = input::parse_at(&v, "")?;
            doc.to_weinstein().at("")
        }
        None => weinstein_preset(config.preset.as_deref().unwrap_or("")).ok_or_else(|| unknown(config)),
    }
}

pub fn run(config: &RunConfig, action: &str) -> Result<Report, CliError> {
    let mut r = Report::new(&format!("groupoid {action}"), "groupoid_calculus", action, config);
    match action {
        "check" => {
            let g = match source(config)? {
                Some(v) => {
                    let doc: GroupoidDoc = input::parse_at(&v, "")?;
                    doc.to_groupoid().at("")?
                }
                None => groupoid_preset(config.preset.as_deref().unwrap_or("")).ok_or_else(|| unknown(config))?,
            };
            let orbits: Vec<Vec<&str>> = g
                .orbits()
                .iter()
                .map(|o| o.iter().map(|&x| g.object_label(x)).collect())
                .collect();
            r.cert("objects", g.num_objects().to_string())
                .cert("arrows", g.num_arrows().to_string())
                .cert("orbits", json!(orbits))
                .cert(
                    "isotropy",
                    json!((0..g.num_objects()).map(|x| g.isotropy_order(x).to_string()).collect::<Vec<_>>()),
                );
        }
        "compose" => {
            let (e, f) = pair_of_bibundles(config)?;
            let c = e.compose(&f).at("")?;
            describe_bibundle(&mut r, &c);
            r.cert("bibundle", serde_json::to_value(BibundleDoc::from_bibundle(&c)).expect("documents serialise"));
        }
        "morita" => {
            let e = match source(config)? {
                Some(v) => bibundle(&v, "")?,
                None => bibundle_preset(config.preset.as_deref().unwrap_or("")).ok_or_else(|| unknown(config))?,
            };
            describe_bibundle(&mut r, &e);
            r.require("principal", e.is_principal()).require("morita", e.is_morita());
        }
        "two-morphisms" => {
            let (e, f) = pair_of_bibundles(config)?;
            let count = count_two_morphisms(&e, &f);
            r.cert("count", count.to_string());
            if let Some(first) = find_two_morphism(&e, &f) {
                let map: Vec<String> = first
                    .map
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| format!("{}->{}", e.elements()[x], f.elements()[y]))
                    .collect();
                r.cert("first", json!(map));
            }
            let listed: Vec<Vec<usize>> = two_morphisms(&e, &f, 16).into_iter().map(|t| t.map).collect();
            r.array("maps", json!(listed));
            r.require("exists", count > 0);
        }
        "weinstein" => {
            let w = weinstein(config)?;
            let report = w.check();
            for axiom in &report.axioms {
                let two = axiom.two_morphism.as_ref().map(|comps| {
                    comps.iter().map(|(x, a)| format!("{x}:{a}")).collect::<Vec<_>>()
                });
                r.cert(
                    &format!("axiom.{}", axiom.name),
                    json!({
                        "holds": axiom.holds,
                        "strict": axiom.strict,
                        "count": axiom.count.to_string(),
                        "restricts_to_identity": axiom.restricts_to_identity,
                        "two_morphism": two,
                    }),
                );
            }
            r.cert("etale", w.etale.to_string());
            r.require("axioms", report.pass);
        }
        "associator" => associator(config, &mut r)?,
        _ => return Err(CliError::Usage(format!("unknown action `groupoid {action}`"))),
    }
    Ok(r)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AssociatorDoc {
    weinstein: WeinsteinDoc,
    quadruple: [String; 4],
    #[serde(default)]
    rule: Option<String>,
}

fn face_rule(name: Option<&str>, pointer: &str) -> Result<FaceRule, CliError> {
    match name {
        None | Some("absorbed") => Ok(FaceRule::Absorbed),
        Some("whiskered") => Ok(FaceRule::Whiskered),
        Some(other) => Err(CliError::schema(pointer, format!("unknown face rule {other:?}"))),
    }
}

/// `--preset <weinstein> --input "x1,x2,x3,x4"` or a document with the
/// structure and the quadruple.
fn associator(config: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let inline = config
        .inputs
        .first()
        .filter(|s| !std::path::Path::new(s).is_file() && !s.trim_start().starts_with('{'));
    let (w, labels, rule) = match (inline, &config.preset) {
        (Some(list), Some(name)) => {
            let w = weinstein_preset(name).ok_or_else(|| unknown(config))?;
            let labels: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
            let rule = face_rule(config.inputs.get(1).map(String::as_str), "/rule")?;
            (w, labels, rule)
        }
        _ => {
            let value = input::load(config.inputs.first().ok_or_else(|| {
                CliError::Usage("give --preset with an inline quadruple, or an --input document".into())
            })?)?;
            let doc: AssociatorDoc = input::parse_at(&value, "")?;
            let w = doc.weinstein.to_weinstein().at("/weinstein")?;
            (w, doc.quadruple.to_vec(), face_rule(doc.rule.as_deref(), "/rule")?)
        }
    };
    if labels.len() != 4 {
        return Err(CliError::schema("/quadruple", format!("expected 4 objects, got {}", labels.len())));
    }
    let mut quad = [0; 4];
    for (i, l) in labels.iter().enumerate() {
        quad[i] = w
            .presentation
            .object(l)
            .ok_or_else(|| CliError::schema(&format!("/quadruple/{i}"), format!("unknown object {l:?}")))?;
    }
    let o = w.associator_obstruction(quad, rule).at("/quadruple")?;
    r.cert("quadruple", json!(labels))
        .cert("rule", if rule == FaceRule::Absorbed { "absorbed" } else { "whiskered" })
        .cert("faces", json!(o.faces))
        .cert("value", o.composite.as_str())
        .cert("expected_identity", o.expected_identity.as_str())
        .cert("is_identity", o.is_identity.to_string());
    r.require("is_identity", o.is_identity);
    Ok(())
}
