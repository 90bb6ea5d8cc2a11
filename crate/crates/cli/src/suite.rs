//! The acceptance battery. Every criterion is a named preset of
//! `paper-suite`; the full suite runs them concurrently and aggregates in
//! the fixed order of [`CRITERIA`].

use std::sync::Arc;

use algebroid_paths::families::associator_triple;
use algebroid_paths::{
    check_connection_independence, develop, APath, equivalent_oracle, is_homotopy, random_path, Algebroid, Connection,
    Convention, HomotopySheet, LieFamily, MatrixModel, MeridianSweep, Rescaling, Variation,
};
use finite_groupoid::{find_two_morphism, Bibundle, FiniteGroupoid, Homomorphism};
use num_bigint::BigInt;
use num_rational::BigRational;
use quadratic_field::{QuadField, QuadNumber};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::commands::{self, groupoid, numeric, period};
use crate::config::RunConfig;
use crate::error::{At, CliError};
use crate::report::Report;

pub const CRITERIA: [&str; 11] = [
    "associator-obstruction",
    "bz2-axioms",
    "period-verdicts",
    "oracle-agreement",
    "development-homomorphism",
    "connection-independence",
    "dual-apath",
    "associator-homotopy",
    "twisted-integral",
    "groupoid-laws",
    "exact-arithmetic",
];

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    if let Some(name) = &config.preset {
        return criterion(name, config);
    }
    let results: Vec<Result<Report, CliError>> = std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|name| s.spawn(move || criterion(name, config)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });
    let mut r = Report::new("paper-suite", "cli_runner", "run", config);
    for child in results {
        let child = child?;
        r.pass &= child.pass;
        r.children.push(child);
    }
    r.cert(
        "passed",
        format!("{}/{}", r.children.iter().filter(|c| c.pass).count(), r.children.len()),
    );
    Ok(r)
}

/// Runs one criterion by name.
pub fn criterion(name: &str, config: &RunConfig) -> Result<Report, CliError> {
    let mut r = Report::new(name, "cli_runner", "paper-suite", config);
    match name {
        "associator-obstruction" => associator_obstruction(&mut r)?,
        "bz2-axioms" => bz2_axioms(&mut r)?,
        "period-verdicts" => period_verdicts(&mut r)?,
        "oracle-agreement" => oracle_agreement(&mut r)?,
        "development-homomorphism" => development_homomorphism(&mut r)?,
        "connection-independence" => connection_independence(&mut r)?,
        "dual-apath" => dual_apath(&mut r)?,
        "associator-homotopy" => associator_homotopy(&mut r)?,
        "twisted-integral" => twisted_integral(&mut r)?,
        "groupoid-laws" => groupoid_laws(&mut r)?,
        "exact-arithmetic" => exact_arithmetic(&mut r, config.seed),
        _ => return Err(CliError::Usage(format!("unknown criterion {name:?}"))),
    }
    Ok(r)
}

fn cert_str<'a>(r: &'a Report, key: &str) -> &'a str {
    r.certificates.get(key).and_then(Value::as_str).unwrap_or("")
}

fn associator_obstruction(r: &mut Report) -> Result<(), CliError> {
    let cfg = RunConfig::new(&["groupoid", "associator"])
        .with_preset("z2-star-bz2")
        .with_input("1,1,1,-1");
    let child = commands::dispatch(&cfg)?;
    r.require("value", cert_str(&child, "value") == "(-1,-1)")
        .require("not_identity", cert_str(&child, "is_identity") == "false")
        .require("identity_value", cert_str(&child, "expected_identity") == "(-1,1)");
    let ones = RunConfig::new(&["groupoid", "associator"])
        .with_preset("z2-star-bz2")
        .with_input("1,1,1,1");
    let ones = commands::dispatch(&ones)?;
    r.require("all_ones_is_identity", ones.pass);
    r.children.push(child);
    Ok(())
}

fn bz2_axioms(r: &mut Report) -> Result<(), CliError> {
    let w = groupoid::weinstein_preset("bz2").expect("preset");
    let report = w.check();
    let g = &w.presentation;
    let k = g.num_objects();
    let identity_alpha = (0..k * k * k).all(|i| w.alpha(i / (k * k), i / k % k, i % k).is_some_and(|a| g.is_unit(a)));
    r.require("axioms", report.pass).require("alpha_is_identity", identity_alpha);
    let cfg = RunConfig::new(&["groupoid", "two-morphisms"]).with_preset("z2-identity");
    let child = commands::dispatch(&cfg)?;
    r.cert("two_morphism_count", cert_str(&child, "count").to_string());
    r.require("two_morphism_count", cert_str(&child, "count") == "2");
    r.children.push(child);
    Ok(())
}

fn period_verdicts(r: &mut Report) -> Result<(), CliError> {
    let dense = period::run(&RunConfig::new(&["period", "verdict"]).with_preset("paper-s2xs2"), "verdict")?;
    let discrete = period::run(&RunConfig::new(&["period", "verdict"]).with_preset("s2xs2-rational"), "verdict")?;
    r.require("dense", cert_str(&dense, "verdict") == "NonIntegrable" && cert_str(&dense, "rank") == "2")
        .require("dense_certificate", dense.pass)
        .require("discrete", cert_str(&discrete, "verdict") == "Integrable")
        .require("generator", cert_str(&discrete, "generator") == "1");
    let pq: Vec<(String, String)> = dense
        .certificates
        .get("witnesses")
        .and_then(Value::as_array)
        .map(|rows| {
            rows.iter()
                .map(|w| (w["p"].as_str().unwrap_or("").to_string(), w["q"].as_str().unwrap_or("").to_string()))
                .collect()
        })
        .unwrap_or_default();
    let last_q = pq.last().map(|(_, q)| q.as_str()) == Some("408");
    r.require("witnesses_reach_408", last_q);
    // |577 - 408 sqrt 2| < 9/10000, compared exactly
    let f = QuadField::new(2).expect("field");
    let gap = (&f.int(577) - &(&f.int(408) * &f.sqrt_d())).abs();
    let bound = f.ratio(9, 10000, 0, 1);
    r.cert("gap_577_408", gap.to_string());
    r.require("gap_bound", gap < bound);
    r.children.push(dense);
    r.children.push(discrete);
    Ok(())
}

fn oracle_agreement(r: &mut Report) -> Result<(), CliError> {
    let spec = Arc::new(Algebroid::so3());
    let model = MatrixModel::su2();
    let zero = Connection::zero(&spec);
    let mut agree = 0;
    let mut labelled = 0;
    let mut terminals = Vec::new();
    for k in 0..20u64 {
        let variation = if k < 10 { Variation::Gauge } else { Variation::Shift };
        let family = LieFamily::random(spec.clone(), k, variation, 0.5).at("")?;
        let sheet = family.sheet(200, 200).at("")?;
        let h = is_homotopy(&zero, &sheet, 1e-5).at("")?;
        let oracle = equivalent_oracle(&model, &sheet.row(0), &sheet.row(200), 1e-6).at("")?;
        terminals.push(h.max_terminal);
        agree += usize::from(h.pass == oracle);
        labelled += usize::from(oracle == (variation == Variation::Gauge));
    }
    r.cert("agreements", format!("{agree}/20"))
        .cert("expected_labels", format!("{labelled}/20"))
        .array("max_terminal", json!(terminals));
    r.require("agreement", agree == 20).require("labels", labelled == 20);
    Ok(())
}

fn development_homomorphism(r: &mut Report) -> Result<(), CliError> {
    let spec = Arc::new(Algebroid::so3());
    let model = MatrixModel::su2();
    let dev = |p: &APath| develop(&model, p, Convention::Right).map(|d| d.matrix);
    let (mut worst_concat, mut worst_inverse) = (0.0f64, 0.0f64);
    for seed in 0..10u64 {
        let a0 = random_path(spec.clone(), 2 * seed, 1.0, &[], 2000).at("")?;
        let a1 = random_path(spec.clone(), 2 * seed + 1, 1.0, &[], 2000).at("")?;
        let joined = a0.concat(&a1, 1e-12).at("")?;
        let lhs = dev(&joined).at("")?;
        let rhs = dev(&a0).at("")? * dev(&a1).at("")?;
        worst_concat = worst_concat.max((lhs - rhs).norm());
        let round = dev(&a0).at("")? * dev(&a0.invert()).at("")?;
        let id = algebroid_paths::oracle::CMat::identity(2, 2);
        worst_inverse = worst_inverse.max((round - id).norm());
    }
    r.metric("concat_error", worst_concat).metric("inverse_error", worst_inverse);
    r.require("concat", worst_concat <= 1e-8).require("inverse", worst_inverse <= 1e-8);
    Ok(())
}

fn connection_independence(r: &mut Report) -> Result<(), CliError> {
    let spec = Arc::new(Algebroid::twisted_surface(vec![1.0]));
    let sweep = MeridianSweep::full(spec.clone()).at("")?;
    let zero = Connection::zero(&spec);
    let random = Connection::random(&spec, 1, 0.1);
    let diff = |n| -> Result<f64, CliError> {
        let sheet = sweep.sheet(n, n).at("")?;
        Ok(check_connection_independence(&sheet, &zero, &random, 0.0).at("")?.max_difference)
    };
    let (d100, d200) = (diff(100)?, diff(200)?);
    let ratio = d100 / d200;
    r.metric("difference_100", d100).metric("difference_200", d200).metric("ratio", ratio);
    r.require("difference", d100 <= 1e-3).require("ratio", (3.0..=5.0).contains(&ratio));
    Ok(())
}

fn dual_apath(r: &mut Report) -> Result<(), CliError> {
    for study in ["tangent-dual", "twisted-dual"] {
        let cfg = RunConfig::new(&["convergence"]).with_preset(study).with_grid(&[50, 100, 200]);
        let child = numeric::convergence(&cfg)?;
        if let Some(p) = child.metrics.get("order") {
            r.metric(&format!("{study}.order"), *p);
        }
        r.require(study, child.pass);
        r.children.push(child);
    }
    Ok(())
}

fn associator_homotopy(r: &mut Report) -> Result<(), CliError> {
    let spec = Arc::new(Algebroid::so3());
    let zero = Connection::zero(&spec);
    let mut worst = 0.0f64;
    for seed in 0..5u64 {
        let [a1, a2, a3] = associator_triple(spec.clone(), seed, 1600).at("")?;
        let sheet = HomotopySheet::associator(&a1, &a2, &a3, 400, 1600, Rescaling::Quintic, 1e-9).at("")?;
        let h = is_homotopy(&zero, &sheet, 1e-5).at("")?;
        r.metric(&format!("terminal.seed{seed}"), h.max_terminal);
        worst = worst.max(h.max_terminal);
        r.require(&format!("seed{seed}"), h.pass);
    }
    r.metric("worst_terminal", worst);
    let cfg = RunConfig::new(&["homotopy", "associator"])
        .with_preset("su2-zero-associator")
        .with_grid(&[400, 100]);
    let child = commands::dispatch(&cfg)?;
    let exact = child.metrics.get("max_terminal") == Some(&0.0);
    r.require("zero_triple_exact", exact);
    r.children.push(child);
    Ok(())
}

fn twisted_integral(r: &mut Report) -> Result<(), CliError> {
    for preset in ["s2", "s2-sqrt2"] {
        let cfg = RunConfig::new(&["period", "integral"]).with_preset(preset).with_grid(&[400]);
        let child = period::run(&cfg, "integral")?;
        r.require(preset, child.pass);
        r.children.push(child);
    }
    Ok(())
}

type G = Arc<FiniteGroupoid>;

/// Isomorphism between one-object groups of order at most two.
fn small_group_iso(from: &FiniteGroupoid, to: &FiniteGroupoid) -> Result<Homomorphism, CliError> {
    let arrows = (0..from.num_arrows())
        .map(|a| {
            if from.is_unit(a) {
                to.unit(0)
            } else {
                (0..to.num_arrows()).find(|&b| !to.is_unit(b)).unwrap_or(0)
            }
        })
        .collect();
    Homomorphism::new(from, to, vec![0], arrows).at("")
}

fn groupoid_laws(r: &mut Report) -> Result<(), CliError> {
    let pt: G = Arc::new(FiniteGroupoid::point());
    let z2: G = Arc::new(FiniteGroupoid::z2());
    let p2: G = Arc::new(FiniteGroupoid::pair(2));
    let p3: G = Arc::new(FiniteGroupoid::pair(3));
    let zp: G = Arc::new(FiniteGroupoid::product(&z2, &FiniteGroupoid::pair(2)));
    // each member with a Morita bibundle to its class representative
    let pool: Vec<(&str, G, G)> = vec![
        ("pt", pt.clone(), pt.clone()),
        ("pair2", p2.clone(), pt.clone()),
        ("pair3", p3.clone(), pt.clone()),
        ("Z2", z2.clone(), z2.clone()),
        ("Z2xpair2", zp.clone(), z2.clone()),
    ];
    let mut to_rep = Vec::new();
    for (name, g, rep) in &pool {
        let (restrict, sub) = Bibundle::restriction(g.clone(), &[0]);
        let iso = small_group_iso(&sub, rep)?;
        let e = restrict.compose(&Bibundle::from_homomorphism(sub, rep.clone(), &iso).at("")?).at("")?;
        to_rep.push((*name, g.clone(), rep.clone(), e));
    }
    let reflexive = pool.iter().all(|(_, g, _)| Bibundle::identity(g.clone()).is_morita());
    let symmetric = to_rep.iter().all(|(_, _, _, e)| e.is_morita() && e.flip().is_morita());
    let mut transitive = true;
    let mut triples = 0;
    for (_, _, ra, ea) in &to_rep {
        for (_, _, rb, eb) in &to_rep {
            if !Arc::ptr_eq(ra, rb) {
                continue;
            }
            let ab = ea.compose(&eb.flip()).at("")?;
            transitive &= ab.is_morita();
            for (_, _, rc, ec) in &to_rep {
                if !Arc::ptr_eq(rc, rb) {
                    continue;
                }
                let ac = ab.compose(&eb.compose(&ec.flip()).at("")?).at("")?;
                transitive &= ac.is_morita();
                triples += 1;
            }
        }
    }
    let pair_map = |from: &G, to: &G, objs: Vec<usize>| -> Result<Homomorphism, CliError> {
        let (n, m) = (from.num_objects(), to.num_objects());
        let arrows = (0..n * n).map(|a| objs[a / n] * m + objs[a % n]).collect();
        Homomorphism::new(from, to, objs, arrows).at("")
    };
    let homs: Vec<(G, G, Homomorphism)> = vec![
        (p2.clone(), p3.clone(), pair_map(&p2, &p3, vec![2, 0])?),
        (p3.clone(), p2.clone(), pair_map(&p3, &p2, vec![1, 0, 1])?),
        (p3.clone(), p3.clone(), pair_map(&p3, &p3, vec![1, 2, 0])?),
        (p2.clone(), pt.clone(), Homomorphism::new(&p2, &pt, vec![0, 0], vec![0; 4]).at("")?),
        // (g, (i, j)) sits at index 4g + 2i + j
        (z2.clone(), zp.clone(), Homomorphism::new(&z2, &zp, vec![1], vec![3, 7]).at("")?),
        (zp.clone(), z2.clone(), Homomorphism::new(&zp, &z2, vec![0, 0], (0..8).map(|a| a / 4).collect()).at("")?),
        (z2.clone(), z2.clone(), Homomorphism::identity(&z2)),
        (z2.clone(), pt.clone(), Homomorphism::new(&z2, &pt, vec![0], vec![0, 0]).at("")?),
    ];
    let mut functorial = true;
    let mut pairs = 0;
    for (g, h, f) in &homs {
        for (h2, k, f2) in &homs {
            if !Arc::ptr_eq(h, h2) {
                continue;
            }
            let lhs = Bibundle::from_homomorphism(g.clone(), h.clone(), f)
                .at("")?
                .compose(&Bibundle::from_homomorphism(h.clone(), k.clone(), f2).at("")?)
                .at("")?;
            let rhs = Bibundle::from_homomorphism(g.clone(), k.clone(), &f.then(f2)).at("")?;
            functorial &= find_two_morphism(&lhs, &rhs).is_some();
            pairs += 1;
        }
    }
    r.cert("pool", json!(pool.iter().map(|p| p.0).collect::<Vec<_>>()))
        .cert("transitivity_triples", triples.to_string())
        .cert("composable_pairs", pairs.to_string());
    r.require("reflexive", reflexive)
        .require("symmetric", symmetric)
        .require("transitive", transitive)
        .require("functorial", functorial);
    Ok(())
}

fn random_quad(rng: &mut ChaCha8Rng) -> QuadNumber {
    let rational = |rng: &mut ChaCha8Rng| {
        BigRational::new(BigInt::from(rng.random_range(-60i64..=60)), BigInt::from(rng.random_range(1i64..=25)))
    };
    let p = rational(rng);
    let q = rational(rng);
    QuadNumber::new(p, q, 2)
}

fn exact_arithmetic(r: &mut Report, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf1e1d);
    let field = QuadField::new(2).expect("field");
    let (zero, one) = (field.zero(), field.one());
    let mut passed = 0u32;
    let total = 10_000u32;
    for _ in 0..total {
        let (x, y, z) = (random_quad(&mut rng), random_quad(&mut rng), random_quad(&mut rng));
        let mut ok = &(&x + &y) + &z == &x + &(&y + &z)
            && &(&x * &y) * &z == &x * &(&y * &z)
            && &x + &y == &y + &x
            && &x * &y == &y * &x
            && &x * &(&y + &z) == &(&x * &y) + &(&x * &z)
            && &x + &zero == x
            && &x * &one == x
            && (&x + &(-&x)).is_zero()
            && (&x * &y).norm() == x.norm() * y.norm();
        if !x.is_zero() {
            ok &= x.inv().is_ok_and(|inv| &x * &inv == one);
        } else {
            ok &= x.inv().is_err();
        }
        ok &= x.norm() == (&x * &x.conjugate()).rational_part().clone() && (&x * &x.conjugate()).is_rational();
        passed += u32::from(ok);
    }
    r.cert("checks", format!("{passed}/{total}"));
    r.require("field_axioms", passed == total);
}
