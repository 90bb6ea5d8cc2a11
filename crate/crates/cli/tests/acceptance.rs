//! Acceptance battery: one PASS/FAIL line per criterion. Each criterion runs
//! through the library exactly as `weinstein paper-suite --preset <name>`
//! would, then gets a few checks computed here independently of the crates.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use serde_json::Value;
use weinstein_cli::suite::{criterion, CRITERIA};
use weinstein_cli::{Report, RunConfig};

fn cert<'a>(r: &'a Report, key: &str) -> Option<&'a Value> {
    r.certificates.get(key)
}

/// Searches the report tree for the first child carrying `key`.
fn find_cert<'a>(r: &'a Report, key: &str) -> Option<&'a Value> {
    cert(r, key).or_else(|| r.children.iter().find_map(|c| find_cert(c, key)))
}

/// Solutions of `p^2 - 2 q^2 = +-1` from the recurrence `(p, q) -> (p + 2q, p + q)`.
fn pell_pairs(count: usize) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let (mut p, mut q) = (1i64, 1i64);
    for _ in 0..count {
        (p, q) = (p + 2 * q, p + q);
        out.push((p, q));
    }
    out
}

fn extra_checks(index: usize, r: &Report) -> Vec<String> {
    let mut failures = Vec::new();
    let mut want = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };
    match index {
        1 => {
            let child = &r.children[0];
            want(cert(child, "value").and_then(Value::as_str) == Some("(-1,-1)"), "obstruction value");
            want(cert(child, "is_identity").and_then(Value::as_str) == Some("false"), "obstruction not identity");
        }
        2 => {
            want(cert(r, "two_morphism_count").and_then(Value::as_str) == Some("2"), "two 2-morphisms");
        }
        3 => {
            let rows = find_cert(r, "witnesses").and_then(Value::as_array).cloned().unwrap_or_default();
            let listed: Vec<(i64, i64)> = rows
                .iter()
                .filter_map(|w| Some((w["p"].as_str()?.parse().ok()?, w["q"].as_str()?.parse().ok()?)))
                .collect();
            want(listed == pell_pairs(7), "witnesses are the Pell convergents");
            let signs = rows.iter().all(|w| {
                let (p, q): (i64, i64) = (
                    w["p"].as_str().and_then(|s| s.parse().ok()).unwrap_or(0),
                    w["q"].as_str().and_then(|s| s.parse().ok()).unwrap_or(0),
                );
                w["pell"].as_str().and_then(|s| s.parse::<i64>().ok()) == Some(p * p - 2 * q * q)
            });
            want(signs, "reported Pell values");
            // |p - q sqrt 2| = |p^2 - 2 q^2| / (p + q sqrt 2) and sqrt 2 > 7/5
            let gap_ok = listed.last().is_some_and(|&(p, q)| {
                (p * p - 2 * q * q).abs() == 1 && 9 * (5 * p + 7 * q) > 50_000
            });
            want(gap_ok, "last witness within 9/10000");
        }
        9 => {
            let expected = [12.566_370_614_359_172, 17.771_531_752_633_464];
            for (child, e) in r.children.iter().zip(expected) {
                let area = child.metrics.get("area").copied().unwrap_or(f64::NAN);
                let u = child.metrics.get("u_difference").copied().unwrap_or(f64::NAN);
                want((area - e).abs() <= 1e-6 && (u - e).abs() <= 1e-6, "integrals equal 4 pi lambda");
            }
        }
        _ => {}
    }
    failures
}

fn limit(index: usize) -> Option<Duration> {
    match index {
        1..=3 => Some(Duration::from_secs(1)),
        4 => Some(Duration::from_secs(60)),
        10 => Some(Duration::from_secs(10)),
        _ => None,
    }
}

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, name) in CRITERIA.iter().enumerate() {
        let index = i + 1;
        let config = RunConfig::new(&["paper-suite"]).with_preset(name);
        let start = Instant::now();
        let outcome = criterion(name, &config);
        let elapsed = start.elapsed();
        let mut reasons = Vec::new();
        match &outcome {
            Ok(report) => {
                if !report.pass {
                    reasons.extend(
                        report
                            .certificates
                            .iter()
                            .filter(|(k, v)| k.starts_with("check.") && **v == Value::Bool(false))
                            .map(|(k, _)| k.clone()),
                    );
                    if reasons.is_empty() {
                        reasons.push("report failed".into());
                    }
                }
                reasons.extend(extra_checks(index, report));
            }
            Err(e) => reasons.push(format!("error: {e}")),
        }
        if let Some(max) = limit(index) {
            if elapsed > max {
                reasons.push(format!("took longer than {max:?}"));
            }
        }
        let verdict = if reasons.is_empty() { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {index}: {name} ({} ms)", elapsed.as_millis());
        for r in &reasons {
            println!("    {r}");
        }
        failed += usize::from(!reasons.is_empty());
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
