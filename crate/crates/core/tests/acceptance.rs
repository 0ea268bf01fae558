//! One pass/fail line per acceptance criterion.
//!
//! Criteria 1-7 run the claim registry on a shared context; criterion 8 runs the
//! property suites. Each line also reports the elapsed time against its budget.
//! The test asserts every criterion except the documented mismatch in the listed
//! tau fixed points, which is asserted to fail in exactly the known way.

mod props;

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use dpcy::claims::{run_claims, ClaimReport, Context, Status};
use dpcy::numsolve::Config;
use serde_json::{json, Value};

struct Criterion {
    number: u32,
    claims: &'static [&'static str],
    budget: Duration,
}

const fn mins(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

const CRITERIA: [Criterion; 7] = [
    Criterion { number: 1, claims: &["delpezzo-embedding", "delpezzo-ideal", "delpezzo-dimension-degree"], budget: mins(2) },
    Criterion { number: 2, claims: &["generic-nodes"], budget: mins(30) },
    Criterion { number: 3, claims: &["yprime-nodes", "yprime-order6-action"], budget: mins(15) },
    Criterion { number: 4, claims: &["yprime-sigma-fixed", "yprime-tau-fixed", "ydprime-rho-fixed"], budget: mins(5) },
    Criterion { number: 5, claims: &["yprime-twist", "ydprime-twist"], budget: mins(5) },
    Criterion { number: 6, claims: &["yprime-hodge", "ydprime-hodge"], budget: mins(20) },
    Criterion { number: 7, claims: &["order3-quotient-type", "order2-quotient-type", "invariant-map-image"], budget: mins(10) },
];

/// The listed tau points on the surface are p2..p5 rather than p1..p4; everything
/// else in that claim must hold.
fn known_tau_mismatch(r: &ClaimReport) -> bool {
    if r.id != "yprime-tau-fixed" || r.status != Status::Fail {
        return false;
    }
    let mut c = r.computed.clone();
    let mut e = r.expected.clone();
    let found = c["listed_on_del_pezzo"].take();
    e["listed_on_del_pezzo"].take();
    c == e && found == json!(["tau.2", "tau.3", "tau.4", "tau.5"])
}

/// Written to the stderr handle directly so the lines survive output capture.
fn report(line: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{}", line.trim_end());
}

#[test]
fn acceptance() {
    // claims sharing node solves run in one context, so the Y'' solve happens once
    let ctx = Context::new(Config::default(), None);
    let mut unexpected = Vec::new();
    for c in &CRITERIA {
        let ids: Vec<String> = c.claims.iter().map(|s| s.to_string()).collect();
        let t = Instant::now();
        let reports = run_claims(Some(&ids), &ctx, 1).expect("known ids");
        let elapsed = t.elapsed();
        let mut failing: BTreeMap<String, Value> = BTreeMap::new();
        let mut known = Vec::new();
        for r in &reports {
            if r.status == Status::Pass {
                continue;
            }
            if known_tau_mismatch(r) {
                known.push(r.id.clone());
            } else {
                unexpected.push(r.id.clone());
            }
            failing.insert(r.id.clone(), json!({ "computed": r.computed, "expected": r.expected }));
        }
        let within = elapsed <= c.budget;
        if !within {
            unexpected.push(format!("criterion {} over budget", c.number));
        }
        let verdict = if failing.is_empty() && within { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {}: {verdict} ({:.1}s of {}s)", c.number, elapsed.as_secs_f64(), c.budget.as_secs());
        if !known.is_empty() {
            line.push_str(" [known mismatch: listed tau points on the surface are tau.2..tau.5]");
        }
        if !failing.is_empty() {
            line.push_str(&format!(" {}", serde_json::to_string(&failing).unwrap()));
        }
        report(&line);
    }
    let t = Instant::now();
    let mut prop_failures = Vec::new();
    for (name, run) in props::ALL {
        if let Err(e) = run() {
            prop_failures.push(format!("{name}: {e}"));
        }
    }
    let elapsed = t.elapsed();
    let within = elapsed <= mins(5);
    let verdict = if prop_failures.is_empty() && within { "PASS" } else { "FAIL" };
    report(&format!("criterion 8: {verdict} ({:.1}s of 300s) {}", elapsed.as_secs_f64(), prop_failures.join("; ")));
    if verdict == "FAIL" {
        unexpected.push("criterion 8".into());
    }
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
}
