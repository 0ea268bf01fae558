use dpcy::claims::{emit_report, exit_code, registry, run_claims, ClaimReport, Context, ReportFormat, Status};
use dpcy::numsolve::Config;
use serde_json::{json, Value};

/// Every published statement with a checkable example, by claim id.
const COVERED: [&str; 19] = [
    "delpezzo-embedding",
    "delpezzo-ideal",
    "delpezzo-dimension-degree",
    "generic-nodes",
    "yprime-contains-delpezzo",
    "yprime-nodes",
    "yprime-order6-action",
    "yprime-hodge",
    "yprime-twist",
    "yprime-sigma-fixed",
    "yprime-tau-fixed",
    "ydprime-nodes",
    "ydprime-hodge",
    "ydprime-twist",
    "ydprime-rho-fixed",
    "order3-quotient-type",
    "invariant-map-image",
    "order2-quotient-type",
    "elliptic-curve-actions",
];

#[test]
fn registry_covers_every_statement() {
    let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
    for id in COVERED {
        assert!(ids.contains(&id), "missing {id}");
    }
    assert_eq!(ids.len(), COVERED.len());
    for c in registry() {
        assert!(!c.anchor.is_empty());
        assert!(["published", "oracle", "elementary"].contains(&c.provenance.as_str()));
    }
}

#[test]
fn unknown_id_is_an_error() {
    let ctx = Context::new(Config::default(), None);
    assert!(run_claims(Some(&["no-such-claim".to_string()]), &ctx, 1).is_err());
}

fn report(status: Status) -> ClaimReport {
    ClaimReport {
        id: "x".into(),
        status,
        computed: json!(1),
        expected: json!(1),
        provenance: "elementary".into(),
        anchor: "x".into(),
        seconds: 0.0,
    }
}

#[test]
fn summaries_and_exit_codes() {
    let doc: Value = serde_json::from_str(&emit_report(&[report(Status::Pass)], ReportFormat::Json)).unwrap();
    assert_eq!(doc["summary"], json!({ "pass": 1, "fail": 0, "total": 1 }));
    let mixed = [report(Status::Pass), report(Status::Fail)];
    assert_eq!(exit_code(&mixed), 1);
    assert_eq!(exit_code(&[report(Status::Pass), report(Status::Error)]), 2);
    let text = emit_report(&mixed, ReportFormat::Text);
    assert!(text.contains("pass 1 / fail 1 / total 2"));
}

#[test]
fn json_field_order_is_stable() {
    let s = emit_report(&[report(Status::Pass)], ReportFormat::Json);
    let keys = ["\"id\"", "\"status\"", "\"computed\"", "\"expected\"", "\"provenance\"", "\"anchor\"", "\"seconds\""];
    let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
    assert!(s.find("\"claims\"").unwrap() < s.find("\"summary\"").unwrap());
}

#[test]
fn fast_claims_pass_and_reproduce() {
    let ids: Vec<String> = ["delpezzo-ideal", "yprime-twist", "invariant-map-image", "elliptic-curve-actions"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let run = || {
        let ctx = Context::new(Config::default(), None);
        let mut r = run_claims(Some(&ids), &ctx, 2).unwrap();
        for x in &mut r {
            x.seconds = 0.0;
        }
        r
    };
    let a = run();
    assert!(a.iter().all(|r| r.status == Status::Pass), "{}", emit_report(&a, ReportFormat::Text));
    assert_eq!(emit_report(&a, ReportFormat::Json), emit_report(&run(), ReportFormat::Json));
}
