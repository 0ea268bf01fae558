//! Registry of checkable statements about the del Pezzo threefolds.
//!
//! Each claim runs a recipe against a shared [`Context`] (which memoizes the
//! expensive node solves and fixed loci) and reports computed against
//! expected values. Reports serialize to a stable JSON document or a
//! fixed-width text table.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactfield::{CycElem, Rational};
use crate::groebner::{buchberger, projective_dimension_degree, GbCache};
use crate::hodge::{cokernel_basis, graded_jacobian_map, h11_report, psi_kernel, H11Source, HodgeReport, HodgeTarget};
use crate::multipoly::{parse::parse_point, parse::parse_poly, rings, MPoly, MonOrder};
use crate::numsolve::{
    certify_odp, match_points, membership_census, solve_zero_dim_cached, Config, MatchMode, NamedLocus, OdpVerdict,
    SolutionSet,
};
use crate::symmetry::{
    canonical_twist, curve_fixed_data, fixed_locus, form_action_table, local_tangent_action, orbit_partition,
    proportional_image, quotient_sing_type, verify_invariance, EllipticCurveModel, FixedLocus, LinearAut,
    QuotientSingType,
};
use crate::varieties::{
    contains_scheme, del_pezzo_embed, del_pezzo_ideal, generic_family_sample, image_ideal, invariant_monomial_map,
    project_from_last_point, CIThreefold, NamedFormRegistry,
};

const POINTS_DATA: &str = include_str!("../data/points.txt");
const IMAGE_DATA: &str = include_str!("../data/invariant_image.txt");

/// Exact points of the shipped data file whose label starts with `group.`.
pub fn named_points(group: &str) -> Result<Vec<(String, Vec<CycElem>)>> {
    let mut out = Vec::new();
    for line in POINTS_DATA.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, pt) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("bad point line '{line}'")))?;
        let name = name.trim();
        if name.split('.').next() == Some(group) {
            out.push((name.to_string(), parse_point(pt.trim())?));
        }
    }
    Ok(out)
}

/// The six binomials cutting out the image of the invariant monomial map.
pub fn invariant_image_equations() -> Result<Vec<MPoly>> {
    let u = rings::u9();
    IMAGE_DATA
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_poly(&u, l))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub status: Status,
    pub computed: Value,
    pub expected: Value,
    pub provenance: String,
    pub anchor: String,
    pub seconds: f64,
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Stated in the literature on these threefolds.
    Published,
    /// Fixed by an independent computation in this crate's test suite.
    Oracle,
    /// Immediate from the definitions.
    Elementary,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Published => "published",
            Provenance::Oracle => "oracle",
            Provenance::Elementary => "elementary",
        }
    }
}

pub struct Outcome {
    pub pass: bool,
    pub computed: Value,
    pub expected: Value,
}

impl Outcome {
    fn compare(computed: Value, expected: Value) -> Self {
        Outcome {
            pass: computed == expected,
            computed,
            expected,
        }
    }
}

pub struct Claim {
    pub id: &'static str,
    pub anchor: &'static str,
    pub provenance: Provenance,
    run: fn(&Context) -> Result<Outcome>,
}

/// Every registered claim, in report order.
pub fn registry() -> Vec<Claim> {
    use Provenance::*;
    let c = |id, anchor, provenance, run| Claim {
        id,
        anchor,
        provenance,
        run,
    };
    vec![
        c("delpezzo-embedding", "monomial cubic map of P^2 into P^6 lands in the ideal", Published, claim_embedding),
        c("delpezzo-ideal", "projected surface cut out by 2 quadrics and 7 cubics", Published, claim_ideal),
        c("delpezzo-dimension-degree", "projected surface has dimension 2 and degree 6", Published, claim_dimdeg),
        c("generic-nodes", "generic member of the family has 36 nodes", Published, claim_generic_nodes),
        c("yprime-contains-delpezzo", "both threefolds contain the projected surface", Published, claim_contains),
        c("yprime-nodes", "Y' has 72 nodes, 36 on the surface", Published, claim_yp_nodes),
        c("yprime-order6-action", "order-6 symmetry of Y', form cycles, node classes and orbits", Published, claim_action),
        c("yprime-hodge", "cokernel 73 and psi-kernel 10 for Y'", Published, claim_yp_hodge),
        c("yprime-twist", "sigma acts on the 3-form of Y' by -1", Published, claim_yp_twist),
        c("yprime-sigma-fixed", "sigma fixes 6 isolated points of Y'", Published, claim_sigma_fixed),
        c("yprime-tau-fixed", "tau fixes a plane and 9 points of Y'", Published, claim_tau_fixed),
        c("ydprime-nodes", "Y'' is rho-invariant with 36 nodes, all on the surface", Published, claim_ydp_nodes),
        c("ydprime-hodge", "psi-kernel 38 for Y''", Published, claim_ydp_hodge),
        c("ydprime-twist", "rho acts on the 3-form of Y'' by zeta_3^2", Published, claim_ydp_twist),
        c("ydprime-rho-fixed", "rho fixes 9 isolated points of Y'', 3 on the surface", Published, claim_rho_fixed),
        c("order3-quotient-type", "27 terminal points of type 1/3(1,1,2,2)", Published, claim_order3_type),
        c("invariant-map-image", "image of the invariant monomial map is cut out by six binomials", Published, claim_image),
        c("order2-quotient-type", "36 points of type 1/2(1,1,1,1) and local action (1,1,-1,-1) along the plane", Published, claim_order2_type),
        c("elliptic-curve-actions", "fixed points and form eigenvalues of the curve automorphisms", Published, claim_curves),
    ]
}

type Shared<T> = OnceLock<std::result::Result<Arc<T>, String>>;

/// Shared inputs and memoized intermediate results.
pub struct Context {
    pub cfg: Config,
    pub cache: Option<GbCache>,
    yp_nodes: Shared<SolutionSet>,
    ydp_nodes: Shared<SolutionSet>,
    sigma_fixed: Shared<FixedLocus>,
    tau_fixed: Shared<FixedLocus>,
    rho_fixed: Shared<FixedLocus>,
    yp_hodge: Shared<HodgeReport>,
    ydp_hodge: Shared<HodgeReport>,
}

fn memo<T>(cell: &Shared<T>, f: impl FnOnce() -> Result<T>) -> Result<Arc<T>> {
    cell.get_or_init(|| f().map(Arc::new).map_err(|e| e.to_string()))
        .clone()
        .map_err(Error::Numeric)
}

fn singular_system(x: &CIThreefold) -> Vec<MPoly> {
    let mut sys = vec![x.a().clone(), x.b().clone()];
    sys.extend(x.jacobian_minors().into_iter().map(|(_, m)| m));
    sys
}

impl Context {
    pub fn new(cfg: Config, cache: Option<GbCache>) -> Self {
        Context {
            cfg,
            cache,
            yp_nodes: OnceLock::new(),
            ydp_nodes: OnceLock::new(),
            sigma_fixed: OnceLock::new(),
            tau_fixed: OnceLock::new(),
            rho_fixed: OnceLock::new(),
            yp_hodge: OnceLock::new(),
            ydp_hodge: OnceLock::new(),
        }
    }

    pub fn nodes(&self, x: &CIThreefold) -> Result<SolutionSet> {
        solve_zero_dim_cached(&singular_system(x), &self.cfg, self.cache.as_ref())
    }

    pub fn yp_nodes(&self) -> Result<Arc<SolutionSet>> {
        memo(&self.yp_nodes, || self.nodes(&CIThreefold::y_prime()))
    }

    pub fn ydp_nodes(&self) -> Result<Arc<SolutionSet>> {
        memo(&self.ydp_nodes, || self.nodes(&CIThreefold::y_double_prime()))
    }

    pub fn sigma_fixed(&self) -> Result<Arc<FixedLocus>> {
        memo(&self.sigma_fixed, || fixed_locus(&LinearAut::sigma(), &CIThreefold::y_prime(), &self.cfg))
    }

    pub fn tau_fixed(&self) -> Result<Arc<FixedLocus>> {
        memo(&self.tau_fixed, || fixed_locus(&LinearAut::tau(), &CIThreefold::y_prime(), &self.cfg))
    }

    pub fn rho_fixed(&self) -> Result<Arc<FixedLocus>> {
        memo(&self.rho_fixed, || fixed_locus(&LinearAut::rho(), &CIThreefold::y_double_prime(), &self.cfg))
    }

    fn hodge(&self, x: &CIThreefold, nodes: &SolutionSet, target: HodgeTarget) -> Result<HodgeReport> {
        let m = graded_jacobian_map(x)?;
        let c = cokernel_basis(&m);
        Ok(h11_report(target, psi_kernel(x, &c, nodes, &self.cfg)?))
    }

    pub fn yp_hodge(&self) -> Result<Arc<HodgeReport>> {
        memo(&self.yp_hodge, || {
            self.hodge(&CIThreefold::y_prime(), &*self.yp_nodes()?, HodgeTarget::YPrime)
        })
    }

    pub fn ydp_hodge(&self) -> Result<Arc<HodgeReport>> {
        memo(&self.ydp_hodge, || {
            self.hodge(&CIThreefold::y_double_prime(), &*self.ydp_nodes()?, HodgeTarget::YDoublePrime)
        })
    }
}

/// Runs the selected claims (all when `selection` is None) on up to `workers` threads.
pub fn run_claims(selection: Option<&[String]>, ctx: &Context, workers: usize) -> Result<Vec<ClaimReport>> {
    let all = registry();
    let chosen: Vec<&Claim> = match selection {
        None => all.iter().collect(),
        Some(ids) => ids
            .iter()
            .map(|id| all.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownClaim(id.clone())))
            .collect::<Result<_>>()?,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let reports = pool.install(|| chosen.par_iter().map(|c| run_one(c, ctx)).collect());
    Ok(reports)
}

fn run_one(claim: &Claim, ctx: &Context) -> ClaimReport {
    let t = Instant::now();
    let res = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (claim.run)(ctx)));
    let seconds = t.elapsed().as_secs_f64();
    let (status, computed, expected) = match res {
        Ok(Ok(o)) => (if o.pass { Status::Pass } else { Status::Fail }, o.computed, o.expected),
        Ok(Err(e)) => (Status::Error, json!({ "error": e.to_string() }), Value::Null),
        Err(_) => (Status::Error, json!({ "error": "panic" }), Value::Null),
    };
    ClaimReport {
        id: claim.id.to_string(),
        status,
        computed,
        expected,
        provenance: claim.provenance.as_str().to_string(),
        anchor: claim.anchor.to_string(),
        seconds,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Serialize)]
struct Summary {
    pass: usize,
    fail: usize,
    total: usize,
}

#[derive(Serialize)]
struct Document<'a> {
    claims: &'a [ClaimReport],
    summary: Summary,
}

fn summary(reports: &[ClaimReport]) -> Summary {
    let pass = reports.iter().filter(|r| r.status == Status::Pass).count();
    let skipped = reports.iter().filter(|r| r.status == Status::Skipped).count();
    Summary {
        pass,
        fail: reports.len() - pass - skipped,
        total: reports.len(),
    }
}

pub fn emit_report(reports: &[ClaimReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let doc = Document {
                claims: reports,
                summary: summary(reports),
            };
            serde_json::to_string_pretty(&doc).expect("report serializes")
        }
        ReportFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{:<28} {:<8} {:>9}  computed", "claim", "status", "seconds");
            for r in reports {
                let status = serde_json::to_value(r.status).unwrap();
                let _ = writeln!(
                    s,
                    "{:<28} {:<8} {:>9.2}  {}",
                    r.id,
                    status.as_str().unwrap_or(""),
                    r.seconds,
                    r.computed
                );
            }
            let sm = summary(reports);
            let _ = writeln!(s, "pass {} / fail {} / total {}", sm.pass, sm.fail, sm.total);
            s
        }
    }
}

/// 0 when every report passed (or was skipped), 2 on any error, 1 otherwise.
pub fn exit_code(reports: &[ClaimReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Error) {
        2
    } else if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}

// ---- recipes ----

fn claim_embedding(_: &Context) -> Result<Outcome> {
    let map = del_pezzo_embed();
    let img = image_ideal(&map)?;
    let samples = [[1i64, 1, 1], [1, 2, 3], [-2, 5, 7]];
    let mut on = true;
    for p in &samples {
        let p: Vec<CycElem> = p.iter().map(|&c| CycElem::from_int(c)).collect();
        let q = map.apply(&p).ok_or(Error::Numeric("base point".into()))?;
        on &= img.generators().iter().all(|g| g.evaluate(&q).is_zero());
    }
    // the linear system is the cubics through the three coordinate points
    let mut through_base = true;
    for i in 0..3 {
        let e: Vec<CycElem> = (0..3).map(|j| CycElem::from_int((i == j) as i64)).collect();
        through_base &= map.components.iter().all(|f| f.evaluate(&e).is_zero());
    }
    let degrees = distinct(&map.components.iter().map(|f| f.total_degree()).collect::<Vec<_>>());
    Ok(Outcome::compare(
        json!({ "components": map.components.len(), "degrees": degrees, "through_base_points": through_base, "samples_on_image": on }),
        json!({ "components": 7, "degrees": [3], "through_base_points": true, "samples_on_image": true }),
    ))
}

fn typed_del_pezzo_ideal() -> &'static crate::groebner::GroebnerBasis {
    del_pezzo_ideal()
}

fn claim_ideal(_: &Context) -> Result<Outcome> {
    let img = image_ideal(&del_pezzo_embed())?;
    let proj = project_from_last_point(&img, &rings::v())?;
    let equal = proj.ideal_equal(typed_del_pezzo_ideal())?;
    let mut deg: BTreeMap<u32, usize> = BTreeMap::new();
    let reg = NamedFormRegistry::standard();
    for g in reg.del_pezzo_generators() {
        *deg.entry(g.total_degree().unwrap_or(0)).or_default() += 1;
    }
    Ok(Outcome::compare(
        json!({ "equal_to_typed_generators": equal, "typed_generator_degrees": deg }),
        json!({ "equal_to_typed_generators": true, "typed_generator_degrees": { "2": 2, "3": 7 } }),
    ))
}

fn claim_dimdeg(_: &Context) -> Result<Outcome> {
    let (d, e) = projective_dimension_degree(&NamedFormRegistry::standard().del_pezzo_generators())?;
    Ok(Outcome::compare(json!({ "dimension": d, "degree": e }), json!({ "dimension": 2, "degree": 6 })))
}

fn node_summary(x: &CIThreefold, nodes: &SolutionSet, cfg: &Config) -> Value {
    let odp = nodes
        .points
        .iter()
        .filter(|p| certify_odp(x, p, cfg).verdict == OdpVerdict::Odp)
        .count();
    let dp = NamedLocus::from_basis("dP", del_pezzo_ideal());
    let census = membership_census(nodes, &[dp], cfg);
    json!({
        "nodes": nodes.len(),
        "certified_odp": odp,
        "on_del_pezzo": census.counts["dP"],
        "residual_ok": nodes.max_residual() <= cfg.tol.residual,
    })
}

fn claim_generic_nodes(ctx: &Context) -> Result<Outcome> {
    let mut computed = Vec::new();
    let mut expected = Vec::new();
    let sigma = LinearAut::sigma();
    for seed in 1..=3u64 {
        let x = generic_family_sample(seed);
        let contains = contains_scheme(typed_del_pezzo_ideal(), &[x.a().clone(), x.b().clone()])?;
        let nodes = ctx.nodes(&x)?;
        let mut v = node_summary(&x, &nodes, &ctx.cfg);
        v["seed"] = json!(seed);
        v["contains_del_pezzo"] = json!(contains);
        v["sigma_invariant"] = json!(verify_invariance(&sigma, &x).invariant);
        v.as_object_mut().unwrap().remove("on_del_pezzo");
        computed.push(v);
        expected.push(json!({
            "seed": seed, "contains_del_pezzo": true, "sigma_invariant": false,
            "nodes": 36, "certified_odp": 36, "residual_ok": true,
        }));
    }
    Ok(Outcome::compare(json!(computed), json!(expected)))
}

fn claim_contains(_: &Context) -> Result<Outcome> {
    let gb = typed_del_pezzo_ideal();
    let yp = CIThreefold::y_prime();
    let ydp = CIThreefold::y_double_prime();
    Ok(Outcome::compare(
        json!({
            "Y'": contains_scheme(gb, &[yp.a().clone(), yp.b().clone()])?,
            "Y''": contains_scheme(gb, &[ydp.a().clone(), ydp.b().clone()])?,
        }),
        json!({ "Y'": true, "Y''": true }),
    ))
}

fn claim_yp_nodes(ctx: &Context) -> Result<Outcome> {
    let nodes = ctx.yp_nodes()?;
    let x = CIThreefold::y_prime();
    let mut v = node_summary(&x, &nodes, &ctx.cfg);
    let plateau: Vec<usize> = [1e-8, 1e-7, 1e-6, 1e-5].iter().map(|&r| nodes.distinct_at(r)).collect();
    v["dedup_plateau"] = json!(plateau);
    Ok(Outcome::compare(
        v,
        json!({ "nodes": 72, "certified_odp": 72, "on_del_pezzo": 36, "residual_ok": true, "dedup_plateau": [72, 72, 72, 72] }),
    ))
}

/// The quadric a class of off-surface nodes lies on, and whether it also lies on cubics.
fn class_label(pattern: &[String]) -> String {
    let q = pattern.iter().find(|n| n.starts_with('Q')).cloned().unwrap_or_default();
    let cubics: Vec<&String> = pattern.iter().filter(|n| n.starts_with('F')).collect();
    match (q.as_str(), cubics.is_empty()) {
        ("Q1", true) => "P1",
        ("Q1", false) => "P2",
        ("Q2", false) => "P3",
        ("Q2", true) => "P4",
        ("Q3", false) => "P5",
        ("Q3", true) => "P6",
        _ => "?",
    }
    .to_string()
}

/// Off-surface nodes of Y' grouped by their vanishing pattern among Q1..Q3, F1..F7.
pub fn node_classes(nodes: &SolutionSet, cfg: &Config) -> (SolutionSet, BTreeMap<String, (Vec<String>, Vec<usize>)>) {
    let dp = NamedLocus::from_basis("dP", del_pezzo_ideal());
    let census = membership_census(nodes, &[dp], cfg);
    let idx: Vec<usize> = (0..nodes.len()).filter(|&i| census.rows[i].is_empty()).collect();
    let off = nodes.select(&idx);
    let reg = NamedFormRegistry::standard();
    let names = ["Q1", "Q2", "Q3", "F1", "F2", "F3", "F4", "F5", "F6", "F7"];
    let loci: Vec<NamedLocus> = names
        .iter()
        .map(|n| NamedLocus::new(n, vec![reg.get(n).expect("registered").clone()]))
        .collect();
    let c = membership_census(&off, &loci, cfg);
    let classes = c
        .classes()
        .into_iter()
        .map(|(pattern, members)| (class_label(&pattern), (pattern, members)))
        .collect();
    (off, classes)
}

fn claim_action(ctx: &Context) -> Result<Outcome> {
    let sigma = LinearAut::sigma();
    let yp = CIThreefold::y_prime();
    let reg = NamedFormRegistry::standard();
    let inv = verify_invariance(&sigma, &yp);
    // forms: follow the lines through each form under pullback
    let f_names: Vec<String> = (1..=7).map(|i| format!("F{i}")).collect();
    let f_refs: Vec<&str> = f_names.iter().map(String::as_str).collect();
    let table = form_action_table(&sigma, reg, &f_refs, &f_refs)?;
    let mut f_cycle = vec!["F1".to_string()];
    loop {
        let cur = f_cycle.last().unwrap().clone();
        let img = table.iter().find(|t| t.name == cur).and_then(|t| t.as_single()).map(|(n, _)| n.to_string());
        match img {
            Some(n) if n != "F1" && f_cycle.len() < 8 => f_cycle.push(n),
            _ => break,
        }
    }
    let f4 = table.iter().find(|t| t.name == "F4").and_then(|t| t.as_single()).map(|(n, _)| n.to_string());
    let qs: Vec<(&str, &MPoly)> = ["Q1", "Q2", "Q3"].iter().map(|n| (*n, reg.get(n).unwrap())).collect();
    let mut q_cycle = vec!["Q1".to_string()];
    for _ in 0..3 {
        let cur = reg.get(q_cycle.last().unwrap())?;
        match proportional_image(&sigma, cur, &qs) {
            Some((n, _)) if n != "Q1" => q_cycle.push(n),
            _ => break,
        }
    }
    // node classes and their orbits; a class in V(f) goes to the class in V(sigma* f),
    // i.e. the classes move under the inverse point map
    let nodes = ctx.yp_nodes()?;
    let (off, classes) = node_classes(&nodes, &ctx.cfg);
    let patterns: BTreeMap<String, Value> = classes
        .iter()
        .map(|(k, (pat, mem))| (k.clone(), json!({ "vanishing": pat, "size": mem.len() })))
        .collect();
    let back = orbit_partition(&sigma.inverse(), &off, &ctx.cfg)?;
    let class_of = |i: usize| -> String {
        classes
            .iter()
            .find(|(_, (_, m))| m.contains(&i))
            .map(|(k, _)| k.clone())
            .unwrap_or_default()
    };
    let mut class_map: BTreeMap<String, String> = BTreeMap::new();
    let mut consistent = true;
    for (i, &j) in back.permutation.iter().enumerate() {
        let (a, b) = (class_of(i), class_of(j));
        if let Some(prev) = class_map.insert(a, b.clone()) {
            consistent &= prev == b;
        }
    }
    let follow = |start: &str| -> Vec<String> {
        let mut out = vec![start.to_string()];
        while let Some(n) = class_map.get(out.last().unwrap()) {
            if n == start || out.len() > 6 {
                break;
            }
            out.push(n.clone());
        }
        out
    };
    let all_fixed = orbit_partition(&sigma, &nodes, &ctx.cfg)?.fixed.len();
    Ok(Outcome::compare(
        json!({
            "invariant": inv.invariant,
            "f_cycle": f_cycle,
            "f4_image": f4,
            "q_cycle": q_cycle,
            "classes": patterns,
            "class_map_consistent": consistent,
            "orbit_from_P1": follow("P1"),
            "orbit_from_P5": follow("P5"),
            "nodes_fixed_by_sigma": all_fixed,
        }),
        json!({
            "invariant": true,
            "f_cycle": ["F1", "F3", "F6", "F7", "F5", "F2"],
            "f4_image": "F4",
            "q_cycle": ["Q1", "Q3", "Q2"],
            "classes": {
                "P1": { "vanishing": ["Q1"], "size": 6 },
                "P2": { "vanishing": ["Q1", "F1", "F3", "F5", "F7"], "size": 6 },
                "P3": { "vanishing": ["Q2", "F1", "F2", "F6", "F7"], "size": 6 },
                "P4": { "vanishing": ["Q2"], "size": 6 },
                "P5": { "vanishing": ["Q3", "F2", "F3", "F5", "F6"], "size": 6 },
                "P6": { "vanishing": ["Q3"], "size": 6 },
            },
            "class_map_consistent": true,
            "orbit_from_P1": ["P1", "P6", "P4"],
            "orbit_from_P5": ["P5", "P3", "P2"],
            "nodes_fixed_by_sigma": 0,
        }),
    ))
}

fn hodge_value(r: &HodgeReport) -> Value {
    let plateau = r.ranks.iter().all(|rs| rs.iter().all(|x| x.1 == r.ranks[0][0].1));
    json!({
        "cokernel": r.cokernel_dim,
        "psi_kernel": r.psi_kernel_dim,
        "rank_plateau": plateau,
        "h11": r.h11.map(|h| h.0),
        "h11_source": r.h11.map(|h| match h.1 { H11Source::ComputedEquality => "computed-equality", H11Source::ExternalValue => "external" }),
    })
}

fn claim_yp_hodge(ctx: &Context) -> Result<Outcome> {
    let m = graded_jacobian_map(&CIThreefold::y_prime())?;
    let mut v = hodge_value(&*ctx.yp_hodge()?);
    v["codomain"] = json!(m.codomain_dim());
    v["rank"] = json!(m.rank);
    Ok(Outcome::compare(
        v,
        json!({ "codomain": 108, "rank": 35, "cokernel": 73, "psi_kernel": 10, "rank_plateau": true, "h11": 10, "h11_source": "computed-equality" }),
    ))
}

fn claim_ydp_hodge(ctx: &Context) -> Result<Outcome> {
    let v = hodge_value(&*ctx.ydp_hodge()?);
    // the cokernel value is a regression value fixed by the independent rank oracle
    Ok(Outcome::compare(
        v,
        json!({ "cokernel": 73, "psi_kernel": 38, "rank_plateau": true, "h11": 2, "h11_source": "external" }),
    ))
}

fn twist_value(g: &LinearAut, x: &CIThreefold) -> Result<Value> {
    let t = canonical_twist(g, x)?;
    Ok(json!({ "twist": t.scalar().to_string(), "routes_agree": t.routes_agree() }))
}

fn claim_yp_twist(_: &Context) -> Result<Outcome> {
    let yp = CIThreefold::y_prime();
    let s = LinearAut::sigma();
    Ok(Outcome::compare(
        json!({ "sigma": twist_value(&s, &yp)?, "sigma^2": twist_value(&s.power(2), &yp)? }),
        json!({ "sigma": { "twist": "-1", "routes_agree": true }, "sigma^2": { "twist": "1", "routes_agree": true } }),
    ))
}

fn claim_ydp_twist(_: &Context) -> Result<Outcome> {
    let v = twist_value(&LinearAut::rho(), &CIThreefold::y_double_prime())?;
    let zeta3_sq = CycElem::zeta3().pow(2).to_string();
    Ok(Outcome::compare(v, json!({ "twist": zeta3_sq, "routes_agree": true })))
}

fn match_value(found: &SolutionSet, expected: &[(String, Vec<CycElem>)], mode: MatchMode, cfg: &Config) -> Result<Value> {
    let pts: Vec<Vec<CycElem>> = expected.iter().map(|p| p.1.clone()).collect();
    let r = match_points(found, &pts, mode, cfg)?;
    Ok(json!({ "matched": r.pairs.len(), "complete": r.is_complete() }))
}

fn on_del_pezzo_exact(p: &[CycElem]) -> bool {
    del_pezzo_ideal().generators().iter().all(|g| g.evaluate(p).is_zero())
}

fn claim_sigma_fixed(ctx: &Context) -> Result<Outcome> {
    let fl = ctx.sigma_fixed()?;
    let listed = named_points("sigma")?;
    Ok(Outcome::compare(
        json!({
            "isolated": fl.isolated.len(),
            "components": fl.component_dims(),
            "match_listed": match_value(&fl.isolated, &listed, MatchMode::Bijection, &ctx.cfg)?,
        }),
        json!({ "isolated": 6, "components": [], "match_listed": { "matched": 6, "complete": true } }),
    ))
}

fn claim_tau_fixed(ctx: &Context) -> Result<Outcome> {
    let fl = ctx.tau_fixed()?;
    let listed = named_points("tau")?;
    let on_dp: Vec<String> = listed.iter().filter(|p| on_del_pezzo_exact(&p.1)).map(|p| p.0.clone()).collect();
    let plane = fl
        .components
        .iter()
        .find(|c| c.contained() && c.dim() == 3)
        .ok_or_else(|| Error::Numeric("no fixed plane".into()))?;
    let nodes = ctx.yp_nodes()?;
    let (off, classes) = node_classes(&nodes, &ctx.cfg);
    let pl = NamedLocus::new("plane", plane.linear_equations());
    let all_on = membership_census(&nodes, &[pl.clone()], &ctx.cfg).counts["plane"];
    let off_census = membership_census(&off, &[pl], &ctx.cfg);
    let per_class: BTreeMap<String, usize> = classes
        .iter()
        .map(|(k, (_, m))| (k.clone(), m.iter().filter(|&&i| !off_census.rows[i].is_empty()).count()))
        .collect();
    Ok(Outcome::compare(
        json!({
            "isolated": fl.isolated.len(),
            "components": fl.component_dims(),
            "match_listed": match_value(&fl.isolated, &listed, MatchMode::Bijection, &ctx.cfg)?,
            "listed_on_del_pezzo": on_dp,
            "nodes_on_plane": all_on,
            "plane_nodes_per_class": per_class,
        }),
        json!({
            "isolated": 9,
            "components": [2],
            "match_listed": { "matched": 9, "complete": true },
            "listed_on_del_pezzo": ["tau.1", "tau.2", "tau.3", "tau.4"],
            "nodes_on_plane": 12,
            "plane_nodes_per_class": { "P1": 2, "P2": 2, "P3": 2, "P4": 2, "P5": 2, "P6": 2 },
        }),
    ))
}

fn claim_ydp_nodes(ctx: &Context) -> Result<Outcome> {
    let x = CIThreefold::y_double_prime();
    let nodes = ctx.ydp_nodes()?;
    let mut v = node_summary(&x, &nodes, &ctx.cfg);
    v["rho_invariant"] = json!(verify_invariance(&LinearAut::rho(), &x).invariant);
    Ok(Outcome::compare(
        v,
        json!({ "nodes": 36, "certified_odp": 36, "on_del_pezzo": 36, "residual_ok": true, "rho_invariant": true }),
    ))
}

fn claim_rho_fixed(ctx: &Context) -> Result<Outcome> {
    let fl = ctx.rho_fixed()?;
    let listed = named_points("rho")?;
    let dp = NamedLocus::from_basis("dP", del_pezzo_ideal());
    let on = membership_census(&fl.isolated, &[dp], &ctx.cfg).counts["dP"];
    let listed_on = listed.iter().filter(|p| on_del_pezzo_exact(&p.1)).count();
    Ok(Outcome::compare(
        json!({
            "isolated": fl.isolated.len(),
            "components": fl.component_dims(),
            "on_del_pezzo": on,
            "match_listed": match_value(&fl.isolated, &listed, MatchMode::Injection, &ctx.cfg)?,
            "listed_on_del_pezzo": listed_on,
        }),
        json!({
            "isolated": 9,
            "components": [],
            "on_del_pezzo": 3,
            "match_listed": { "matched": 3, "complete": true },
            "listed_on_del_pezzo": 3,
        }),
    ))
}

/// Distinct quotient types over the given fixed points, with the determinant
/// of the tangent action at each.
fn types_at(g: &LinearAut, x: &CIThreefold, pts: &SolutionSet, curve_tangent: &CycElem, ctx: &Context) -> Result<(Vec<QuotientSingType>, Vec<CycElem>)> {
    let mut types = Vec::new();
    let mut dets = Vec::new();
    for p in &pts.points {
        let t = local_tangent_action(g, x, p, &ctx.cfg)?;
        dets.push(t.determinant());
        types.push(quotient_sing_type(&t.snapped, curve_tangent, g.order())?);
    }
    Ok((types, dets))
}

fn distinct<T: PartialEq + Clone>(xs: &[T]) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for x in xs {
        if !out.contains(x) {
            out.push(x.clone());
        }
    }
    out
}

fn claim_order3_type(ctx: &Context) -> Result<Outcome> {
    let curve = curve_fixed_data(&EllipticCurveModel::order3())?;
    let fl = ctx.rho_fixed()?;
    let x = CIThreefold::y_double_prime();
    let (types, dets) = types_at(&LinearAut::rho(), &x, &fl.isolated, &curve.tangent, ctx)?;
    let kinds = distinct(&types);
    let t = &kinds[0];
    let pairing = kinds.iter().all(|k| k.age() + k.inverse().age() == Rational::from_integer((k.nonzero_weights() as i64).into()));
    Ok(Outcome::compare(
        json!({
            "threefold_points": fl.isolated.len(),
            "curve_points": curve.count,
            "singularities": fl.isolated.len() * curve.count,
            "types": kinds.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "age": t.age().to_string(),
            "terminal": t.age() > Rational::one(),
            "reid_tai_pairing": pairing,
            "tangent_determinants": distinct(&dets).iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        }),
        json!({
            "threefold_points": 9,
            "curve_points": 3,
            "singularities": 27,
            "types": ["1/3(1,1,2,2)"],
            "age": "2",
            "terminal": true,
            "reid_tai_pairing": true,
            "tangent_determinants": [CycElem::zeta3().pow(2).to_string()],
        }),
    ))
}

fn claim_image(_: &Context) -> Result<Outcome> {
    let img = image_ideal(&invariant_monomial_map())?;
    let typed = buchberger(&invariant_image_equations()?, MonOrder::Grevlex)?;
    Ok(Outcome::compare(
        json!({ "equal": img.ideal_equal(&typed)?, "generators": img.generators().len() }),
        json!({ "equal": true, "generators": 6 }),
    ))
}

/// A smooth point of Y' on the fixed plane of tau, from small integer parameters.
fn smooth_plane_point(ctx: &Context) -> Result<crate::numsolve::CPoint> {
    let fl = ctx.tau_fixed()?;
    let plane = fl
        .components
        .iter()
        .find(|c| c.contained() && c.dim() == 3)
        .ok_or_else(|| Error::Numeric("no fixed plane".into()))?;
    let yp = CIThreefold::y_prime();
    for t in [[1i64, 2, 3], [2, -1, 5], [3, 1, -2], [1, 1, 7]] {
        let p: Vec<CycElem> = (0..6)
            .map(|i| (0..3).fold(CycElem::zero(), |acc, j| &acc + &(&plane.basis[j][i] * &CycElem::from_int(t[j]))))
            .collect();
        let grads: Vec<Vec<CycElem>> = [yp.a(), yp.b()]
            .iter()
            .map(|f| (0..6).map(|k| f.partial_derivative(k).evaluate(&p)).collect())
            .collect();
        if crate::linalg::rank_exact(&grads) == 2 {
            let c: Vec<Complex64> = p.iter().map(CycElem::embed).collect();
            return Ok(crate::numsolve::CPoint::new(c, 0.0));
        }
    }
    Err(Error::SingularPoint)
}

fn claim_order2_type(ctx: &Context) -> Result<Outcome> {
    let curve = curve_fixed_data(&EllipticCurveModel::order2(2))?;
    let fl = ctx.tau_fixed()?;
    let x = CIThreefold::y_prime();
    let tau = LinearAut::tau();
    let (types, dets) = types_at(&tau, &x, &fl.isolated, &curve.tangent, ctx)?;
    let kinds = distinct(&types);
    let q = smooth_plane_point(ctx)?;
    let along = local_tangent_action(&tau, &x, &q, &ctx.cfg)?;
    let plane_type = quotient_sing_type(&along.snapped, &curve.tangent, 2)?;
    let pairing = kinds
        .iter()
        .chain(std::iter::once(&plane_type))
        .all(|k| k.age() + k.inverse().age() == Rational::from_integer((k.nonzero_weights() as i64).into()));
    Ok(Outcome::compare(
        json!({
            "threefold_points": fl.isolated.len(),
            "curve_points": curve.count,
            "singularities": fl.isolated.len() * curve.count,
            "types": kinds.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "tangent_determinants": distinct(&dets).iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "plane_weights": plane_type.weights,
            "reid_tai_pairing": pairing,
        }),
        json!({
            "threefold_points": 9,
            "curve_points": 4,
            "singularities": 36,
            "types": ["1/2(1,1,1,1)"],
            "tangent_determinants": ["-1"],
            "plane_weights": [0, 0, 1, 1],
            "reid_tai_pairing": true,
        }),
    ))
}

fn claim_curves(_: &Context) -> Result<Outcome> {
    let e2 = curve_fixed_data(&EllipticCurveModel::order2(2))?;
    let e3 = curve_fixed_data(&EllipticCurveModel::order3())?;
    let mut xs: Vec<f64> = e2.affine_points.iter().map(|p| (p[0].re * 1e9).round() / 1e9 + 0.0).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut ys: Vec<f64> = e3.affine_points.iter().map(|p| (p[1].im * 1e9).round() / 1e9).collect();
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let z3 = CycElem::zeta3().to_string();
    Ok(Outcome::compare(
        json!({
            "order2": { "fixed": e2.count, "affine_x": xs, "tangent": e2.tangent.to_string(), "form": e2.form.to_string() },
            "order3": { "fixed": e3.count, "affine_y_imag": ys, "tangent": e3.tangent.to_string(), "form": e3.form.to_string() },
        }),
        json!({
            "order2": { "fixed": 4, "affine_x": [0.0, 1.0, 2.0], "tangent": "-1", "form": "-1" },
            "order3": { "fixed": 3, "affine_y_imag": [-1.0, 1.0], "tangent": z3, "form": z3 },
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let r = registry();
        let mut ids: Vec<&str> = r.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), r.len());
    }

    #[test]
    fn point_data_parses() {
        assert_eq!(named_points("sigma").unwrap().len(), 6);
        assert_eq!(named_points("tau").unwrap().len(), 9);
        assert_eq!(named_points("rho").unwrap().len(), 3);
        assert_eq!(invariant_image_equations().unwrap().len(), 6);
    }

    #[test]
    fn empty_report() {
        let doc: Value = serde_json::from_str(&emit_report(&[], ReportFormat::Json)).unwrap();
        assert_eq!(doc["summary"], json!({ "pass": 0, "fail": 0, "total": 0 }));
        assert_eq!(exit_code(&[]), 0);
    }
}
