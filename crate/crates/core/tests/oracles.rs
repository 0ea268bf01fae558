//! Independent cross-checks of values the claim registry relies on.

use std::collections::BTreeMap;

use dpcy::claims::{named_points, Context};
use dpcy::exactfield::CycElem;
use dpcy::linalg::rank_exact;
use dpcy::multipoly::{rings, MPoly, Monomial};
use dpcy::numsolve::{match_points, solve_zero_dim, Config, MatchMode};
use dpcy::symmetry::{canonical_twist, local_tangent_action, LinearAut};
use dpcy::varieties::CIThreefold;

/// Cokernel of the Jacobian map from the rank of the full 112 x 40 system:
/// all 36 products (v_k dA/dv_j, v_k dB/dv_j) together with the four relations,
/// with no reduction step.
fn unreduced_cokernel(x: &CIThreefold) -> usize {
    let v = rings::v();
    let (a, b) = (x.a(), x.b());
    let zero = MPoly::zero(&v);
    let mut pairs: Vec<(MPoly, MPoly)> = vec![(a.clone(), zero.clone()), (b.clone(), zero.clone()), (zero.clone(), a.clone()), (zero.clone(), b.clone())];
    for j in 0..6 {
        let (da, db) = (a.partial_derivative(j), b.partial_derivative(j));
        for k in 0..6 {
            let vk = MPoly::var(&v, k);
            pairs.push((&vk * &da, &vk * &db));
        }
    }
    // all cubic monomials, enumerated directly
    let mut cubics = Vec::new();
    for i in 0..6 {
        for j in i..6 {
            for k in j..6 {
                let mut e = [0u16; 6];
                e[i] += 1;
                e[j] += 1;
                e[k] += 1;
                cubics.push(Monomial::from_exps(&e));
            }
        }
    }
    assert_eq!(cubics.len(), 56);
    let rows: Vec<Vec<CycElem>> = pairs
        .iter()
        .map(|(g1, g2)| cubics.iter().map(|m| g1.coeff(m)).chain(cubics.iter().map(|m| g2.coeff(m))).collect())
        .collect();
    2 * cubics.len() - rank_exact(&rows)
}

#[test]
fn cokernel_dimensions_by_unreduced_rank() {
    assert_eq!(unreduced_cokernel(&CIThreefold::y_prime()), 73);
    assert_eq!(unreduced_cokernel(&CIThreefold::y_double_prime()), 73);
    let reduced = dpcy::hodge::graded_jacobian_map(&CIThreefold::y_double_prime()).unwrap();
    assert_eq!(reduced.cokernel_dim(), 73);
}

/// The twist equals the determinant of the tangent action at every isolated fixed point.
fn tangent_determinants(g: &LinearAut, x: &CIThreefold, ctx: &Context, fixed: &dpcy::numsolve::SolutionSet) -> Vec<CycElem> {
    fixed
        .points
        .iter()
        .map(|p| local_tangent_action(g, x, p, &ctx.cfg).unwrap().determinant())
        .collect()
}

#[test]
fn twist_matches_tangent_determinants_on_yprime() {
    let ctx = Context::new(Config::default(), None);
    let yp = CIThreefold::y_prime();
    let sigma = LinearAut::sigma();
    let tau = LinearAut::tau();
    let ts = canonical_twist(&sigma, &yp).unwrap();
    assert!(ts.routes_agree());
    let fs = ctx.sigma_fixed().unwrap();
    assert_eq!(fs.isolated.len(), 6);
    for d in tangent_determinants(&sigma, &yp, &ctx, &fs.isolated) {
        assert_eq!(&d, ts.scalar());
    }
    let tt = canonical_twist(&tau, &yp).unwrap();
    assert_eq!(tt.scalar(), &CycElem::from_int(-1));
    let ft = ctx.tau_fixed().unwrap();
    for d in tangent_determinants(&tau, &yp, &ctx, &ft.isolated) {
        assert_eq!(&d, tt.scalar());
    }
}

#[test]
fn sigma_determinant_is_permutation_sign() {
    // sigma permutes coordinates by a 6-cycle, so det = -1 before any scaling
    let m = LinearAut::sigma().matrix().to_vec();
    assert_eq!(dpcy::linalg::determinant(&m), CycElem::from_int(-1));
    let s = LinearAut::sigma();
    assert!(s.power(6).matrix().iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, c)| c.is_one() == (i == j))));
}

#[test]
fn listed_tau_points_lie_on_yprime() {
    let yp = CIThreefold::y_prime();
    let tau = LinearAut::tau();
    for (name, p) in named_points("tau").unwrap() {
        assert!(yp.a().evaluate(&p).is_zero() && yp.b().evaluate(&p).is_zero(), "{name}");
        let q = tau.apply_exact(&p);
        // q is proportional to p
        let ratios: Vec<CycElem> = p
            .iter()
            .zip(&q)
            .filter(|(x, _)| !x.is_zero())
            .map(|(x, y)| y.checked_div(x).unwrap())
            .collect();
        assert!(ratios.windows(2).all(|w| w[0] == w[1]), "{name}");
    }
}

#[test]
fn node_solve_is_seed_independent() {
    let yp = CIThreefold::y_prime();
    let mut sys = vec![yp.a().clone(), yp.b().clone()];
    sys.extend(yp.jacobian_minors().into_iter().map(|(_, m)| m));
    let a = solve_zero_dim(&sys, &Config::default()).unwrap();
    let b = solve_zero_dim(&sys, &Config::default().with_seed(7)).unwrap();
    assert_eq!(a.len(), 72);
    assert_eq!(b.len(), 72);
    // every point of one run has a partner in the other
    for p in &a.points {
        let d = b
            .points
            .iter()
            .map(|q| dpcy::numsolve::fubini_study(&p.coords, &q.coords))
            .fold(f64::INFINITY, f64::min);
        assert!(d < 1e-7, "{d}");
    }
}

#[test]
fn exact_points_match_themselves_under_galois_retry() {
    let pts: Vec<Vec<CycElem>> = named_points("sigma").unwrap().into_iter().map(|p| p.1).collect();
    // conjugating by k = 5 should still match via the Galois retry
    let conj: Vec<Vec<CycElem>> = pts.iter().map(|p| p.iter().map(|c| c.galois(5)).collect()).collect();
    let found = dpcy::numsolve::SolutionSet {
        points: conj.iter().map(|p| dpcy::numsolve::CPoint::from_exact(p)).collect(),
        ..dpcy::numsolve::SolutionSet::empty()
    };
    let r = match_points(&found, &pts, MatchMode::Bijection, &Config::default()).unwrap();
    assert!(r.is_complete());
}

#[test]
fn class_sizes_add_up() {
    let ctx = Context::new(Config::default(), None);
    let nodes = ctx.yp_nodes().unwrap();
    let (off, classes) = dpcy::claims::node_classes(&nodes, &ctx.cfg);
    assert_eq!(off.len(), 36);
    let sizes: BTreeMap<String, usize> = classes.iter().map(|(k, (_, m))| (k.clone(), m.len())).collect();
    assert_eq!(sizes.values().sum::<usize>(), 36);
    assert_eq!(sizes.len(), 6);
}
