//! Property suites shared by the `properties` and `acceptance` targets.

// each target uses a different subset
#![allow(dead_code)]

use std::sync::OnceLock;

use dpcy::exactfield::{CycElem, Rational};
use dpcy::groebner::buchberger;
use dpcy::hodge::graded_jacobian_map;
use dpcy::multipoly::{parse::parse_poly, rings, MPoly, MonOrder, Monomial, NumPoly};
use dpcy::symmetry::{canonical_twist, LinearAut, QuotientSingType};
use dpcy::varieties::{CIThreefold, NamedFormRegistry};
use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub type Outcome = Result<(), String>;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn cyc() -> impl Strategy<Value = CycElem> {
    [small_rational(), small_rational(), small_rational(), small_rational()].prop_map(CycElem::from_coeffs)
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

/// Random polynomial in v0..v5 with squarefree monomials and coefficients in Z[zeta_12].
fn poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u16..=1, 0u16..=1, 0u16..=1, 0u16..=1, 0u16..=1, 0u16..=1), -5i64..=5, 0i64..12), 1..8).prop_map(|terms| {
        let v = rings::v();
        let t = terms.into_iter().map(|((a, b, c, d, e, f), n, k)| {
            (Monomial::from_exps(&[a, b, c, d, e, f]), &CycElem::from_int(n) * &CycElem::zeta12_pow(k))
        });
        MPoly::from_terms(&v, t)
    })
}

fn point() -> impl Strategy<Value = Vec<CycElem>> {
    prop::collection::vec(cyc(), 6)
}

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Outcome {
    r.map_err(|e| e.to_string())
}

pub fn field_axioms() -> Outcome {
    finish(runner(1000).run(&(cyc(), cyc(), cyc()), |(a, b, c)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &CycElem::zero(), a.clone());
        prop_assert_eq!(&a * &CycElem::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
        } else {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        Ok(())
    }))
}

pub fn embedding_is_a_ring_map() -> Outcome {
    let ks = prop::sample::select(vec![1u32, 5, 7, 11]);
    finish(runner(500).run(&(cyc(), cyc(), ks), |(a, b, k)| {
        prop_assert!(close((&a * &b).embed(), a.embed() * b.embed()));
        prop_assert!(close((&a + &b).embed(), a.embed() + b.embed()));
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert!(close(a.galois(k).embed(), a.embed_conjugate(k)));
        Ok(())
    }))
}

pub fn numeric_matches_exact() -> Outcome {
    let ks = prop::sample::select(vec![1u32, 5, 7, 11]);
    finish(runner(200).run(&(poly(), point(), ks), |(f, p, k)| {
        let exact = f.evaluate(&p);
        let z: Vec<Complex64> = p.iter().map(CycElem::embed).collect();
        prop_assert!(close(NumPoly::new(&f).eval(&z), exact.embed()));
        prop_assert!(close(f.evaluate_complex(&z), exact.embed()));
        let zk: Vec<Complex64> = p.iter().map(|c| c.embed_conjugate(k)).collect();
        prop_assert!(close(NumPoly::new_conjugate(&f, k).eval(&zk), exact.embed_conjugate(k)));
        Ok(())
    }))
}

pub fn substitute_linear_is_composition() -> Outcome {
    let mat = prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 6);
    finish(runner(200).run(&(poly(), point(), mat), |(f, p, m)| {
        let m: Vec<Vec<CycElem>> = m.iter().map(|r| r.iter().map(|&x| CycElem::from_int(x)).collect()).collect();
        prop_assume!(!dpcy::linalg::determinant(&m).is_zero());
        let mp: Vec<CycElem> = m
            .iter()
            .map(|r| r.iter().zip(&p).fold(CycElem::zero(), |s, (a, b)| &s + &(a * b)))
            .collect();
        prop_assert_eq!(f.substitute_linear(&m).unwrap().evaluate(&p), f.evaluate(&mp));
        Ok(())
    }))
}

pub fn reid_tai_pairing() -> Outcome {
    finish(runner(500).run(&(2u32..=12, prop::collection::vec(0u32..12, 4)), |(n, w)| {
        let t = QuotientSingType::new(n, w);
        let total = t.age() + t.inverse().age();
        prop_assert_eq!(total, Rational::from_integer((t.nonzero_weights() as i64).into()));
        prop_assert_eq!(t.inverse().inverse(), t);
        Ok(())
    }))
}

/// Five test ideals in different rings.
fn ideals() -> Vec<Vec<MPoly>> {
    let reg = NamedFormRegistry::standard();
    let yp = CIThreefold::y_prime();
    let x = rings::x();
    let twisted = ["x0*x2 - x1^2", "x0*x1 - x2^2", "x1*x2 - x0^2 + x0*x1"];
    let v = rings::v();
    let mixed = ["v0^2 - z*v1*v2", "v1^3 - v0*v2*v3 + v5^3", "v3*v4 - v2*v5", "v0*v4 + (z^2 - 1)*v5^2"];
    vec![
        reg.del_pezzo_generators(),
        vec![yp.a().clone(), yp.b().clone(), reg.get("Q1").unwrap().clone()],
        twisted.iter().map(|s| parse_poly(&x, s).unwrap()).collect(),
        mixed.iter().map(|s| parse_poly(&v, s).unwrap()).collect(),
        dpcy::claims::invariant_image_equations().unwrap(),
    ]
}

/// 20 shuffles of each of the 5 ideals give the same reduced basis.
pub fn reduced_basis_is_unique() -> Outcome {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let all = ideals();
    let refs: Vec<_> = all.iter().map(|g| buchberger(g, MonOrder::Grevlex).unwrap()).collect();
    finish(runner(20).run(&any::<u64>(), |seed| {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for (gens, reference) in all.iter().zip(&refs) {
            let mut shuffled = gens.clone();
            shuffled.shuffle(&mut rng);
            let mut shuffled: Vec<MPoly> = shuffled.iter().map(|g| g.scale(&CycElem::from_int(rng.gen_range(1..5)))).collect();
            if shuffled[0].total_degree() == shuffled[1].total_degree() {
                shuffled[0] = &shuffled[0] + &shuffled[1];
            }
            let gb = buchberger(&shuffled, MonOrder::Grevlex).unwrap();
            prop_assert_eq!(gb.generators(), reference.generators());
        }
        Ok(())
    }))
}

fn sigma_twists() -> &'static Vec<CycElem> {
    static T: OnceLock<Vec<CycElem>> = OnceLock::new();
    T.get_or_init(|| {
        let yp = CIThreefold::y_prime();
        let s = LinearAut::sigma();
        (0..6).map(|k| canonical_twist(&s.power(k), &yp).unwrap().scalar().clone()).collect()
    })
}

pub fn twist_is_multiplicative() -> Outcome {
    if !sigma_twists()[0].is_one() {
        return Err("identity twist is not 1".into());
    }
    finish(runner(36).run(&(0usize..6, 0usize..6), |(i, j)| {
        let t = sigma_twists();
        prop_assert_eq!(&t[i] * &t[j], t[(i + j) % 6].clone());
        Ok(())
    }))
}

/// The Euler vector sum_j v_j d/dv_j maps to (3A, 3B), which is zero modulo the relations.
pub fn euler_vector_in_kernel() -> Outcome {
    finish(runner(12).run(&(-6i64..=6, 1i64..=4), |(c, d)| {
        let yp = CIThreefold::y_prime();
        let a = &yp.a().scale(&CycElem::from_int(d)) + &yp.b().scale(&CycElem::from_int(c));
        let x = CIThreefold::new("pencil", a, yp.b().clone()).unwrap();
        let m = graded_jacobian_map(&x).unwrap();
        let euler = (0..6).fold(vec![CycElem::zero(); m.codomain_dim()], |acc, j| {
            acc.iter().zip(&m.columns[j * 6 + j]).map(|(s, t)| s + t).collect()
        });
        prop_assert!(euler.iter().all(CycElem::is_zero));
        prop_assert_eq!(m.rank, 35);
        prop_assert!(m.kernel_dim() >= 1);
        Ok(())
    }))
}

pub const ALL: [(&str, fn() -> Outcome); 8] = [
    ("field axioms", field_axioms),
    ("embedding is a ring map", embedding_is_a_ring_map),
    ("numeric vs exact evaluation", numeric_matches_exact),
    ("linear substitution", substitute_linear_is_composition),
    ("reduced basis uniqueness", reduced_basis_is_unique),
    ("Euler kernel membership", euler_vector_in_kernel),
    ("twist multiplicativity", twist_is_multiplicative),
    ("Reid-Tai pairing", reid_tai_pairing),
];
