//! Projective schemes used throughout the crate: the sextic del Pezzo
//! surface in P^5, complete intersections of two cubics containing it,
//! their singular schemes, and images of monomial maps.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactfield::CycElem;
use crate::groebner::{buchberger, chart_basis, elimination_ideal, GbCache, GroebnerBasis, QuotientDim};
use crate::linalg;
use crate::multipoly::{jacobian_matrix, parse::parse_poly, rings, MPoly, MonOrder, Ring, RingRef};

const FORMS_DATA: &str = include_str!("../data/forms.txt");

/// Named forms on P^5, loaded from the shipped data file.
#[derive(Clone, Debug)]
pub struct NamedFormRegistry {
    forms: Vec<(String, MPoly)>,
    sources: Vec<(String, String)>,
}

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'\''
}

/// Replaces whole-word occurrences of known names by their parenthesised definitions.
fn expand_names(expr: &str, defs: &[(String, String)]) -> String {
    let bytes = expr.as_bytes();
    let mut out = String::with_capacity(expr.len());
    let mut i = 0;
    'outer: while i < bytes.len() {
        if i == 0 || !is_ident_byte(bytes[i - 1]) {
            // longest defined name starting here
            let mut best: Option<&(String, String)> = None;
            for d in defs {
                let n = d.0.as_bytes();
                if bytes[i..].starts_with(n)
                    && bytes.get(i + n.len()).is_none_or(|&b| !is_ident_byte(b))
                    && best.is_none_or(|b| b.0.len() < n.len())
                {
                    best = Some(d);
                }
            }
            if let Some((name, body)) = best {
                out.push('(');
                out.push_str(body);
                out.push(')');
                i += name.len();
                continue 'outer;
            }
        }
        out.push(bytes[i] as char);
        i += 1;
    }
    out
}

impl NamedFormRegistry {
    /// Parses the `name := expression` format; later lines may refer to earlier names.
    pub fn parse(text: &str) -> Result<Self> {
        let ring = rings::v();
        let mut forms = Vec::new();
        let mut sources: Vec<(String, String)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, body) = line.split_once(":=").ok_or_else(|| Error::Parse {
                pos: lineno,
                msg: format!("line {}: expected `name := expression`", lineno + 1),
            })?;
            let name = name.trim().to_string();
            let expanded = expand_names(body.trim(), &sources);
            let poly = parse_poly(&ring, &expanded).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse {
                    pos: lineno,
                    msg: format!("{name}: {msg}"),
                },
                e => e,
            })?;
            sources.push((name.clone(), expanded));
            forms.push((name, poly));
        }
        Ok(NamedFormRegistry { forms, sources })
    }

    /// The shipped registry (parsed once).
    pub fn standard() -> &'static NamedFormRegistry {
        static REG: OnceLock<NamedFormRegistry> = OnceLock::new();
        REG.get_or_init(|| NamedFormRegistry::parse(FORMS_DATA).expect("shipped form data parses"))
    }

    pub fn raw_data() -> &'static str {
        FORMS_DATA
    }

    pub fn get(&self, name: &str) -> Result<&MPoly> {
        self.forms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::Config(format!("unknown form {name}")))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.forms.iter().map(|(n, _)| n.as_str())
    }

    pub fn entries(&self) -> &[(String, MPoly)] {
        &self.forms
    }

    /// Source text after name expansion.
    pub fn expanded_source(&self, name: &str) -> Option<&str> {
        self.sources.iter().find(|(n, _)| n == name).map(|(_, s)| s.as_str())
    }

    pub fn q(&self, i: usize) -> &MPoly {
        self.get(&format!("Q{i}")).expect("Q1..Q3 are registered")
    }

    pub fn f(&self, i: usize) -> &MPoly {
        self.get(&format!("F{i}")).expect("F1..F7 are registered")
    }

    /// The nine generators Q1, Q2, F1..F7 of the del Pezzo ideal.
    pub fn del_pezzo_generators(&self) -> Vec<MPoly> {
        let mut v = vec![self.q(1).clone(), self.q(2).clone()];
        v.extend((1..=7).map(|i| self.f(i).clone()));
        v
    }

    /// Generic-family template: sum of a_i F_i.
    pub fn cubic_combination(&self, coeffs: &[CycElem; 7]) -> MPoly {
        (1..=7).fold(MPoly::zero(&rings::v()), |acc, i| &acc + &self.f(i).scale(&coeffs[i - 1]))
    }
}

/// Reduced basis of the ideal of the projected del Pezzo surface in P^5,
/// generated by the registry's nine forms.
pub fn del_pezzo_ideal() -> &'static GroebnerBasis {
    static GB: OnceLock<GroebnerBasis> = OnceLock::new();
    GB.get_or_init(|| {
        buchberger(&NamedFormRegistry::standard().del_pezzo_generators(), MonOrder::Grevlex)
            .expect("del Pezzo ideal")
    })
}

/// Complete intersection V(A, B) of two cubics in P^5.
#[derive(Clone, Debug)]
pub struct CIThreefold {
    pub name: String,
    a: MPoly,
    b: MPoly,
}

impl CIThreefold {
    pub fn new(name: &str, a: MPoly, b: MPoly) -> Result<Self> {
        let v = rings::v();
        for f in [&a, &b] {
            if **f.ring() != *v {
                return Err(Error::RingMismatch(f.ring().name().into(), v.name().into()));
            }
            if !f.is_homogeneous() || f.is_zero() {
                return Err(Error::NotHomogeneous);
            }
        }
        if a.total_degree() != b.total_degree() {
            return Err(Error::NotHomogeneous);
        }
        if forms_dependent(&a, &b) {
            return Err(Error::DependentForms);
        }
        Ok(CIThreefold {
            name: name.to_string(),
            a,
            b,
        })
    }

    pub fn y_prime() -> Self {
        let r = NamedFormRegistry::standard();
        Self::new("Y'", r.get("A'1").unwrap().clone(), r.get("A'2").unwrap().clone()).unwrap()
    }

    pub fn y_double_prime() -> Self {
        let r = NamedFormRegistry::standard();
        Self::new("Y''", r.get("A''1").unwrap().clone(), r.get("A''2").unwrap().clone()).unwrap()
    }

    pub fn a(&self) -> &MPoly {
        &self.a
    }

    pub fn b(&self) -> &MPoly {
        &self.b
    }

    pub fn equations(&self) -> [&MPoly; 2] {
        [&self.a, &self.b]
    }

    /// 2 x 6 Jacobian matrix of (A, B).
    pub fn jacobian(&self) -> Vec<Vec<MPoly>> {
        jacobian_matrix(&[self.a.clone(), self.b.clone()]).expect("same ring")
    }

    /// The fifteen 2 x 2 minors of the Jacobian, indexed by column pairs (i < j).
    pub fn jacobian_minors(&self) -> Vec<((usize, usize), MPoly)> {
        let j = self.jacobian();
        let mut out = Vec::with_capacity(15);
        for c1 in 0..6 {
            for c2 in c1 + 1..6 {
                let m = &(&j[0][c1] * &j[1][c2]) - &(&j[0][c2] * &j[1][c1]);
                out.push(((c1, c2), m));
            }
        }
        out
    }
}

/// True when b is a scalar multiple of a (or either vanishes).
fn forms_dependent(a: &MPoly, b: &MPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return true;
    }
    let ratio = b.leading_coeff().unwrap() * &a.leading_coeff().unwrap().inv().unwrap();
    (b - &a.scale(&ratio)).is_zero()
}

/// Dehomogenized A, B and the fifteen Jacobian minors in chart `chart`.
pub fn singular_scheme_ideal(x: &CIThreefold, chart: usize) -> Result<Vec<MPoly>> {
    if chart >= 6 {
        return Err(Error::Config(format!("chart {chart} out of range")));
    }
    let mut out = vec![x.a.dehomogenize(chart)?, x.b.dehomogenize(chart)?];
    for (_, m) in x.jacobian_minors() {
        out.push(m.dehomogenize(chart)?);
    }
    Ok(out)
}

/// Chart-wise reduced bases of the singular scheme, computed in parallel.
pub fn singular_scheme_bases(x: &CIThreefold, cache: Option<&GbCache>) -> Result<Vec<GroebnerBasis>> {
    let mut homogeneous = vec![x.a.clone(), x.b.clone()];
    homogeneous.extend(x.jacobian_minors().into_iter().map(|(_, m)| m));
    (0..6)
        .into_par_iter()
        .map(|c| chart_basis(&homogeneous, c, cache))
        .collect()
}

/// V(outer) contains the scheme of `inner` iff every outer generator lies in the inner ideal.
pub fn contains_scheme(inner: &GroebnerBasis, outer_gens: &[MPoly]) -> Result<bool> {
    for g in outer_gens {
        if !inner.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    /// Singular, with the number of singular points when the locus is finite.
    Singular(Option<usize>),
}

fn minors_of_size(mat: &[Vec<MPoly>], k: usize) -> Vec<MPoly> {
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for last in (k - 1)..n {
            for mut c in combos(last, k - 1) {
                c.push(last);
                out.push(c);
            }
        }
        out
    }
    fn det(m: &[Vec<MPoly>]) -> MPoly {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let ring = m[0][0].ring().clone();
        let mut acc = MPoly::zero(&ring);
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let sub: Vec<Vec<MPoly>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let t = &m[0][j] * &det(&sub);
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for rs in combos(rows, k) {
        for cs in combos(cols, k) {
            let sub: Vec<Vec<MPoly>> = rs.iter().map(|&r| cs.iter().map(|&c| mat[r][c].clone()).collect()).collect();
            let d = det(&sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

/// Jacobian criterion, chart by chart: the scheme V(gens) of codimension
/// `expected_codim` is smooth iff the ideal plus all maximal minors has no zeros.
///
/// Singular point counts are reported as the sum of chart quotient dimensions,
/// which overcounts points lying in several charts; use `numsolve` for exact counts.
pub fn smoothness_check(gens: &[MPoly], expected_codim: usize) -> Result<Smoothness> {
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    let gb = buchberger(gens, MonOrder::Grevlex)?;
    let jac = jacobian_matrix(gens)?;
    // minors reduced modulo the ideal keep the chart systems small
    let minors: Vec<MPoly> = minors_of_size(&jac, expected_codim)
        .into_iter()
        .map(|m| gb.normal_form(&m))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|m| !m.is_zero())
        .collect();
    let base: Vec<MPoly> = gb.generators().to_vec();
    let dims: Vec<QuotientDim> = (0..6)
        .into_par_iter()
        .map(|c| -> Result<QuotientDim> {
            let mut sys = base.clone();
            sys.extend(minors.iter().cloned());
            Ok(chart_basis(&sys, c, None)?.quotient_dim())
        })
        .collect::<Result<_>>()?;
    if dims.iter().all(|d| *d == QuotientDim::Finite(0)) {
        return Ok(Smoothness::Smooth);
    }
    let mut total = 0;
    for d in dims {
        match d {
            QuotientDim::Finite(n) => total += n,
            QuotientDim::Infinite => return Ok(Smoothness::Singular(None)),
        }
    }
    Ok(Smoothness::Singular(Some(total)))
}

/// Deterministic member of the generic family sum a_i F_i, sum b_i F_i with
/// coefficients in [-9, 9] \ {0}.
pub fn generic_family_sample(seed: u64) -> CIThreefold {
    let reg = NamedFormRegistry::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> [CycElem; 7] {
        std::array::from_fn(|_| loop {
            let x: i64 = rng.gen_range(-9..=9);
            if x != 0 {
                break CycElem::from_int(x);
            }
        })
    };
    loop {
        let a = draw();
        let b = draw();
        let rank = linalg::rank_exact(&[a.to_vec(), b.to_vec()]);
        if rank == 2 {
            let name = format!("generic(seed {seed})");
            return CIThreefold::new(&name, reg.cubic_combination(&a), reg.cubic_combination(&b))
                .expect("independent combinations");
        }
    }
}

/// Homogeneous polynomial map between projective spaces.
#[derive(Clone, Debug)]
pub struct RationalMapSpec {
    pub source: RingRef,
    pub target: RingRef,
    pub components: Vec<MPoly>,
}

impl RationalMapSpec {
    pub fn new(source: RingRef, target: RingRef, components: Vec<MPoly>) -> Result<Self> {
        if components.len() != target.nvars() {
            return Err(Error::Config(format!(
                "{} components for {} target coordinates",
                components.len(),
                target.nvars()
            )));
        }
        if components.iter().all(MPoly::is_zero) {
            return Err(Error::Config("all components vanish".into()));
        }
        let deg = components.iter().find(|c| !c.is_zero()).and_then(MPoly::total_degree);
        for c in &components {
            if **c.ring() != *source || !c.is_homogeneous() || (!c.is_zero() && c.total_degree() != deg) {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(RationalMapSpec {
            source,
            target,
            components,
        })
    }

    pub fn from_text(source: RingRef, target: RingRef, comps: &[&str]) -> Result<Self> {
        let components = comps.iter().map(|s| parse_poly(&source, s)).collect::<Result<Vec<_>>>()?;
        Self::new(source, target, components)
    }

    /// Image of a point; `None` where every component vanishes (base locus).
    pub fn apply(&self, p: &[CycElem]) -> Option<Vec<CycElem>> {
        let img: Vec<CycElem> = self.components.iter().map(|c| c.evaluate(p)).collect();
        (!img.iter().all(CycElem::is_zero)).then_some(img)
    }

    /// Pullback of a target polynomial along the map.
    pub fn pullback(&self, g: &MPoly) -> MPoly {
        g.compose(&self.components)
    }
}

/// The cubic embedding of P^2 into P^6 through the three coordinate points.
pub fn del_pezzo_embed() -> RationalMapSpec {
    RationalMapSpec::from_text(
        rings::x(),
        rings::u7(),
        &[
            "x_0(x_1)^2",
            "x_0(x_2)^2",
            "(x_1)^2x_2",
            "(x_0)^2x_1",
            "(x_2)^2x_1",
            "(x_0)^2x_2",
            "x_0x_1x_2",
        ],
    )
    .expect("valid map")
}

/// Composite of the invariant map of the 1/3(1,1,2,2) singularity with the
/// projection forgetting its weight-2 coordinates: P^4 -> P^8.
pub fn invariant_monomial_map() -> RationalMapSpec {
    RationalMapSpec::from_text(
        rings::l(),
        rings::u9(),
        &[
            "l_0^3", "l_1^3", "l_1^2l_2", "l_2^2l_1", "l_2^3", "l_3^3", "l_3^2l_4", "l_4^2l_3", "l_4^3",
        ],
    )
    .expect("valid map")
}

/// Ring with the source variables first, then the target variables.
fn graph_ring(map: &RationalMapSpec) -> RingRef {
    let mut vars: Vec<String> = map.source.vars().to_vec();
    vars.extend(map.target.vars().iter().cloned());
    Ring::from_strings(
        &format!("{}x{}", map.source.name(), map.target.name()),
        vars,
        MonOrder::Grevlex,
    )
}

/// Ideal of the closure of the image, by eliminating the source variables
/// from the graph ideal (u_k - f_k).
pub fn image_ideal(map: &RationalMapSpec) -> Result<GroebnerBasis> {
    let g = graph_ring(map);
    let ns = map.source.nvars();
    let src_map: Vec<usize> = (0..ns).collect();
    let gens: Vec<MPoly> = map
        .components
        .iter()
        .enumerate()
        .map(|(k, f)| &MPoly::var(&g, ns + k) - &f.map_vars(&g, &src_map))
        .collect();
    let e = elimination_ideal(&gens, ns)?;
    // move to the target ring proper
    let id: Vec<usize> = (0..map.target.nvars()).collect();
    let moved: Vec<MPoly> = e.generators().iter().map(|p| p.map_vars(&map.target, &id)).collect();
    buchberger(&moved, MonOrder::Grevlex)
}

/// Ideal of the projection of V(I) from the last coordinate point: eliminate
/// the last variable and rename the rest into `target`.
pub fn project_from_last_point(ideal: &GroebnerBasis, target: &RingRef) -> Result<GroebnerBasis> {
    let r = ideal.ring();
    let n = r.nvars();
    if target.nvars() + 1 != n {
        return Err(Error::Config("target must have one variable fewer".into()));
    }
    // reorder so the last variable comes first, then eliminate it
    let mut vars = vec![r.vars()[n - 1].clone()];
    vars.extend(r.vars()[..n - 1].iter().cloned());
    let rr = Ring::from_strings(&format!("{}/proj", r.name()), vars, MonOrder::Grevlex);
    let map: Vec<usize> = (0..n).map(|i| if i == n - 1 { 0 } else { i + 1 }).collect();
    let gens: Vec<MPoly> = ideal.generators().iter().map(|g| g.map_vars(&rr, &map)).collect();
    let e = elimination_ideal(&gens, 1)?;
    let id: Vec<usize> = (0..target.nvars()).collect();
    let moved: Vec<MPoly> = e.generators().iter().map(|p| p.map_vars(target, &id)).collect();
    buchberger(&moved, MonOrder::Grevlex)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_identities() {
        let r = NamedFormRegistry::standard();
        let lhs = r.get("A'1").unwrap();
        let rhs = &(&(r.f(1) + r.f(2)) - r.f(6)) - r.f(7);
        assert_eq!(lhs, &rhs);
        assert_eq!(r.q(1).to_string(), "v3*v4 - v2*v5");
        assert_eq!(r.get("A''1").unwrap().nterms(), 14);
        assert_eq!(r.get("A''2").unwrap().nterms(), 12);
    }

    #[test]
    fn embed_examples() {
        let m = del_pezzo_embed();
        let ones = vec![CycElem::from_int(1); 3];
        assert_eq!(m.apply(&ones).unwrap(), vec![CycElem::from_int(1); 7]);
        let p: Vec<CycElem> = [1, 1, 0].iter().map(|&x| CycElem::from_int(x)).collect();
        let img: Vec<CycElem> = [1, 0, 0, 1, 0, 0, 0].iter().map(|&x| CycElem::from_int(x)).collect();
        assert_eq!(m.apply(&p).unwrap(), img);
        for i in 0..3 {
            let mut e = vec![CycElem::from_int(0); 3];
            e[i] = CycElem::from_int(1);
            assert!(m.apply(&e).is_none());
        }
    }

    #[test]
    fn conic_image() {
        let src = rings::numbered("s", 2, MonOrder::Grevlex);
        let tgt = rings::numbered("w", 3, MonOrder::Grevlex);
        let m = RationalMapSpec::from_text(src, tgt.clone(), &["s0^2", "s0*s1", "s1^2"]).unwrap();
        let gb = image_ideal(&m).unwrap();
        assert_eq!(gb.generators().len(), 1);
        assert_eq!(gb.generators()[0].monic(), parse_poly(&tgt, "w0*w2 - w1^2").unwrap().monic());
    }

    #[test]
    fn generic_sample_is_deterministic() {
        let a = generic_family_sample(7);
        let b = generic_family_sample(7);
        assert_eq!(a.a(), b.a());
        assert_eq!(a.b(), b.b());
    }
}
