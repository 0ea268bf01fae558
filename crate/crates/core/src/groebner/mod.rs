//! Groebner bases, normal forms, elimination and Hilbert-series invariants.

mod cache;
mod hilbert;
pub(crate) mod kernel;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactfield::{CycElem, Rational};
use crate::multipoly::{MPoly, MonOrder, Monomial, Ring, RingRef};

pub use cache::GbCache;
pub use hilbert::{hilbert_numerator, HilbertData};
use kernel::{Reducers, ZPoly};

/// Reduced, monic Groebner basis of an ideal.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: RingRef,
    gens: Vec<MPoly>,
    original: Vec<MPoly>,
    integral: Vec<ZPoly>,
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("ring", &self.ring.name())
            .field("order", &self.ring.order())
            .field("gens", &self.gens)
            .finish()
    }
}

/// Dimension of a quotient ring R/I as a vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(usize),
    Infinite,
}

/// Standard monomials of a zero-dimensional ideal, in increasing order.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    pub monomials: Vec<Monomial>,
}

impl QuotientBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.monomials.iter().position(|x| x == m)
    }
}

fn to_zpoly(p: &MPoly) -> ZPoly {
    let mut l = BigInt::one();
    for (_, c) in p.terms() {
        l = l.lcm(&c.denominator_lcm());
    }
    ZPoly {
        terms: p.terms().iter().map(|(m, c)| (*m, c.to_integral(&l))).collect(),
        sugar: p.total_degree().unwrap_or(0),
    }
}

fn from_zpoly_monic(ring: &RingRef, z: &ZPoly) -> MPoly {
    if z.is_zero() {
        return MPoly::zero(ring);
    }
    let lc = z.lc().to_cyc().inv().expect("nonzero");
    let terms = z.terms.iter().map(|(m, c)| (*m, &c.to_cyc() * &lc)).collect();
    MPoly::from_sorted_terms(ring, terms)
}

fn common_ring(gens: &[MPoly]) -> Result<RingRef> {
    let r = gens
        .first()
        .ok_or_else(|| Error::Config("empty generator list".into()))?
        .ring()
        .clone();
    for g in gens {
        if **g.ring() != *r {
            return Err(Error::RingMismatch(r.name().into(), g.ring().name().into()));
        }
    }
    Ok(r)
}

/// Reduced Groebner basis of the ideal generated by `gens` with respect to `order`.
///
/// The result is independent of the order and scaling of the generators.
pub fn buchberger(gens: &[MPoly], order: MonOrder) -> Result<GroebnerBasis> {
    let base = common_ring(gens)?;
    let ring = if base.order() == order { base } else { base.with_order(order) };
    let original: Vec<MPoly> = gens.iter().map(|g| g.reorder(&ring)).collect();
    let input: Vec<ZPoly> = original.iter().filter(|g| !g.is_zero()).map(to_zpoly).collect();
    let (integral, _) = kernel::buchberger(order, input);
    Ok(GroebnerBasis::assemble(ring, integral, original))
}

impl GroebnerBasis {
    fn assemble(ring: RingRef, mut integral: Vec<ZPoly>, original: Vec<MPoly>) -> Self {
        let ord = ring.order();
        integral.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
        let gens = integral.iter().map(|z| from_zpoly_monic(&ring, z)).collect();
        GroebnerBasis {
            ring,
            gens,
            original,
            integral,
        }
    }

    /// Rebuilds a basis from already reduced generators (e.g. a cache hit).
    pub(crate) fn from_reduced(ring: RingRef, gens: Vec<MPoly>, original: Vec<MPoly>) -> Self {
        let integral = gens.iter().map(|g| {
            let mut z = to_zpoly(g);
            z.normalize();
            z
        });
        Self::assemble(ring, integral.collect(), original)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> MonOrder {
        self.ring.order()
    }

    /// Reduced monic generators, sorted by increasing leading monomial.
    pub fn generators(&self) -> &[MPoly] {
        &self.gens
    }

    pub fn original_generators(&self) -> &[MPoly] {
        &self.original
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens.iter().filter_map(|g| g.leading_monomial().copied()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_constant() && !self.gens[0].is_zero()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Remainder of `f` modulo the ideal; zero iff `f` is a member.
    pub fn normal_form(&self, f: &MPoly) -> Result<MPoly> {
        if **f.ring() != *self.ring {
            if f.ring().vars() == self.ring.vars() {
                return self.normal_form(&f.reorder(&self.ring));
            }
            return Err(Error::RingMismatch(f.ring().name().into(), self.ring.name().into()));
        }
        if f.is_zero() {
            return Ok(f.clone());
        }
        let z = to_zpoly(f);
        let mut l = BigInt::one();
        for (_, c) in f.terms() {
            l = l.lcm(&c.denominator_lcm());
        }
        let red = Reducers::new(self.integral.iter().collect());
        let (r, k) = kernel::reduce(self.order(), &z, &red, false);
        // r = k * l * NF(f)
        let scale = CycElem::from_rational(Rational::one() / (k * Rational::from_integer(l)));
        let terms = r.terms.iter().map(|(m, c)| (*m, &c.to_cyc() * &scale)).collect();
        Ok(MPoly::from_sorted_terms(&self.ring, terms))
    }

    pub fn contains(&self, f: &MPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Vector-space dimension of R/I.
    pub fn quotient_dim(&self) -> QuotientDim {
        match self.quotient_basis() {
            Ok(b) => QuotientDim::Finite(b.len()),
            Err(_) => QuotientDim::Infinite,
        }
    }

    /// Standard monomials; fails with [`Error::InfiniteQuotient`] unless
    /// every variable has a pure power among the leading monomials.
    pub fn quotient_basis(&self) -> Result<QuotientBasis> {
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        if self.is_unit_ideal() {
            return Ok(QuotientBasis { monomials: vec![] });
        }
        let mut bound = vec![u16::MAX; n];
        for m in &lms {
            if let Some(v) = m.pure_power_var() {
                bound[v] = bound[v].min(m.exp(v));
            }
        }
        if bound.iter().any(|&b| b == u16::MAX) {
            return Err(Error::InfiniteQuotient);
        }
        let mut out = Vec::new();
        let mut cur = Monomial::one();
        fn rec(i: usize, n: usize, bound: &[u16], lms: &[Monomial], cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if i == n {
                out.push(*cur);
                return;
            }
            for e in 0..bound[i] {
                cur.set_exp(i, e);
                if lms.iter().any(|m| m.divides(cur)) {
                    break;
                }
                rec(i + 1, n, bound, lms, cur, out);
            }
            cur.set_exp(i, 0);
        }
        rec(0, n, &bound, &lms, &mut cur, &mut out);
        let ord = self.order();
        out.sort_by(|a, b| ord.cmp(a, b));
        Ok(QuotientBasis { monomials: out })
    }

    /// Matrix of multiplication by variable `var` on R/I; column j holds the
    /// coordinates of `var * basis[j]`.
    pub fn multiplication_matrix(&self, basis: &QuotientBasis, var: usize) -> Result<Vec<Vec<CycElem>>> {
        if self.quotient_dim() == QuotientDim::Infinite {
            return Err(Error::InfiniteQuotient);
        }
        let n = basis.len();
        let mut m = vec![vec![CycElem::zero(); n]; n];
        let x = Monomial::var(var);
        for (j, b) in basis.monomials.iter().enumerate() {
            let prod = b.mul(&x);
            if let Some(i) = basis.index_of(&prod) {
                m[i][j] = CycElem::one();
                continue;
            }
            let nf = self.normal_form(&MPoly::monomial(&self.ring, prod, CycElem::one()))?;
            for (mono, c) in nf.terms() {
                let i = basis
                    .index_of(mono)
                    .expect("normal form is supported on standard monomials");
                m[i][j] = c.clone();
            }
        }
        Ok(m)
    }

    /// Reduced-basis comparison (requires matching ring and order).
    pub fn ideal_equal(&self, other: &GroebnerBasis) -> Result<bool> {
        if *self.ring != *other.ring {
            return Err(Error::IncompatibleOrders(format!(
                "{} ({:?}) vs {} ({:?})",
                self.ring.name(),
                self.order(),
                other.ring.name(),
                other.order()
            )));
        }
        Ok(self.gens == other.gens)
    }

    /// Every S-polynomial of the basis reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        kernel::all_spolys_reduce(self.order(), &self.integral)
    }

    /// Hilbert-series data of R/LT(I) (meaningful for homogeneous ideals).
    pub fn hilbert(&self) -> HilbertData {
        hilbert::hilbert_data(&self.leading_monomials(), self.ring.nvars())
    }

    /// Plain-text dump, one generator per line.
    pub fn to_text(&self) -> String {
        self.gens.iter().map(|g| format!("{g}\n")).collect()
    }
}

/// See [`GroebnerBasis::ideal_equal`].
pub fn ideal_equality(a: &GroebnerBasis, b: &GroebnerBasis) -> Result<bool> {
    a.ideal_equal(b)
}

/// Reduced grevlex basis of the affine chart `x_chart = 1` of homogeneous `gens`.
///
/// The homogeneous basis is computed with the chart variable smallest and then
/// dehomogenized, which is a basis of the chart ideal; working homogeneously keeps
/// intermediate coefficients far smaller than a direct affine run.
pub fn chart_basis(gens: &[MPoly], chart: usize, cache: Option<&GbCache>) -> Result<GroebnerBasis> {
    let base = common_ring(gens)?;
    let n = base.nvars();
    if chart >= n {
        return Err(Error::Config(format!("chart {chart} out of range")));
    }
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    let mut names: Vec<String> = (0..n).filter(|&j| j != chart).map(|j| base.vars()[j].clone()).collect();
    names.push(base.vars()[chart].clone());
    let shuffled = Ring::from_strings(&format!("{}/last{chart}", base.name()), names, MonOrder::Grevlex);
    let fwd: Vec<usize> = (0..n)
        .map(|j| match j.cmp(&chart) {
            std::cmp::Ordering::Less => j,
            std::cmp::Ordering::Equal => n - 1,
            std::cmp::Ordering::Greater => j - 1,
        })
        .collect();
    let mut back = vec![0; n];
    for (i, &t) in fwd.iter().enumerate() {
        back[t] = i;
    }
    let moved: Vec<MPoly> = gens.iter().map(|g| g.map_vars(&shuffled, &fwd)).collect();
    let hgb = match cache {
        Some(c) => c.buchberger(&moved, MonOrder::Grevlex)?,
        None => buchberger(&moved, MonOrder::Grevlex)?,
    };
    let affine: Vec<MPoly> = hgb
        .generators()
        .iter()
        .map(|g| g.map_vars(&base, &back).dehomogenize(chart))
        .collect::<Result<_>>()?;
    // already a basis; this pass only interreduces
    buchberger(&affine, MonOrder::Grevlex)
}

/// Normal form of `f` with respect to `g`.
pub fn normal_form(f: &MPoly, g: &GroebnerBasis) -> Result<MPoly> {
    g.normal_form(f)
}

/// Intersection of the ideal with the subring of the variables after the first `k`.
///
/// The result lives in a ring on the surviving variables with grevlex order.
pub fn elimination_ideal(gens: &[MPoly], k: usize) -> Result<GroebnerBasis> {
    let base = common_ring(gens)?;
    let n = base.nvars();
    if k > n {
        return Err(Error::Config(format!("cannot eliminate {k} of {n} variables")));
    }
    let gb = buchberger(gens, MonOrder::BlockElim(k))?;
    let sub = Ring::from_strings(
        &format!("{}/elim{k}", base.name()),
        base.vars()[k..].to_vec(),
        MonOrder::Grevlex,
    );
    let map: Vec<usize> = (0..n).map(|i| i.saturating_sub(k)).collect();
    let kept: Vec<MPoly> = gb
        .generators()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| (0..k).all(|i| m.exp(i) == 0)))
        .map(|g| g.map_vars(&sub, &map))
        .collect();
    // elements of a block-order basis lying in the subring form a grevlex basis there
    let integral = kept
        .iter()
        .map(|g| {
            let mut z = to_zpoly(g);
            z.normalize();
            z
        })
        .collect();
    Ok(GroebnerBasis::assemble(sub, integral, kept))
}

/// (projective dimension, degree) of the scheme cut out by homogeneous `gens`.
/// The empty scheme reports dimension -1 and degree 0.
pub fn projective_dimension_degree(gens: &[MPoly]) -> Result<(i64, u64)> {
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    let gb = buchberger(gens, MonOrder::Grevlex)?;
    let h = gb.hilbert();
    Ok((h.krull_dim as i64 - 1, h.degree))
}

/// Distinct variables occurring in a list of polynomials.
pub fn support_vars(gens: &[MPoly]) -> BTreeSet<usize> {
    let mut s = BTreeSet::new();
    for g in gens {
        for (m, _) in g.terms() {
            for i in 0..g.ring().nvars() {
                if m.exp(i) > 0 {
                    s.insert(i);
                }
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse::parse_poly;
    use crate::multipoly::rings;

    fn ps(r: &RingRef, v: &[&str]) -> Vec<MPoly> {
        v.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    #[test]
    fn linear_ideal() {
        let r = rings::v();
        let g = buchberger(&ps(&r, &["v0", "v1"]), MonOrder::Grevlex).unwrap();
        assert_eq!(g.generators().len(), 2);
        let one = MPoly::one(&r);
        let all = buchberger(&ps(&r, &["v0", "v1", "v2", "v3", "v4", "v5"]), MonOrder::Grevlex).unwrap();
        assert_eq!(all.normal_form(&one).unwrap(), one);
    }

    #[test]
    fn divisible_generator_collapses() {
        let r = rings::v();
        let g = buchberger(&ps(&r, &["v0^2 - v1^2", "v0 + v1"]), MonOrder::Grevlex).unwrap();
        assert_eq!(g.generators(), &ps(&r, &["v0 + v1"])[..]);
    }

    #[test]
    fn quotient_dims() {
        let r = rings::numbered("x", 2, MonOrder::Grevlex);
        let g = buchberger(&ps(&r, &["x0^2", "x1^2"]), MonOrder::Grevlex).unwrap();
        assert_eq!(g.quotient_dim(), QuotientDim::Finite(4));
        let z = buchberger(&[MPoly::zero(&r)], MonOrder::Grevlex).unwrap();
        assert_eq!(z.quotient_dim(), QuotientDim::Infinite);
    }

    #[test]
    fn companion_matrix() {
        let r = rings::numbered("x", 1, MonOrder::Grevlex);
        let g = buchberger(&ps(&r, &["x0^2 - 2"]), MonOrder::Grevlex).unwrap();
        let b = g.quotient_basis().unwrap();
        let m = g.multiplication_matrix(&b, 0).unwrap();
        assert_eq!(m[0][1], CycElem::from_int(2));
        assert_eq!(m[1][0], CycElem::one());
        assert!((&m[0][0] + &m[1][1]).is_zero());
    }

    #[test]
    fn elimination_of_parameter() {
        let r = Ring::new("txy", &["t", "x", "y"], MonOrder::Grevlex);
        let e = elimination_ideal(&ps(&r, &["x - t", "y - t^2"]), 1).unwrap();
        assert_eq!(e.generators().len(), 1);
        let s = e.generators()[0].clone();
        let expect = parse_poly(e.ring(), "y - x^2").unwrap();
        assert_eq!(s.monic(), expect.monic());
    }

    #[test]
    fn hyperplane_and_ci_degrees() {
        let r = rings::v();
        assert_eq!(projective_dimension_degree(&ps(&r, &["v0"])).unwrap(), (4, 1));
        assert_eq!(
            projective_dimension_degree(&ps(&r, &["v0^3 + v1^3", "v2^3 - v3*v4*v5"])).unwrap(),
            (3, 9)
        );
    }

    #[test]
    fn not_equal_ideals() {
        let r = rings::v();
        let a = buchberger(&ps(&r, &["v0"]), MonOrder::Grevlex).unwrap();
        let b = buchberger(&ps(&r, &["v0^2"]), MonOrder::Grevlex).unwrap();
        assert!(!a.ideal_equal(&b).unwrap());
    }

    #[test]
    fn cyclotomic_coefficients() {
        let r = rings::numbered("x", 2, MonOrder::Grevlex);
        let g = buchberger(&ps(&r, &["x0^2 - z^2*x1", "(z^2-1)*x0*x1 + x1^2"]), MonOrder::Grevlex).unwrap();
        assert!(g.satisfies_buchberger_criterion());
        for f in g.original_generators() {
            assert!(g.contains(f).unwrap());
        }
    }
}
