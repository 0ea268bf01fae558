//! Sparse multivariate polynomials over [`CycElem`].
//!
//! Every polynomial carries the [`Ring`] it lives in (variable names plus a
//! monomial order). Arithmetic between polynomials of different rings is a
//! [`Error::RingMismatch`]. Terms are kept strictly sorted in descending
//! order with respect to the ring's order, with no zero coefficients.

pub mod parse;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactfield::CycElem;

pub const MAX_VARS: usize = 16;

/// Exponent vector. Unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial {
    e: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut e = [0u16; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial { e }
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0u16; MAX_VARS];
        e[i] = 1;
        Monomial { e }
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.e[i]
    }

    pub fn exps(&self, n: usize) -> &[u16] {
        &self.e[..n]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e.iter().map(|&x| x as u32).sum()
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.e.iter().zip(&other.e).all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial {
            e: std::array::from_fn(|i| self.e[i] + o.e[i]),
        }
    }

    /// self / o, assuming o divides self.
    #[inline]
    pub fn div(&self, o: &Monomial) -> Monomial {
        debug_assert!(o.divides(self));
        Monomial {
            e: std::array::from_fn(|i| self.e[i] - o.e[i]),
        }
    }

    #[inline]
    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial {
            e: std::array::from_fn(|i| self.e[i].max(o.e[i])),
        }
    }

    #[inline]
    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.e.iter().zip(&o.e).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn set_exp(&mut self, i: usize, v: u16) {
        self.e[i] = v;
    }

    /// Exponent of a pure power x_i^k, if the monomial is one.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &x) in self.e.iter().enumerate() {
            if x > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.e.iter().rposition(|&x| x > 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.e[..last])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonOrder {
    Lex,
    Grevlex,
    /// Block order eliminating the first `k` variables: grevlex on the first
    /// block, ties broken by grevlex on the rest.
    BlockElim(usize),
}

#[inline]
fn grevlex_range(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let da: u32 = a.e[lo..hi].iter().map(|&x| x as u32).sum();
    let db: u32 = b.e[lo..hi].iter().map(|&x| x as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (lo..hi).rev() {
        match a.e[i].cmp(&b.e[i]) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable is larger
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonOrder::Lex => a.e.cmp(&b.e),
            MonOrder::Grevlex => grevlex_range(a, b, 0, MAX_VARS),
            MonOrder::BlockElim(k) => match grevlex_range(a, b, 0, k) {
                Ordering::Equal => grevlex_range(a, b, k, MAX_VARS),
                o => o,
            },
        }
    }
}

/// A polynomial ring: variable names and a monomial order.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    name: String,
    vars: Vec<String>,
    order: MonOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(name: &str, vars: &[&str], order: MonOrder) -> RingRef {
        Self::from_strings(name, vars.iter().map(|s| s.to_string()).collect(), order)
    }

    pub fn from_strings(name: &str, vars: Vec<String>, order: MonOrder) -> RingRef {
        assert!(vars.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        Arc::new(Ring {
            name: name.to_string(),
            vars,
            order,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonOrder) -> RingRef {
        Ring::from_strings(&self.name, self.vars.clone(), order)
    }
}

/// Centrally registered rings.
pub mod rings {
    use super::*;

    fn cached(cell: &'static OnceLock<RingRef>, f: impl FnOnce() -> RingRef) -> RingRef {
        cell.get_or_init(f).clone()
    }

    /// Homogeneous coordinates v0..v5 of P^5.
    pub fn v() -> RingRef {
        static R: OnceLock<RingRef> = OnceLock::new();
        cached(&R, || Ring::new("v", &["v0", "v1", "v2", "v3", "v4", "v5"], MonOrder::Grevlex))
    }

    /// Affine chart v_i = 1 of P^5; variables keep their homogeneous index.
    pub fn chart(i: usize) -> RingRef {
        static R: [OnceLock<RingRef>; 6] = [const { OnceLock::new() }; 6];
        assert!(i < 6);
        cached(&R[i], || {
            let vars: Vec<String> = (0..6).filter(|&j| j != i).map(|j| format!("y{j}")).collect();
            Ring::from_strings(&format!("y(chart {i})"), vars, MonOrder::Grevlex)
        })
    }

    /// Homogeneous coordinates x0..x2 of P^2.
    pub fn x() -> RingRef {
        static R: OnceLock<RingRef> = OnceLock::new();
        cached(&R, || Ring::new("x", &["x0", "x1", "x2"], MonOrder::Grevlex))
    }

    /// Homogeneous coordinates u0..u6 of P^6.
    pub fn u7() -> RingRef {
        static R: OnceLock<RingRef> = OnceLock::new();
        cached(&R, || {
            Ring::new("u7", &["u0", "u1", "u2", "u3", "u4", "u5", "u6"], MonOrder::Grevlex)
        })
    }

    /// Homogeneous coordinates l0..l4 of P^4.
    pub fn l() -> RingRef {
        static R: OnceLock<RingRef> = OnceLock::new();
        cached(&R, || Ring::new("l", &["l0", "l1", "l2", "l3", "l4"], MonOrder::Grevlex))
    }

    /// Homogeneous coordinates u0..u8 of P^8.
    pub fn u9() -> RingRef {
        static R: OnceLock<RingRef> = OnceLock::new();
        cached(&R, || {
            Ring::new(
                "u9",
                &["u0", "u1", "u2", "u3", "u4", "u5", "u6", "u7", "u8"],
                MonOrder::Grevlex,
            )
        })
    }

    /// Generic ring with numbered variables `prefix0..prefix{n-1}`.
    pub fn numbered(prefix: &str, n: usize, order: MonOrder) -> RingRef {
        let vars = (0..n).map(|i| format!("{prefix}{i}")).collect();
        Ring::from_strings(prefix, vars, order)
    }
}

/// Sparse polynomial over Q(zeta_12).
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    ring: RingRef,
    terms: Vec<(Monomial, CycElem)>,
}

fn same_ring(a: &RingRef, b: &RingRef) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch(a.name.clone(), b.name.clone()))
    }
}

impl MPoly {
    pub fn zero(ring: &RingRef) -> Self {
        MPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: CycElem) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, CycElem::one())
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        assert!(i < ring.nvars());
        Self::monomial(ring, Monomial::var(i), CycElem::one())
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: CycElem) -> Self {
        let terms = if c.is_zero() { vec![] } else { vec![(m, c)] };
        MPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, CycElem)>) -> Self {
        let mut acc: HashMap<Monomial, CycElem> = HashMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            debug_assert!(m.exps(MAX_VARS)[ring.nvars()..].iter().all(|&x| x == 0));
            *acc.entry(m).or_default() += &c;
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &RingRef, acc: HashMap<Monomial, CycElem>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let ord = ring.order;
        terms.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
        MPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusts the caller that `terms` is sorted and free of zeros.
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<(Monomial, CycElem)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        MPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, CycElem)] {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&CycElem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coeff(&self, m: &Monomial) -> CycElem {
        self.terms
            .iter()
            .find(|t| t.0 == *m)
            .map(|t| t.1.clone())
            .unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|t| t.0.degree() == d)
            }
        }
    }

    pub fn try_add(&self, o: &MPoly) -> Result<MPoly> {
        same_ring(&self.ring, &o.ring)?;
        Ok(self.merge(o, false))
    }

    pub fn try_sub(&self, o: &MPoly) -> Result<MPoly> {
        same_ring(&self.ring, &o.ring)?;
        Ok(self.merge(o, true))
    }

    fn merge(&self, o: &MPoly, negate: bool) -> MPoly {
        let ord = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let c = if i == self.terms.len() {
                Ordering::Less
            } else if j == o.terms.len() {
                Ordering::Greater
            } else {
                ord.cmp(&self.terms[i].0, &o.terms[j].0)
            };
            match c {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &o.terms[j];
                    out.push((*m, if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = if negate {
                        &self.terms[i].1 - &o.terms[j].1
                    } else {
                        &self.terms[i].1 + &o.terms[j].1
                    };
                    if !s.is_zero() {
                        out.push((self.terms[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MPoly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn try_mul(&self, o: &MPoly) -> Result<MPoly> {
        same_ring(&self.ring, &o.ring)?;
        if self.is_zero() || o.is_zero() {
            return Ok(MPoly::zero(&self.ring));
        }
        let mut acc: HashMap<Monomial, CycElem> =
            HashMap::with_capacity(self.terms.len() * o.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    pub fn scale(&self, c: &CycElem) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Multiplies by a monomial (order-preserving).
    pub fn mul_monomial(&self, m: &Monomial, c: &CycElem) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, x)| (a.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> MPoly {
        assert!(var < self.ring.nvars(), "variable index out of range");
        let terms = self.terms.iter().filter(|(m, _)| m.exp(var) > 0).map(|(m, c)| {
            let k = m.exp(var);
            let mut m2 = *m;
            m2.set_exp(var, k - 1);
            (m2, c.scale(&crate::exactfield::Rational::from_integer(k.into())))
        });
        MPoly::from_terms(&self.ring, terms)
    }

    pub fn gradient(&self) -> Vec<MPoly> {
        (0..self.ring.nvars()).map(|j| self.partial_derivative(j)).collect()
    }

    pub fn evaluate(&self, point: &[CycElem]) -> CycElem {
        assert_eq!(point.len(), self.ring.nvars(), "point length must equal the number of variables");
        let n = point.len();
        let mut powers: Vec<Vec<CycElem>> = vec![vec![CycElem::one()]; n];
        let mut acc = CycElem::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * x;
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            acc += &t;
        }
        acc
    }

    pub fn evaluate_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.ring.nvars());
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.embed();
                for (i, x) in point.iter().enumerate() {
                    let e = m.exp(i);
                    if e > 0 {
                        t *= x.powu(e as u32);
                    }
                }
                t
            })
            .sum()
    }

    /// Substitutes variable i by `images[i]` (all in a common target ring).
    pub fn compose(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(&p.ring), p.clone()]).collect();
        let mut acc: HashMap<Monomial, CycElem> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for i in 0..images.len() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            for (mm, cc) in t.terms {
                *acc.entry(mm).or_default() += &cc;
            }
        }
        Self::from_map(&target, acc)
    }

    /// f(M v): composes with the linear change of variables given by `m`
    /// (row i of `m` is the linear form substituted for variable i).
    pub fn substitute_linear(&self, m: &[Vec<CycElem>]) -> Result<MPoly> {
        let n = self.ring.nvars();
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::Config(format!("substitution matrix must be {n}x{n}")));
        }
        if crate::linalg::rank_exact(m) < n {
            return Err(Error::SingularMatrix);
        }
        let images: Vec<MPoly> = m
            .iter()
            .map(|row| {
                MPoly::from_terms(
                    &self.ring,
                    row.iter().enumerate().map(|(j, c)| (Monomial::var(j), c.clone())),
                )
            })
            .collect();
        Ok(self.compose(&images))
    }

    /// Sets v_chart = 1 and moves to the chart ring (remaining variables in order).
    pub fn dehomogenize(&self, chart: usize) -> Result<MPoly> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let n = self.ring.nvars();
        assert!(chart < n);
        let target = if Arc::ptr_eq(&self.ring, &rings::v()) || *self.ring == *rings::v() {
            rings::chart(chart)
        } else {
            let vars = self
                .ring
                .vars
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != chart)
                .map(|(_, s)| format!("{s}'"))
                .collect();
            Ring::from_strings(&format!("{}(chart {chart})", self.ring.name), vars, self.ring.order)
        };
        Ok(self.dehomogenize_into(chart, &target))
    }

    pub(crate) fn dehomogenize_into(&self, chart: usize, target: &RingRef) -> MPoly {
        let n = self.ring.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = [0u16; MAX_VARS];
            let mut k = 0;
            for j in 0..n {
                if j != chart {
                    e[k] = m.exp(j);
                    k += 1;
                }
            }
            (Monomial { e }, c.clone())
        });
        MPoly::from_terms(target, terms)
    }

    /// Re-expresses the polynomial in `target`, sending variable i to
    /// variable `map[i]` of the target ring.
    pub fn map_vars(&self, target: &RingRef, map: &[usize]) -> MPoly {
        assert_eq!(map.len(), self.ring.nvars());
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = [0u16; MAX_VARS];
            for (i, &t) in map.iter().enumerate() {
                e[t] += m.exp(i);
            }
            (Monomial { e }, c.clone())
        });
        MPoly::from_terms(target, terms)
    }

    /// Same polynomial viewed in a ring with identical variables but another order.
    pub fn reorder(&self, target: &RingRef) -> MPoly {
        assert_eq!(target.vars, self.ring.vars);
        MPoly::from_terms(target, self.terms.iter().cloned())
    }

    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|t| t.0.degree() == d).cloned().collect(),
        }
    }

    /// Rescales so that all coefficients are integral with coprime coordinates
    /// and the leading coefficient has positive leading coordinate.
    pub fn primitive(&self) -> MPoly {
        use num_integer::Integer;
        use num_traits::Signed;
        if self.is_zero() {
            return self.clone();
        }
        let mut l = num_bigint::BigInt::one();
        for (_, c) in &self.terms {
            l = l.lcm(&c.denominator_lcm());
        }
        let ints: Vec<_> = self.terms.iter().map(|(_, c)| c.to_integral(&l)).collect();
        let mut g = num_bigint::BigInt::zero();
        for z in &ints {
            g = g.gcd(&z.content());
        }
        if ints[0].signum_leading() < 0 {
            g = -g;
        }
        let terms = self
            .terms
            .iter()
            .zip(ints)
            .map(|((m, _), z)| (*m, z.div_exact(&g).to_cyc()))
            .collect();
        let _ = g.is_negative();
        MPoly {
            ring: self.ring.clone(),
            terms,
        }
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    /// Panics on ring mismatch; see [`MPoly::try_add`].
    fn add(self, o: &MPoly) -> MPoly {
        self.try_add(o).unwrap()
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        self.try_sub(o).unwrap()
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        self.try_mul(o).unwrap()
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, o: MPoly) -> MPoly {
        &self + &o
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, o: MPoly) -> MPoly {
        &self - &o
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, o: MPoly) -> MPoly {
        &self * &o
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

fn fmt_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, v) in ring.vars.iter().enumerate() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(v.clone()),
            e => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for MPoly {
    /// Text format: `v0*v1 - v2*v5`, `(5*z^2-5)*v1^2*v2`, `-3/2*v0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = match c.as_rational() {
                Some(r) if num_traits::Signed::is_negative(r) => (true, CycElem::from_rational(-r)),
                _ => (false, c.clone()),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(&self.ring, m);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.ring.name, self)
    }
}

/// Entry (i, j) is the partial derivative of `fs[i]` with respect to variable j.
pub fn jacobian_matrix(fs: &[MPoly]) -> Result<Vec<Vec<MPoly>>> {
    if let Some(first) = fs.first() {
        for f in fs {
            same_ring(first.ring(), f.ring())?;
        }
    }
    Ok(fs.iter().map(MPoly::gradient).collect())
}

/// Numeric polynomial with embedded coefficients, for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct NumPoly {
    nvars: usize,
    terms: Vec<(Monomial, Complex64)>,
}

impl NumPoly {
    pub fn new(p: &MPoly) -> Self {
        NumPoly {
            nvars: p.ring.nvars(),
            terms: p.terms.iter().map(|(m, c)| (*m, c.embed())).collect(),
        }
    }

    /// Same as [`NumPoly::new`] but under the Galois-twisted embedding z -> exp(2 pi i k/12).
    pub fn new_conjugate(p: &MPoly, k: u32) -> Self {
        NumPoly {
            nvars: p.ring.nvars(),
            terms: p.terms.iter().map(|(m, c)| (*m, c.embed_conjugate(k))).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, xi) in x.iter().enumerate().take(self.nvars) {
                let e = m.exp(i);
                if e > 0 {
                    t *= xi.powu(e as u32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Sum of coefficient moduli, used to normalise residuals.
    pub fn coeff_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.1.norm()).sum()
    }

    pub fn derivative(&self, var: usize) -> NumPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let k = m.exp(var);
                let mut m2 = *m;
                m2.set_exp(var, k - 1);
                (m2, c * k as f64)
            })
            .collect();
        NumPoly {
            nvars: self.nvars,
            terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> RingRef {
        rings::v()
    }

    fn p(s: &str) -> MPoly {
        parse::parse_poly(&v(), s).unwrap()
    }

    #[test]
    fn grevlex_order_basics() {
        let o = MonOrder::Grevlex;
        let a = Monomial::from_exps(&[1, 0, 1]);
        let b = Monomial::from_exps(&[0, 2, 0]);
        // x0*x2 < x1^2 in grevlex
        assert_eq!(o.cmp(&a, &b), Ordering::Less);
        assert_eq!(MonOrder::Lex.cmp(&a, &b), Ordering::Greater);
        let c = Monomial::from_exps(&[0, 0, 3]);
        assert_eq!(o.cmp(&c, &a), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonOrder::BlockElim(1);
        let a = Monomial::from_exps(&[1, 0, 0]);
        let b = Monomial::from_exps(&[0, 5, 5]);
        assert_eq!(o.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn additive_inverse_and_zero_product() {
        let f = p("v3*v4 - v2*v5");
        assert!((&f + &(-&f)).is_zero());
        assert!((&f * &MPoly::zero(&v())).is_zero());
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("v3*v4 - v2*v5").partial_derivative(3), p("v4"));
        assert_eq!(p("v2*v3^2").partial_derivative(3), p("2*v2*v3"));
    }

    #[test]
    fn evaluation() {
        let f1 = p("v2*v3^2 - v0^2*v5");
        let ones = vec![CycElem::one(); 6];
        assert!(f1.evaluate(&ones).is_zero());
        let q1 = p("v3*v4 - v2*v5");
        let pt: Vec<CycElem> = [0, 0, 1, 0, 0, 1].iter().map(|&x| CycElem::from_int(x)).collect();
        assert_eq!(q1.evaluate(&pt), CycElem::from_int(-1));
    }

    #[test]
    fn dehomogenize_chart0() {
        let q1 = p("v3*v4 - v2*v5").dehomogenize(0).unwrap();
        assert_eq!(q1.to_string(), "y3*y4 - y2*y5");
        let m = p("v0^2*v5").dehomogenize(0).unwrap();
        assert_eq!(m.to_string(), "y5");
        let c = p("7").dehomogenize(0).unwrap();
        assert_eq!(c.to_string(), "7");
        assert!(matches!(p("v0 + v1^2").dehomogenize(0), Err(Error::NotHomogeneous)));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = MPoly::var(&rings::v(), 0);
        let b = MPoly::var(&rings::chart(0), 0);
        assert!(matches!(a.try_add(&b), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn jacobian_of_linear_form_is_constant() {
        let j = jacobian_matrix(&[p("2*v0 - v3")]).unwrap();
        assert_eq!(j[0][0], p("2"));
        assert_eq!(j[0][3], p("-1"));
        assert!(j[0][1].is_zero());
    }

    #[test]
    fn singular_substitution_rejected() {
        let zero_row = vec![vec![CycElem::zero(); 6]; 6];
        assert!(matches!(p("v0").substitute_linear(&zero_row), Err(Error::SingularMatrix)));
    }
}
