//! Fraction-free Buchberger over Z[z].
//!
//! Polynomials are kept with coefficients in Z[z] and integer leading
//! coefficients, so every reduction step only needs an integer multiplier.
//! Pair handling follows Gebauer-Moeller; pairs are selected by sugar.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactfield::{Rational, ZCyc};
use crate::multipoly::{MonOrder, Monomial};

#[derive(Clone, Debug)]
pub(crate) struct ZPoly {
    pub terms: Vec<(Monomial, ZCyc)>,
    pub sugar: u32,
}

#[inline]
fn mask(m: &Monomial) -> u16 {
    let mut b = 0u16;
    for i in 0..16 {
        if m.exp(i) > 0 {
            b |= 1 << i;
        }
    }
    b
}

impl ZPoly {
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &ZCyc {
        &self.terms[0].1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            for x in &c.c {
                if !x.is_zero() {
                    g = g.gcd(x);
                    if g.is_one() {
                        return g;
                    }
                }
            }
        }
        g
    }

    /// Removes the integer content; returns the divisor used.
    fn remove_content(&mut self) -> BigInt {
        let g = self.content();
        if !g.is_zero() && !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c = c.div_exact(&g);
            }
        }
        g
    }

    /// Makes the leading coefficient a positive integer with trivial content.
    pub fn normalize(&mut self) {
        if self.is_zero() {
            return;
        }
        if !self.lc().is_integer() {
            let cof = self.lc().norm_cofactor();
            for (_, c) in self.terms.iter_mut() {
                *c = c.mul(&cof);
            }
        }
        self.remove_content();
        if self.lc().c[0].is_negative() {
            for (_, c) in self.terms.iter_mut() {
                *c = c.neg();
            }
        }
    }
}

/// a * p - b * t * q, with t a monomial, result sorted in `ord`.
fn combine(
    ord: MonOrder,
    p: &[(Monomial, ZCyc)],
    a: &BigInt,
    q: &[(Monomial, ZCyc)],
    b: &ZCyc,
    t: &Monomial,
) -> Vec<(Monomial, ZCyc)> {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let (mut i, mut j) = (0, 0);
    let a_one = a.is_one();
    let scale_p = |c: &ZCyc| if a_one { c.clone() } else { c.scale(a) };
    while i < p.len() || j < q.len() {
        let qm = if j < q.len() { Some(q[j].0.mul(t)) } else { None };
        let c = match (i < p.len(), qm) {
            (false, _) => Ordering::Less,
            (true, None) => Ordering::Greater,
            (true, Some(ref m)) => ord.cmp(&p[i].0, m),
        };
        match c {
            Ordering::Greater => {
                out.push((p[i].0, scale_p(&p[i].1)));
                i += 1;
            }
            Ordering::Less => {
                out.push((qm.unwrap(), b.mul(&q[j].1).neg()));
                j += 1;
            }
            Ordering::Equal => {
                let v = scale_p(&p[i].1).sub(&b.mul(&q[j].1));
                if !v.is_zero() {
                    out.push((p[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) struct Reducers<'a> {
    polys: Vec<&'a ZPoly>,
    masks: Vec<u16>,
}

impl<'a> Reducers<'a> {
    pub fn new(polys: Vec<&'a ZPoly>) -> Self {
        let masks = polys.iter().map(|p| mask(p.lm())).collect();
        Reducers { polys, masks }
    }

    /// Shortest reducer whose leading monomial divides `m`.
    fn find(&self, m: &Monomial) -> Option<&'a ZPoly> {
        let mm = mask(m);
        let mut best: Option<&ZPoly> = None;
        for (p, &k) in self.polys.iter().zip(&self.masks) {
            if k & !mm != 0 || !p.lm().divides(m) {
                continue;
            }
            if best.is_none_or(|b| p.terms.len() < b.terms.len()) {
                best = Some(p);
            }
        }
        best
    }
}

/// Full reduction. Returns the remainder r with r = k * (h mod G) for the
/// returned rational k; the remainder has trivial integer content.
pub(crate) fn reduce(ord: MonOrder, h: &ZPoly, red: &Reducers, top_only: bool) -> (ZPoly, Rational) {
    let mut k = Rational::one();
    let mut done: Vec<(Monomial, ZCyc)> = Vec::new();
    let mut cur = h.terms.clone();
    let mut sugar = h.sugar;
    let mut steps = 0usize;
    while !cur.is_empty() {
        let (m, c) = cur[0].clone();
        match red.find(&m) {
            None => {
                if top_only && done.is_empty() {
                    // leading term irreducible: keep the tail as is
                    done = cur;
                    break;
                }
                done.push(cur.remove(0));
            }
            Some(g) => {
                let lcg = &g.lc().c[0];
                let d = lcg.gcd(&c.content());
                let a = lcg / &d;
                let b = c.div_exact(&d);
                let t = m.div(g.lm());
                sugar = sugar.max(g.sugar + t.degree());
                cur = combine(ord, &cur[1..], &a, &g.terms[1..], &b, &t);
                if !a.is_one() {
                    for (_, x) in done.iter_mut() {
                        *x = x.scale(&a);
                    }
                    k *= Rational::from_integer(a);
                }
                steps += 1;
                if steps % 8 == 0 {
                    let g = content_of(&done, &cur);
                    if !g.is_one() && !g.is_zero() {
                        for (_, x) in done.iter_mut().chain(cur.iter_mut()) {
                            *x = x.div_exact(&g);
                        }
                        k /= Rational::from_integer(g);
                    }
                }
            }
        }
    }
    let mut r = ZPoly { terms: done, sugar };
    let g = r.remove_content();
    if !g.is_zero() && !g.is_one() {
        k /= Rational::from_integer(g);
    }
    (r, k)
}

fn content_of(a: &[(Monomial, ZCyc)], b: &[(Monomial, ZCyc)]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in a.iter().chain(b) {
        for x in &c.c {
            if !x.is_zero() {
                g = g.gcd(x);
                if g.is_one() {
                    return g;
                }
            }
        }
    }
    g
}

fn spoly(ord: MonOrder, f: &ZPoly, g: &ZPoly) -> ZPoly {
    let l = f.lm().lcm(g.lm());
    let tf = l.div(f.lm());
    let tg = l.div(g.lm());
    let lf = &f.lc().c[0];
    let lg = &g.lc().c[0];
    let d = lf.gcd(lg);
    // (lg/d) * tf * f - (lf/d) * tg * g
    let a = lg / &d;
    let b = ZCyc::from_int(lf / &d);
    let ft: Vec<_> = f.terms[1..].iter().map(|(m, c)| (m.mul(&tf), c.clone())).collect();
    let terms = combine(ord, &ft, &a, &g.terms[1..], &b, &tg);
    ZPoly {
        terms,
        sugar: (f.sugar + tf.degree()).max(g.sugar + tg.degree()),
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

pub(crate) struct Stats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
}

/// Reduced Groebner basis (each element normalized, not yet monic).
pub(crate) fn buchberger(ord: MonOrder, input: Vec<ZPoly>) -> (Vec<ZPoly>, Stats) {
    let mut store: Vec<ZPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut stats = Stats {
        pairs_reduced: 0,
        zero_reductions: 0,
    };

    let mut input: Vec<ZPoly> = input.into_iter().filter(|p| !p.is_zero()).collect();
    input.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    for f in input {
        let red = Reducers::new(active_polys(&store, &active));
        let (mut h, _) = reduce(ord, &f, &red, false);
        if h.is_zero() {
            continue;
        }
        h.normalize();
        update(&mut store, &mut active, &mut pairs, h);
    }

    while !pairs.is_empty() {
        // lowest sugar first, then smallest lcm
        let best = (0..pairs.len())
            .min_by(|&x, &y| {
                pairs[x]
                    .sugar
                    .cmp(&pairs[y].sugar)
                    .then_with(|| ord.cmp(&pairs[x].lcm, &pairs[y].lcm))
            })
            .unwrap();
        let p = pairs.swap_remove(best);
        let s = spoly(ord, &store[p.i], &store[p.j]);
        stats.pairs_reduced += 1;
        let red = Reducers::new(active_polys(&store, &active));
        let (mut h, _) = reduce(ord, &s, &red, false);
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        h.normalize();
        if h.lm().is_one() {
            return (vec![h], stats);
        }
        update(&mut store, &mut active, &mut pairs, h);
    }

    let basis: Vec<ZPoly> = store
        .into_iter()
        .zip(active)
        .filter_map(|(p, a)| a.then_some(p))
        .collect();
    (interreduce(ord, basis), stats)
}

fn active_polys<'a>(store: &'a [ZPoly], active: &[bool]) -> Vec<&'a ZPoly> {
    store.iter().zip(active).filter_map(|(p, &a)| a.then_some(p)).collect()
}

fn update(store: &mut Vec<ZPoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: ZPoly) {
    let hn = store.len();
    let hm = *h.lm();
    let make = |i: usize, store: &[ZPoly]| {
        let g = &store[i];
        let lcm = g.lm().lcm(&hm);
        let sugar = (g.sugar + lcm.degree() - g.lm().degree()).max(h.sugar + lcm.degree() - hm.degree());
        Pair { i, j: hn, lcm, sugar }
    };
    let mut c: Vec<Pair> = (0..store.len()).filter(|&i| active[i]).map(|i| make(i, store)).collect();
    let mut d: Vec<Pair> = Vec::new();
    while let Some(p) = c.pop() {
        let coprime = store[p.i].lm().is_coprime(&hm);
        if coprime
            || (!c.iter().any(|q| q.lcm.divides(&p.lcm)) && !d.iter().any(|q| q.lcm.divides(&p.lcm)))
        {
            d.push(p);
        }
    }
    let e: Vec<Pair> = d.into_iter().filter(|p| !store[p.i].lm().is_coprime(&hm)).collect();
    pairs.retain(|p| {
        !(hm.divides(&p.lcm)
            && store[p.i].lm().lcm(&hm) != p.lcm
            && store[p.j].lm().lcm(&hm) != p.lcm)
    });
    pairs.extend(e);
    for i in 0..store.len() {
        if active[i] && hm.divides(store[i].lm()) {
            active[i] = false;
        }
    }
    store.push(h);
    active.push(true);
}

/// Minimal basis, then every element fully reduced against the others.
fn interreduce(ord: MonOrder, mut basis: Vec<ZPoly>) -> Vec<ZPoly> {
    basis.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<ZPoly> = Vec::new();
    for p in basis {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&ZPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p).collect();
        let red = Reducers::new(others);
        let (mut r, _) = reduce(ord, &minimal[i], &red, false);
        r.normalize();
        out.push(r);
    }
    out
}

/// Checks the Buchberger criterion: every S-polynomial reduces to zero.
pub(crate) fn all_spolys_reduce(ord: MonOrder, basis: &[ZPoly]) -> bool {
    let red = Reducers::new(basis.iter().collect());
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if basis[i].lm().is_coprime(basis[j].lm()) {
                continue;
            }
            let s = spoly(ord, &basis[i], &basis[j]);
            if !reduce(ord, &s, &red, false).0.is_zero() {
                return false;
            }
        }
    }
    true
}
