//! Hilbert series of monomial quotients.

use crate::multipoly::Monomial;

/// Hilbert-series summary of S/M for a monomial ideal M in n variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// Coefficients of N(t) in H(t) = N(t) / (1 - t)^n.
    pub numerator: Vec<i128>,
    pub krull_dim: usize,
    pub degree: u64,
}

fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = gens.to_vec();
    v.sort_by_key(|m| m.degree());
    v.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in v {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn poly_sub_shift(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, x) in b.iter().enumerate() {
        a[i + shift] -= x;
    }
}

/// Numerator N(t) of the Hilbert series of S/<gens>.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<i128> {
    let g = minimalize(gens);
    if g.is_empty() {
        return vec![1];
    }
    if g.iter().any(Monomial::is_one) {
        return vec![0];
    }
    // pure powers of distinct variables: product of (1 - t^d)
    if g.iter().all(|m| m.pure_power_var().is_some()) {
        let mut acc = vec![1i128];
        for m in &g {
            let d = m.degree() as usize;
            let prev = acc.clone();
            poly_sub_shift(&mut acc, &prev, d);
        }
        return acc;
    }
    // N(M) = N(M') - t^deg(m) N(M' : m), splitting off a non-pure-power generator
    let idx = g.iter().position(|m| m.pure_power_var().is_none()).unwrap();
    let m = g[idx];
    let rest: Vec<Monomial> = g.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, x)| *x).collect();
    let colon: Vec<Monomial> = rest
        .iter()
        .map(|x| {
            let l = x.lcm(&m);
            l.div(&m)
        })
        .collect();
    let mut a = hilbert_numerator(&rest);
    let b = hilbert_numerator(&colon);
    poly_sub_shift(&mut a, &b, m.degree() as usize);
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

pub(crate) fn hilbert_data(gens: &[Monomial], nvars: usize) -> HilbertData {
    let numerator = hilbert_numerator(gens);
    let mut q = numerator.clone();
    let mut k = 0usize;
    // divide by (1 - t) while N(1) = 0
    while q.iter().any(|&c| c != 0) && q.iter().sum::<i128>() == 0 {
        // synthetic division by (1 - t): q = (1 - t) r  =>  r_i = sum_{j<=i} q_j
        let mut r = Vec::with_capacity(q.len());
        let mut s = 0i128;
        for &c in &q[..q.len() - 1] {
            s += c;
            r.push(s);
        }
        q = r;
        k += 1;
    }
    let zero = q.iter().all(|&c| c == 0);
    HilbertData {
        numerator,
        krull_dim: if zero { 0 } else { nvars - k },
        degree: if zero { 0 } else { q.iter().sum::<i128>() as u64 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisted_cubic_type_counts() {
        // <x0*x1> in 2 vars: two points on P^1, dim 1, degree 2
        let h = hilbert_data(&[Monomial::from_exps(&[1, 1])], 2);
        assert_eq!((h.krull_dim, h.degree), (1, 2));
        // <x0^2> in 3 vars: double line
        let h = hilbert_data(&[Monomial::from_exps(&[2, 0, 0])], 3);
        assert_eq!((h.krull_dim, h.degree), (2, 2));
        let h = hilbert_data(&[], 3);
        assert_eq!((h.krull_dim, h.degree), (3, 1));
    }
}
