//! First-order deformations of the nodal threefolds.
//!
//! The graded Jacobian map sends six linear forms (g_j) to the pair
//! (sum g_j dA/dv_j, sum g_j dB/dv_j) of cubics modulo the span of
//! (A,0), (B,0), (0,A), (0,B). Its cokernel is cut down by requiring the
//! 2x2 minors g1 dB/dv_j - g2 dA/dv_j to vanish at every node; the dimension
//! of what survives is h^{2,1} of the small resolution.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::CycElem;
use crate::linalg::{self, Matrix};
use crate::multipoly::{rings, MPoly, MonOrder, Monomial, NumPoly};
use crate::numsolve::{normalize, Config, SolutionSet};
use crate::varieties::CIThreefold;

/// Degree-d monomials in `n` variables, grevlex-decreasing.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, n: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == n - 1 {
            cur.push(left);
            out.push(Monomial::from_exps(cur));
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(i + 1, n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d as u16, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| MonOrder::Grevlex.cmp(b, a));
    out
}

/// The Jacobian map on linear forms, in reduced coordinates.
#[derive(Clone, Debug)]
pub struct GradedMap {
    /// Cubic monomials indexing each half of the raw codomain.
    pub cubics: Vec<Monomial>,
    /// Raw codomain coordinates (slot 0 or 1, cubic index) kept after the reduction.
    pub kept: Vec<(usize, usize)>,
    /// Reduced relation rows (A,0), (B,0), (0,A), (0,B) in raw coordinates.
    relations: Matrix,
    relation_pivots: Vec<usize>,
    /// Columns indexed by (j, k): g_j = v_k; stored as rows of length `kept.len()`.
    pub columns: Matrix,
    pub rank: usize,
}

impl GradedMap {
    pub fn domain_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn codomain_dim(&self) -> usize {
        self.kept.len()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.codomain_dim() - self.rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.domain_dim() - self.rank
    }

    /// Coordinates of a pair of cubics after reduction modulo the relations.
    pub fn reduce_pair(&self, g1: &MPoly, g2: &MPoly) -> Vec<CycElem> {
        let mut raw = raw_coords(&self.cubics, g1, g2);
        eliminate(&mut raw, &self.relations, &self.relation_pivots);
        self.kept.iter().map(|&(s, i)| raw[s * self.cubics.len() + i].clone()).collect()
    }
}

fn raw_coords(cubics: &[Monomial], g1: &MPoly, g2: &MPoly) -> Vec<CycElem> {
    cubics.iter().map(|m| g1.coeff(m)).chain(cubics.iter().map(|m| g2.coeff(m))).collect()
}

fn eliminate(v: &mut [CycElem], rows: &Matrix, pivots: &[usize]) {
    for (r, &p) in rows.iter().zip(pivots) {
        if v[p].is_zero() {
            continue;
        }
        let f = v[p].clone();
        for (x, y) in v.iter_mut().zip(r) {
            if !y.is_zero() {
                *x -= &(&f * y);
            }
        }
    }
}

pub fn graded_jacobian_map(x: &CIThreefold) -> Result<GradedMap> {
    let v = rings::v();
    let cubics = monomials_of_degree(6, 3);
    let nc = cubics.len();
    let (a, b) = (x.a(), x.b());
    let zero = MPoly::zero(&v);
    let mut relations: Matrix = vec![
        raw_coords(&cubics, a, &zero),
        raw_coords(&cubics, b, &zero),
        raw_coords(&cubics, &zero, a),
        raw_coords(&cubics, &zero, b),
    ];
    let pivots = linalg::row_reduce(&mut relations);
    if pivots.len() != 4 {
        return Err(Error::DependentForms);
    }
    relations.truncate(4);
    let kept: Vec<(usize, usize)> = (0..2 * nc)
        .filter(|c| !pivots.contains(c))
        .map(|c| (c / nc, c % nc))
        .collect();
    let da: Vec<MPoly> = a.gradient();
    let db: Vec<MPoly> = b.gradient();
    let mut map = GradedMap {
        cubics,
        kept,
        relations,
        relation_pivots: pivots,
        columns: vec![],
        rank: 0,
    };
    let mut columns = Vec::with_capacity(36);
    for j in 0..6 {
        for k in 0..6 {
            let vk = MPoly::var(&v, k);
            columns.push(map.reduce_pair(&(&vk * &da[j]), &(&vk * &db[j])));
        }
    }
    map.rank = linalg::rank_exact(&columns);
    map.columns = columns;
    Ok(map)
}

/// Complement of the image spanned by unit vectors on non-pivot coordinates.
#[derive(Clone, Debug)]
pub struct CokernelBasis {
    /// Representative pairs (g1, g2), each a single cubic monomial in one slot.
    pub pairs: Vec<(MPoly, MPoly)>,
}

impl CokernelBasis {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

pub fn cokernel_basis(m: &GradedMap) -> CokernelBasis {
    let mut rows = m.columns.clone();
    let piv = linalg::row_reduce(&mut rows);
    let v = rings::v();
    let pairs = (0..m.codomain_dim())
        .filter(|c| !piv.contains(c))
        .map(|c| {
            let (slot, i) = m.kept[c];
            let mono = MPoly::monomial(&v, m.cubics[i], CycElem::one());
            if slot == 0 {
                (mono, MPoly::zero(&v))
            } else {
                (MPoly::zero(&v), mono)
            }
        })
        .collect();
    CokernelBasis { pairs }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum H11Source {
    /// Equal to h^{2,1} by the cited symmetry of the small resolution.
    ComputedEquality,
    /// Recorded from the literature, not recomputed.
    ExternalValue,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HodgeReport {
    pub cokernel_dim: usize,
    pub psi_kernel_dim: usize,
    /// (relative tolerance, numeric rank) over the plateau window, for each row ordering.
    pub ranks: Vec<Vec<(f64, usize)>>,
    pub condition_rows: usize,
    pub h11: Option<(usize, H11Source)>,
    pub h21: usize,
}

/// Kernel of psi: cokernel classes whose minors with the Jacobian vanish at every point of `s`.
pub fn psi_kernel(x: &CIThreefold, c: &CokernelBasis, s: &SolutionSet, cfg: &Config) -> Result<HodgeReport> {
    let n = c.len();
    let da: Vec<NumPoly> = x.a().gradient().iter().map(NumPoly::new).collect();
    let db: Vec<NumPoly> = x.b().gradient().iter().map(NumPoly::new).collect();
    let g: Vec<(NumPoly, NumPoly)> = c.pairs.iter().map(|(g1, g2)| (NumPoly::new(g1), NumPoly::new(g2))).collect();
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for p in &s.points {
        let p = normalize(&p.coords);
        let g_at: Vec<(Complex64, Complex64)> = g.iter().map(|(a, b)| (a.eval(&p), b.eval(&p))).collect();
        for j in 0..6 {
            let (aj, bj) = (da[j].eval(&p), db[j].eval(&p));
            let row: Vec<Complex64> = g_at.iter().map(|(g1, g2)| g1 * bj - g2 * aj).collect();
            let norm = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 0.0 {
                rows.push(row.iter().map(|z| z / norm).collect());
            }
        }
    }
    let mut ranks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for pass in 0..3 {
        let mut order: Vec<usize> = (0..rows.len()).collect();
        if pass > 0 {
            order.shuffle(&mut rng);
        }
        ranks.push(numeric_ranks(&rows, &order, n, &cfg.tol.rank_plateau));
    }
    let rank0 = ranks[0].first().map_or(0, |r| r.1);
    if ranks.iter().flatten().any(|r| r.1 != rank0) {
        return Err(Error::NoRankPlateau);
    }
    let dim = n - rank0;
    Ok(HodgeReport {
        cokernel_dim: n,
        psi_kernel_dim: dim,
        ranks,
        condition_rows: rows.len(),
        h11: None,
        h21: dim,
    })
}

fn numeric_ranks(rows: &[Vec<Complex64>], order: &[usize], ncols: usize, tols: &[f64]) -> Vec<(f64, usize)> {
    if rows.is_empty() || ncols == 0 {
        return tols.iter().map(|&t| (t, 0)).collect();
    }
    let m = DMatrix::<Complex64>::from_fn(order.len(), ncols, |i, j| rows[order[i]][j]);
    let sv = m.singular_values();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    tols.iter()
        .map(|&t| (t, sv.iter().filter(|&&s| s > t * smax).count()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HodgeTarget {
    YPrime,
    YDoublePrime,
}

/// Completes the report with h^{1,1}: equal to h^{2,1} for Y', recorded as 2 for Y''.
pub fn h11_report(target: HodgeTarget, mut report: HodgeReport) -> HodgeReport {
    report.h11 = Some(match target {
        HodgeTarget::YPrime => (report.h21, H11Source::ComputedEquality),
        HodgeTarget::YDoublePrime => (2, H11Source::ExternalValue),
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_monomial_count() {
        let m = monomials_of_degree(6, 3);
        assert_eq!(m.len(), 56);
        assert!(m.iter().all(|x| x.degree() == 3));
        assert_eq!(m[0], Monomial::from_exps(&[3, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn empty_point_set_keeps_whole_cokernel() {
        let x = crate::varieties::generic_family_sample(1);
        let m = graded_jacobian_map(&x).unwrap();
        let c = cokernel_basis(&m);
        let r = psi_kernel(&x, &c, &SolutionSet::empty(), &Config::default()).unwrap();
        assert_eq!(r.psi_kernel_dim, c.len());
    }
}
