//! Numeric points of zero-dimensional projective schemes.
//!
//! Each affine chart is solved from the eigenstructure of its multiplication
//! matrices, the candidates are polished by Newton's method on the homogeneous
//! system and deduplicated in projective space.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactfield::CycElem;
use crate::groebner::{chart_basis, GbCache, GroebnerBasis, QuotientDim};
use crate::multipoly::{MPoly, NumPoly};
use crate::varieties::CIThreefold;

/// Every numeric threshold used downstream of the exact layer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Fubini-Study radius under which two points are identified.
    pub dedup: f64,
    /// Largest accepted generator residual of a reported point.
    pub residual: f64,
    /// Residual at which Newton refinement stops.
    pub newton: f64,
    /// Fubini-Study radius for matching against exact candidates.
    pub matching: f64,
    /// Threshold on normalised evaluations in membership census.
    pub census: f64,
    /// Relative singular-value cut for the rank of a Jacobian at a point.
    pub jacobian_rank: f64,
    /// Required ratio smallest / largest restricted-Hessian singular value.
    pub hessian_gap: f64,
    /// Relative cuts over which numeric kernel dimensions must agree.
    pub rank_plateau: Vec<f64>,
    /// Distance to a root of unity below which an eigenvalue is snapped.
    pub snap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub tol: Tolerances,
    pub seed: u64,
    pub newton_max_iter: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tol: Tolerances {
                dedup: 1e-6,
                residual: 1e-8,
                newton: 1e-10,
                matching: 1e-7,
                census: 1e-7,
                jacobian_rank: 1e-6,
                hessian_gap: 1e-4,
                rank_plateau: vec![1e-10, 1e-9, 1e-8, 1e-7, 1e-6],
                snap: 1e-6,
            },
            seed: 20240601,
            newton_max_iter: 30,
        }
    }
}

impl Config {
    /// All acceptance thresholds ten times tighter.
    pub fn strict() -> Self {
        let mut c = Config::default();
        let t = &mut c.tol;
        t.dedup /= 10.0;
        t.residual /= 10.0;
        t.newton /= 10.0;
        t.matching /= 10.0;
        t.census /= 10.0;
        t.snap /= 10.0;
        c
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// A projective point scaled so that its largest coordinate is exactly 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CPoint {
    pub coords: Vec<Complex64>,
    pub residual: f64,
}

impl CPoint {
    pub fn new(coords: Vec<Complex64>, residual: f64) -> Self {
        CPoint {
            coords: normalize(&coords),
            residual,
        }
    }

    pub fn from_exact(p: &[CycElem]) -> Self {
        CPoint::new(p.iter().map(CycElem::embed).collect(), 0.0)
    }

    /// Index of the coordinate equal to 1.
    pub fn chart(&self) -> usize {
        argmax_abs(&self.coords)
    }
}

impl Serialize for CPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CPoint", 2)?;
        let pairs: Vec<[f64; 2]> = self.coords.iter().map(|c| [c.re, c.im]).collect();
        st.serialize_field("coords", &pairs)?;
        st.serialize_field("residual", &self.residual)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            coords: Vec<[f64; 2]>,
            residual: f64,
        }
        let r = Raw::deserialize(d)?;
        Ok(CPoint {
            coords: r.coords.iter().map(|c| Complex64::new(c[0], c[1])).collect(),
            residual: r.residual,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolutionSet {
    pub points: Vec<CPoint>,
    /// Charts in which each point was first found.
    pub found_in_chart: Vec<usize>,
    /// Quotient dimension of every chart, with multiplicity.
    pub chart_dims: Vec<usize>,
}

impl SolutionSet {
    pub fn empty() -> Self {
        SolutionSet {
            points: vec![],
            found_in_chart: vec![],
            chart_dims: vec![],
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(|p| p.residual).fold(0.0, f64::max)
    }

    pub fn subset(&self, mut keep: impl FnMut(&CPoint) -> bool) -> SolutionSet {
        let mut out = SolutionSet {
            points: vec![],
            found_in_chart: vec![],
            chart_dims: self.chart_dims.clone(),
        };
        for (p, c) in self.points.iter().zip(&self.found_in_chart) {
            if keep(p) {
                out.points.push(p.clone());
                out.found_in_chart.push(*c);
            }
        }
        out
    }

    /// The points at the given indices, in that order.
    pub fn select(&self, idx: &[usize]) -> SolutionSet {
        SolutionSet {
            points: idx.iter().map(|&i| self.points[i].clone()).collect(),
            found_in_chart: idx.iter().map(|&i| self.found_in_chart[i]).collect(),
            chart_dims: self.chart_dims.clone(),
        }
    }

    /// Number of distinct points after identifying those closer than `radius`.
    pub fn distinct_at(&self, radius: f64) -> usize {
        dedup(self.points.clone(), radius).len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

fn argmax_abs(v: &[Complex64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.norm() > v[best].norm() {
            best = i;
        }
    }
    best
}

/// Rescales so the largest-modulus coordinate becomes 1.
pub fn normalize(v: &[Complex64]) -> Vec<Complex64> {
    if v.is_empty() {
        return vec![];
    }
    let k = argmax_abs(v);
    let s = v[k];
    if s.norm() == 0.0 {
        return v.to_vec();
    }
    let mut out: Vec<Complex64> = v.iter().map(|x| x / s).collect();
    out[k] = Complex64::new(1.0, 0.0);
    out
}

/// Fubini-Study distance, computed from the phase-aligned chordal distance
/// so that it stays accurate for nearby points.
pub fn fubini_study(a: &[Complex64], b: &[Complex64]) -> f64 {
    let na = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let inner: Complex64 = a.iter().zip(b).map(|(x, y)| y.conj() * x).sum();
    let phase = if inner.norm() > 0.0 {
        inner / inner.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let chord = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x / na - phase * y / nb).norm_sqr())
        .sum::<f64>()
        .sqrt();
    2.0 * (chord / 2.0).min(1.0).asin()
}

fn dedup(points: Vec<CPoint>, radius: f64) -> Vec<CPoint> {
    let mut out: Vec<CPoint> = Vec::new();
    for p in points {
        if !out.iter().any(|q| fubini_study(&q.coords, &p.coords) <= radius) {
            out.push(p);
        }
    }
    out
}

/// Largest generator modulus at the normalised point.
pub fn residual(system: &[NumPoly], p: &[Complex64]) -> f64 {
    let p = normalize(p);
    system.iter().map(|f| f.eval(&p).norm()).fold(0.0, f64::max)
}

fn embed_matrix(m: &[Vec<CycElem>]) -> DMatrix<Complex64> {
    let n = m.len();
    DMatrix::from_fn(n, n, |i, j| m[i][j].embed())
}

/// Affine solutions of a zero-dimensional chart basis, as projective points
/// with 1 inserted at `chart`. Unrefined.
pub fn chart_candidates(gb: &GroebnerBasis, chart: usize, cfg: &Config) -> Result<Vec<Vec<Complex64>>> {
    let sols = affine_solutions(gb, cfg.seed ^ (chart as u64).wrapping_mul(0x9e37_79b9))
        .map_err(|_| Error::NotZeroDimensional { chart })?;
    Ok(sols
        .into_iter()
        .map(|a| {
            let mut p = Vec::with_capacity(a.len() + 1);
            p.extend_from_slice(&a[..chart]);
            p.push(Complex64::new(1.0, 0.0));
            p.extend_from_slice(&a[chart..]);
            p
        })
        .collect())
}

/// Eigenvalue solutions of a zero-dimensional affine ideal, one per quotient
/// dimension (repeated for multiple points). Unrefined.
pub fn affine_solutions(gb: &GroebnerBasis, seed: u64) -> Result<Vec<Vec<Complex64>>> {
    let basis = gb.quotient_basis()?;
    let n = gb.ring().nvars();
    if basis.is_empty() {
        return Ok(vec![]);
    }
    let d = basis.len();
    // transposed multiplication matrices: their eigenvectors are evaluation vectors
    let mats: Vec<DMatrix<Complex64>> = (0..n)
        .map(|v| gb.multiplication_matrix(&basis, v).map(|m| embed_matrix(&m).transpose()))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut comb = DMatrix::<Complex64>::zeros(d, d);
    for m in &mats {
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        comb += m * c;
    }
    let scale = comb.norm().max(1.0);
    let (_, t) = Schur::new(comb.clone()).unpack();
    let mut out = Vec::with_capacity(d);
    for k in 0..d {
        let lambda = t[(k, k)];
        let shift = lambda + Complex64::new(1e-10 * scale, 1e-10 * scale);
        let shifted = &comb - DMatrix::identity(d, d) * shift;
        let lu = shifted.lu();
        let mut y = DVector::<Complex64>::from_fn(d, |i, _| Complex64::new(1.0 + (i as f64) * 1e-3, 0.5));
        for _ in 0..3 {
            if let Some(z) = lu.solve(&y) {
                let nz = z.norm();
                if nz == 0.0 || !nz.is_finite() {
                    break;
                }
                y = z / Complex64::new(nz, 0.0);
            }
        }
        let yy = y.dotc(&y);
        out.push(mats.iter().map(|m| y.dotc(&(m * &y)) / yy).collect());
    }
    Ok(out)
}

/// Newton's method in the chart of the largest coordinate, on the square
/// subsystem chosen by column-pivoted QR of the transposed Jacobian.
pub fn newton_refine(system: &[NumPoly], start: &[Complex64], cfg: &Config) -> Vec<Complex64> {
    let n = start.len();
    let mut p = normalize(start);
    let derivs: Vec<Vec<NumPoly>> = system.iter().map(|f| (0..n).map(|j| f.derivative(j)).collect()).collect();
    let mut best = (residual(system, &p), p.clone());
    for _ in 0..cfg.newton_max_iter {
        if best.0 <= cfg.tol.newton {
            break;
        }
        let c = argmax_abs(&p);
        let free: Vec<usize> = (0..n).filter(|&j| j != c).collect();
        let m = system.len();
        let jac = DMatrix::<Complex64>::from_fn(m, free.len(), |i, j| derivs[i][free[j]].eval(&p));
        let f = DVector::<Complex64>::from_fn(m, |i, _| system[i].eval(&p));
        let rows = pivot_rows(&jac, free.len());
        let js = DMatrix::from_fn(rows.len(), free.len(), |i, j| jac[(rows[i], j)]);
        let fs = DVector::from_fn(rows.len(), |i, _| f[rows[i]]);
        let step = match js.clone().lu().solve(&fs) {
            Some(s) if s.iter().all(|x| x.is_finite()) => s,
            _ => match jac.clone().svd(true, true).solve(&f, 1e-12) {
                Ok(s) => s,
                Err(_) => break,
            },
        };
        for (k, &j) in free.iter().enumerate() {
            p[j] -= step[k];
        }
        p = normalize(&p);
        let r = residual(system, &p);
        if r < best.0 {
            best = (r, p.clone());
        } else if r > 10.0 * best.0 {
            break;
        }
    }
    best.1
}

/// Indices of `k` rows of `jac` picked by QR column pivoting of its transpose.
fn pivot_rows(jac: &DMatrix<Complex64>, k: usize) -> Vec<usize> {
    let m = jac.nrows();
    let qr = jac.transpose().col_piv_qr();
    let mut idx = DMatrix::<f64>::from_fn(1, m, |_, j| j as f64);
    qr.p().permute_columns(&mut idx);
    idx.iter().take(k.min(m)).map(|&x| x as usize).collect()
}

/// All points of the projective scheme cut out by homogeneous `system`,
/// assuming each chart is zero-dimensional.
pub fn solve_zero_dim(system: &[MPoly], cfg: &Config) -> Result<SolutionSet> {
    solve_zero_dim_cached(system, cfg, None)
}

pub fn solve_zero_dim_cached(system: &[MPoly], cfg: &Config, cache: Option<&GbCache>) -> Result<SolutionSet> {
    let n = system.first().map_or(0, |f| f.ring().nvars());
    let bases: Vec<GroebnerBasis> = (0..n)
        .into_par_iter()
        .map(|c| chart_basis(system, c, cache))
        .collect::<Result<_>>()?;
    solve_from_bases(system, &bases, cfg)
}

/// Same as [`solve_zero_dim`] with precomputed chart bases (`bases[i]` for chart i).
pub fn solve_from_bases(system: &[MPoly], bases: &[GroebnerBasis], cfg: &Config) -> Result<SolutionSet> {
    let num: Vec<NumPoly> = system.iter().map(NumPoly::new).collect();
    let mut dims = Vec::with_capacity(bases.len());
    for (c, gb) in bases.iter().enumerate() {
        match gb.quotient_dim() {
            QuotientDim::Finite(d) => dims.push(d),
            QuotientDim::Infinite => return Err(Error::NotZeroDimensional { chart: c }),
        }
    }
    let per_chart: Vec<Vec<CPoint>> = bases
        .par_iter()
        .enumerate()
        .map(|(c, gb)| -> Result<Vec<CPoint>> {
            let cands = chart_candidates(gb, c, cfg)?;
            let mut pts = Vec::new();
            for q in cands {
                let p = newton_refine(&num, &q, cfg);
                let r = residual(&num, &p);
                pts.push(CPoint::new(p, r));
            }
            Ok(dedup(pts, cfg.tol.dedup))
        })
        .collect::<Result<_>>()?;
    let mut points: Vec<CPoint> = Vec::new();
    let mut found = Vec::new();
    for (c, pts) in per_chart.into_iter().enumerate() {
        for p in pts {
            if !points.iter().any(|q| fubini_study(&q.coords, &p.coords) <= cfg.tol.dedup) {
                points.push(p);
                found.push(c);
            }
        }
    }
    if let Some(bad) = points.iter().find(|p| !(p.residual <= cfg.tol.residual)) {
        return Err(Error::Numeric(format!(
            "point {:?} refined only to residual {:e}",
            bad.coords, bad.residual
        )));
    }
    // deterministic order: by coordinates
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| cmp_points(&points[a], &points[b]));
    Ok(SolutionSet {
        points: idx.iter().map(|&i| points[i].clone()).collect(),
        found_in_chart: idx.iter().map(|&i| found[i]).collect(),
        chart_dims: dims,
    })
}

fn cmp_points(a: &CPoint, b: &CPoint) -> std::cmp::Ordering {
    let key = |p: &CPoint| -> Vec<f64> {
        p.coords
            .iter()
            .flat_map(|c| [(c.re * 1e6).round(), (c.im * 1e6).round()])
            .collect()
    };
    key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OdpVerdict {
    Odp,
    Degenerate,
    NotIsolatedSuspect,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OdpCertificate {
    pub point: CPoint,
    /// Coefficients of the combination of the two equations that is singular at the point.
    pub lambda: [[f64; 2]; 2],
    /// Singular values of the Jacobian at the point.
    pub jacobian_singular_values: Vec<f64>,
    /// Singular values of the restricted Hessian, decreasing.
    pub hessian_singular_values: Vec<f64>,
    pub verdict: OdpVerdict,
}

/// Local test that `p` is an ordinary double point of the complete intersection.
pub fn certify_odp(x: &CIThreefold, p: &CPoint, cfg: &Config) -> OdpCertificate {
    certify_odp_pair(x.a(), x.b(), p, cfg)
}

/// [`certify_odp`] for any pair of homogeneous equations in P^5.
pub fn certify_odp_pair(a: &MPoly, b: &MPoly, p: &CPoint, cfg: &Config) -> OdpCertificate {
    let n = a.ring().nvars();
    let pt = normalize(&p.coords);
    let c = argmax_abs(&pt);
    let free: Vec<usize> = (0..n).filter(|&j| j != c).collect();
    let eqs = [NumPoly::new(a), NumPoly::new(b)];
    let grads: Vec<Vec<NumPoly>> = eqs.iter().map(|f| (0..n).map(|j| f.derivative(j)).collect()).collect();
    let jac = DMatrix::<Complex64>::from_fn(2, free.len(), |i, j| grads[i][free[j]].eval(&pt));
    let svd = jac.clone().svd(true, true);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let mk = |verdict, lambda, hs| OdpCertificate {
        point: CPoint::new(pt.clone(), p.residual),
        lambda,
        jacobian_singular_values: sv.clone(),
        hessian_singular_values: hs,
        verdict,
    };
    let zero = [[0.0; 2]; 2];
    let s_max = sv[0];
    if s_max <= cfg.tol.jacobian_rank {
        return mk(OdpVerdict::Degenerate, zero, vec![]);
    }
    if sv[1] > cfg.tol.jacobian_rank * s_max {
        // smooth point: nothing to certify
        return mk(OdpVerdict::NotIsolatedSuspect, zero, vec![]);
    }
    // left null vector of the 2 x 5 Jacobian: lambda^T J = 0
    let u = svd.u.as_ref().expect("u requested");
    let (imin, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &s)| if s < acc.1 { (i, s) } else { acc });
    let lam = [u[(0, imin)].conj(), u[(1, imin)].conj()];
    let mu = [u[(0, 1 - imin)].conj(), u[(1, 1 - imin)].conj()];
    // tangent space of the smooth combination: kernel of its chart gradient
    let gh = DMatrix::<Complex64>::from_fn(1, free.len(), |_, j| mu[0] * jac[(0, j)] + mu[1] * jac[(1, j)]);
    let k = (0..free.len())
        .max_by(|&i, &j| gh[(0, i)].norm().partial_cmp(&gh[(0, j)].norm()).unwrap())
        .unwrap();
    let others: Vec<usize> = (0..free.len()).filter(|&j| j != k).collect();
    let spanning = DMatrix::<Complex64>::from_fn(free.len(), others.len(), |i, col| {
        let j = others[col];
        if i == j {
            Complex64::new(1.0, 0.0)
        } else if i == k {
            -gh[(0, j)] / gh[(0, k)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let basis = spanning.qr().q();
    let hess = DMatrix::<Complex64>::from_fn(free.len(), free.len(), |i, j| {
        let h0 = grads[0][free[i]].derivative(free[j]).eval(&pt);
        let h1 = grads[1][free[i]].derivative(free[j]).eval(&pt);
        lam[0] * h0 + lam[1] * h1
    });
    let restricted = basis.transpose() * hess * &basis;
    let mut hs: Vec<f64> = restricted.svd(false, false).singular_values.iter().copied().collect();
    hs.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let ok = hs[0] > 0.0 && hs[hs.len() - 1] >= cfg.tol.hessian_gap * hs[0];
    let lambda = [[lam[0].re, lam[0].im], [lam[1].re, lam[1].im]];
    mk(if ok { OdpVerdict::Odp } else { OdpVerdict::NotIsolatedSuspect }, lambda, hs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatchMode {
    /// Every found point must match an expected one and vice versa.
    Bijection,
    /// Every expected point must match a distinct found point.
    Injection,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatchReport {
    /// (expected index, found index) pairs.
    pub pairs: Vec<(usize, usize)>,
    /// Galois exponent k of the embedding z -> exp(2 pi i k / 12) that matched.
    pub galois: u32,
    pub max_distance: f64,
    pub unmatched_expected: Vec<usize>,
}

impl MatchReport {
    pub fn is_complete(&self) -> bool {
        self.unmatched_expected.is_empty()
    }
}

/// Matches numeric points with exact candidates, retrying under the
/// nontrivial Galois conjugations when the fixed embedding fails.
pub fn match_points(found: &SolutionSet, expected: &[Vec<CycElem>], mode: MatchMode, cfg: &Config) -> Result<MatchReport> {
    let ok_count = match mode {
        MatchMode::Bijection => found.len() == expected.len(),
        MatchMode::Injection => found.len() >= expected.len(),
    };
    if !ok_count {
        return Err(Error::CardinalityMismatch {
            found: found.len(),
            expected: expected.len(),
        });
    }
    let mut first = None;
    for k in [1u32, 5, 7, 11] {
        let emb: Vec<Vec<Complex64>> = expected
            .iter()
            .map(|p| p.iter().map(|c| c.embed_conjugate(k)).collect())
            .collect();
        let rep = greedy_match(found, &emb, k, cfg.tol.matching);
        if rep.is_complete() {
            return Ok(rep);
        }
        first.get_or_insert(rep);
    }
    Ok(first.expect("at least one embedding tried"))
}

fn greedy_match(found: &SolutionSet, expected: &[Vec<Complex64>], k: u32, radius: f64) -> MatchReport {
    let mut used = vec![false; found.len()];
    let mut pairs = Vec::new();
    let mut unmatched = Vec::new();
    let mut worst: f64 = 0.0;
    for (i, e) in expected.iter().enumerate() {
        let best = found
            .points
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, p)| (j, fubini_study(&p.coords, e)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        match best {
            Some((j, d)) if d <= radius => {
                used[j] = true;
                worst = worst.max(d);
                pairs.push((i, j));
            }
            _ => unmatched.push(i),
        }
    }
    MatchReport {
        pairs,
        galois: k,
        max_distance: worst,
        unmatched_expected: unmatched,
    }
}

/// A named set of homogeneous forms; a point lies in it when all vanish.
#[derive(Clone, Debug)]
pub struct NamedLocus {
    pub name: String,
    pub forms: Vec<MPoly>,
}

impl NamedLocus {
    pub fn new(name: &str, forms: Vec<MPoly>) -> Self {
        NamedLocus {
            name: name.to_string(),
            forms,
        }
    }

    pub fn from_basis(name: &str, gb: &GroebnerBasis) -> Self {
        NamedLocus::new(name, gb.generators().to_vec())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Census {
    /// Names of the loci through each point, in locus order.
    pub rows: Vec<Vec<String>>,
    pub counts: BTreeMap<String, usize>,
}

impl Census {
    /// Points grouped by identical membership pattern.
    pub fn classes(&self) -> BTreeMap<Vec<String>, Vec<usize>> {
        let mut out: BTreeMap<Vec<String>, Vec<usize>> = BTreeMap::new();
        for (i, r) in self.rows.iter().enumerate() {
            out.entry(r.clone()).or_default().push(i);
        }
        out
    }
}

/// Which loci pass through each point, judged on coefficient-normalised evaluations.
pub fn membership_census(points: &SolutionSet, loci: &[NamedLocus], cfg: &Config) -> Census {
    let num: Vec<(String, Vec<NumPoly>)> = loci
        .iter()
        .map(|l| (l.name.clone(), l.forms.iter().map(NumPoly::new).collect()))
        .collect();
    let mut counts: BTreeMap<String, usize> = loci.iter().map(|l| (l.name.clone(), 0)).collect();
    let mut rows = Vec::with_capacity(points.len());
    for p in &points.points {
        let mut row = Vec::new();
        for (name, forms) in &num {
            if forms.iter().all(|f| vanishes(f, &p.coords, cfg.tol.census)) {
                row.push(name.clone());
                *counts.get_mut(name).unwrap() += 1;
            }
        }
        rows.push(row);
    }
    Census { rows, counts }
}

/// |f(p)| / ||f||_1 below `tol`, at the normalised point.
pub fn vanishes(f: &NumPoly, p: &[Complex64], tol: f64) -> bool {
    let p = normalize(p);
    let norm = f.coeff_norm();
    norm == 0.0 || f.eval(&p).norm() / norm <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{parse::parse_poly, rings};

    fn v(s: &str) -> MPoly {
        parse_poly(&rings::v(), s).unwrap()
    }

    #[test]
    fn fubini_study_is_scale_invariant() {
        let a = vec![Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.0)];
        let s = Complex64::new(0.3, -4.0);
        let b: Vec<Complex64> = a.iter().map(|x| x * s).collect();
        assert!(fubini_study(&a, &b) < 1e-15);
        let c = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let d = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!((fubini_study(&c, &d) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn double_point_counts_once() {
        let sys: Vec<MPoly> = ["v1^2", "v2", "v3", "v4", "v5"].iter().map(|s| v(s)).collect();
        let sols = solve_zero_dim(&sys, &Config::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols.chart_dims[0], 2);
        assert!((sols.points[0].coords[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn model_node_is_certified() {
        let a = v("v0*v1 - v2*v3");
        let b = v("v4");
        let p = CPoint::new(
            vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0].into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
            0.0,
        );
        let cert = certify_odp_pair(&a, &b, &p, &Config::default());
        assert_eq!(cert.verdict, OdpVerdict::Odp);
        assert!(cert.hessian_singular_values[3] > 0.5);
    }

    #[test]
    fn empty_match_is_trivial() {
        let r = match_points(&SolutionSet::empty(), &[], MatchMode::Bijection, &Config::default()).unwrap();
        assert!(r.is_complete());
        assert!(r.pairs.is_empty());
    }
}
