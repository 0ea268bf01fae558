//! Finite linear automorphisms of P^5 acting on the threefolds.
//!
//! A [`LinearAut`] stores the matrix M of the point map p -> M p; forms are
//! pulled back as f -> f(M v). Fixed loci come from the eigenspaces of M,
//! twist factors of the canonical form are computed in two independent ways,
//! and tangent eigenvalues at fixed points are snapped to roots of unity to
//! give quotient singularity types.

use std::fmt;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{CycElem, Rational};
use crate::groebner::{buchberger, chart_basis, GroebnerBasis};
use crate::linalg::{self, Matrix};
use crate::multipoly::{parse::parse_poly, rings, MPoly, MonOrder, Monomial, NumPoly, Ring, RingRef};
use crate::numsolve::{self, fubini_study, CPoint, Config, SolutionSet};
use crate::varieties::{CIThreefold, NamedFormRegistry};

#[derive(Clone, Debug, PartialEq)]
pub struct LinearAut {
    pub name: String,
    matrix: Matrix,
    order: u32,
}

impl LinearAut {
    /// Checks that `matrix^order` is scalar and no smaller power is.
    pub fn new(name: &str, matrix: Matrix, order: u32) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Config("automorphism matrix must be square".into()));
        }
        if linalg::rank_exact(&matrix) < n {
            return Err(Error::SingularMatrix);
        }
        if order == 0 || order > 12 {
            return Err(Error::Config(format!("unsupported order {order}")));
        }
        let mut pw = matrix.clone();
        for k in 1..=order {
            if k > 1 {
                pw = linalg::mat_mul(&pw, &matrix);
            }
            let scalar = is_scalar(&pw);
            if scalar != (k == order) {
                return Err(Error::Config(format!("{name}: matrix does not have order {order}")));
            }
        }
        Ok(LinearAut {
            name: name.to_string(),
            matrix,
            order,
        })
    }

    /// Parses `a->b[*c],...`: coordinate a of the point moves to position b,
    /// optionally multiplied by the scalar c.
    pub fn from_table(name: &str, table: &str, order: u32) -> Result<Self> {
        let entries: Vec<&str> = table.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let n = entries.len();
        let mut m = vec![vec![CycElem::zero(); n]; n];
        let scalar_ring = Ring::new("scalars", &[], MonOrder::Grevlex);
        let mut seen = vec![false; n];
        for e in &entries {
            let (src, rest) = e
                .split_once("->")
                .ok_or_else(|| Error::Config(format!("bad table entry '{e}'")))?;
            let (dst, scal) = match rest.split_once('*') {
                Some((d, s)) => (d, Some(s)),
                None => (rest, None),
            };
            let a: usize = src.trim().parse().map_err(|_| Error::Config(format!("bad index in '{e}'")))?;
            let b: usize = dst.trim().parse().map_err(|_| Error::Config(format!("bad index in '{e}'")))?;
            if a >= n || b >= n || seen[b] {
                return Err(Error::Config(format!("table entry '{e}' is not a permutation")));
            }
            seen[b] = true;
            let c = match scal {
                Some(s) => {
                    let p = parse_poly(&scalar_ring, s)?;
                    if !p.is_constant() {
                        return Err(Error::Config(format!("non-constant scalar in '{e}'")));
                    }
                    p.coeff(&Monomial::one())
                }
                None => CycElem::one(),
            };
            m[b][a] = c;
        }
        Self::new(name, m, order)
    }

    /// The order-6 automorphism of Y'.
    pub fn sigma() -> Self {
        Self::from_table("sigma", "0->3,1->4,2->0,3->5,4->2,5->1", 6).expect("valid table")
    }

    /// sigma^2, of order 3.
    pub fn rho() -> Self {
        let mut r = Self::sigma().power(2);
        r.name = "rho".into();
        r
    }

    /// sigma^3, of order 2.
    pub fn tau() -> Self {
        let mut t = Self::sigma().power(3);
        t.name = "tau".into();
        t
    }

    pub fn identity(n: usize) -> Self {
        LinearAut {
            name: "id".into(),
            matrix: linalg::identity(n),
            order: 1,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// self after other: p -> M_self M_other p.
    pub fn compose(&self, other: &LinearAut) -> LinearAut {
        let m = linalg::mat_mul(&self.matrix, &other.matrix);
        let order = projective_order(&m);
        LinearAut {
            name: format!("{}*{}", self.name, other.name),
            matrix: m,
            order,
        }
    }

    pub fn power(&self, k: u32) -> LinearAut {
        let mut m = linalg::identity(self.dim());
        for _ in 0..k {
            m = linalg::mat_mul(&m, &self.matrix);
        }
        let order = projective_order(&m);
        LinearAut {
            name: format!("{}^{k}", self.name),
            matrix: m,
            order,
        }
    }

    pub fn inverse(&self) -> LinearAut {
        let mut inv = self.power(self.order - 1);
        inv.name = format!("{}^-1", self.name);
        inv
    }

    /// f(M v).
    pub fn pullback(&self, f: &MPoly) -> MPoly {
        f.substitute_linear(&self.matrix).expect("invertible matrix")
    }

    pub fn apply_exact(&self, p: &[CycElem]) -> Vec<CycElem> {
        linalg::mat_vec(&self.matrix, p)
    }

    pub fn apply(&self, p: &[Complex64]) -> Vec<Complex64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(p).map(|(m, x)| m.embed() * x).sum())
            .collect()
    }

    fn complex_matrix(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| self.matrix[i][j].embed())
    }
}

fn is_scalar(m: &Matrix) -> bool {
    let c = &m[0][0];
    !c.is_zero()
        && m.iter().enumerate().all(|(i, r)| {
            r.iter()
                .enumerate()
                .all(|(j, x)| if i == j { x == c } else { x.is_zero() })
        })
}

fn projective_order(m: &Matrix) -> u32 {
    let mut pw = m.clone();
    for k in 1..=12 {
        if is_scalar(&pw) {
            return k;
        }
        pw = linalg::mat_mul(&pw, m);
    }
    0
}

/// Monomials and coefficient rows of a list of polynomials over a shared support.
pub fn coefficient_rows(polys: &[MPoly]) -> (Vec<Monomial>, Matrix) {
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().iter().map(|t| t.0)).collect();
    monos.sort_by(|a, b| MonOrder::Grevlex.cmp(a, b));
    monos.dedup();
    let rows = polys.iter().map(|p| monos.iter().map(|m| p.coeff(m)).collect()).collect();
    (monos, rows)
}

/// Coefficients x with target = sum x_i basis_i, when target lies in the span.
pub fn express_in_span(basis: &[MPoly], target: &MPoly) -> Option<Vec<CycElem>> {
    let mut all = basis.to_vec();
    all.push(target.clone());
    let (_, rows) = coefficient_rows(&all);
    linalg::solve_in_span(&rows[..basis.len()], &rows[basis.len()])
}

#[derive(Clone, Debug)]
pub struct Invariance {
    pub invariant: bool,
    /// (A(Mv), B(Mv)) = C (A, B).
    pub c: Option<[[CycElem; 2]; 2]>,
}

pub fn verify_invariance(g: &LinearAut, x: &CIThreefold) -> Invariance {
    let basis = [x.a().clone(), x.b().clone()];
    let rows: Vec<Option<Vec<CycElem>>> = basis.iter().map(|f| express_in_span(&basis, &g.pullback(f))).collect();
    match (&rows[0], &rows[1]) {
        (Some(r0), Some(r1)) => {
            let c = [[r0[0].clone(), r0[1].clone()], [r1[0].clone(), r1[1].clone()]];
            Invariance { invariant: true, c: Some(c) }
        }
        _ => Invariance { invariant: false, c: None },
    }
}

/// Image of one named form, written in the chosen basis of forms.
#[derive(Clone, Debug)]
pub struct FormImage {
    pub name: String,
    pub combination: Vec<(String, CycElem)>,
}

impl FormImage {
    /// (name, c) when the image is c times a single basis form.
    pub fn as_single(&self) -> Option<(&str, &CycElem)> {
        match self.combination.as_slice() {
            [(n, c)] => Some((n.as_str(), c)),
            _ => None,
        }
    }
}

/// Pulls back each form of `names` and expresses it in the span of `basis`
/// (nonzero coefficients only).
pub fn form_action_table(g: &LinearAut, reg: &NamedFormRegistry, names: &[&str], basis: &[&str]) -> Result<Vec<FormImage>> {
    let bpolys: Vec<MPoly> = basis.iter().map(|b| reg.get(b).cloned()).collect::<Result<_>>()?;
    names
        .iter()
        .map(|name| {
            let img = g.pullback(reg.get(name)?);
            let coeffs = express_in_span(&bpolys, &img).ok_or_else(|| Error::NotInSpan(name.to_string()))?;
            let combination = basis
                .iter()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(b, c)| (b.to_string(), c))
                .collect();
            Ok(FormImage {
                name: name.to_string(),
                combination,
            })
        })
        .collect()
}

/// If g* maps the line through `f` onto the line through one of `candidates`,
/// returns that candidate's name and the scalar.
pub fn proportional_image(g: &LinearAut, f: &MPoly, candidates: &[(&str, &MPoly)]) -> Option<(String, CycElem)> {
    let img = g.pullback(f);
    candidates.iter().find_map(|(n, c)| {
        let r = express_in_span(&[(*c).clone()], &img)?;
        Some((n.to_string(), r[0].clone()))
    })
}

/// A projectivized eigenspace of the automorphism matrix and its intersection
/// with the threefold.
#[derive(Clone, Debug)]
pub struct EigenComponent {
    pub eigenvalue: CycElem,
    pub basis: Vec<Vec<CycElem>>,
    /// Restrictions of A and B to the eigenspace (in parameters t_i); empty
    /// when the whole eigenspace lies on the threefold.
    pub restricted: Vec<MPoly>,
}

impl EigenComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contained(&self) -> bool {
        self.restricted.is_empty()
    }

    /// Homogeneous linear forms cutting out the eigenspace in P^5.
    pub fn linear_equations(&self) -> Vec<MPoly> {
        let v = rings::v();
        linalg::kernel(&self.basis, 6)
            .iter()
            .map(|w| MPoly::from_terms(&v, w.iter().enumerate().map(|(i, c)| (Monomial::var(i), c.clone()))))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct FixedLocus {
    pub eigenspaces: Vec<EigenComponent>,
    pub isolated: SolutionSet,
    /// Positive-dimensional pieces: eigenspaces contained in X, and
    /// eigenspace intersections that failed to be finite.
    pub components: Vec<EigenComponent>,
}

impl FixedLocus {
    /// Projective dimensions of the positive-dimensional components.
    pub fn component_dims(&self) -> Vec<usize> {
        self.components
            .iter()
            .filter(|c| c.contained())
            .map(|c| c.dim() - 1)
            .collect()
    }
}

/// Eigenspaces of `m` for eigenvalues among the 12th roots of unity times
/// `m`'s scale; errors if they do not fill the space.
pub fn eigenspaces(m: &Matrix) -> Result<Vec<(CycElem, Vec<Vec<CycElem>>)>> {
    let n = m.len();
    let mut out = Vec::new();
    let mut total = 0;
    for k in 0..12 {
        let z = CycElem::zeta12_pow(k);
        let shifted: Matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { &m[i][j] - &z } else { m[i][j].clone() }).collect())
            .collect();
        let ker = linalg::kernel(&shifted, n);
        if !ker.is_empty() {
            total += ker.len();
            out.push((z, ker));
        }
    }
    if total != n {
        return Err(Error::Config("eigenvalues are not 12th roots of unity".into()));
    }
    Ok(out)
}

/// Fixed points of g on X, eigenspace by eigenspace.
pub fn fixed_locus(g: &LinearAut, x: &CIThreefold, cfg: &Config) -> Result<FixedLocus> {
    if !verify_invariance(g, x).invariant {
        return Err(Error::NotInvariant);
    }
    let eqs = [x.a().clone(), x.b().clone()];
    let num_eqs: Vec<NumPoly> = eqs.iter().map(NumPoly::new).collect();
    let mut eigen = Vec::new();
    let mut components = Vec::new();
    let mut points: Vec<CPoint> = Vec::new();
    for (lambda, basis) in eigenspaces(g.matrix())? {
        let d = basis.len();
        let t = rings::numbered("t", d, MonOrder::Grevlex);
        let images: Vec<MPoly> = (0..6)
            .map(|i| MPoly::from_terms(&t, (0..d).map(|j| (Monomial::var(j), basis[j][i].clone()))))
            .collect();
        let restricted: Vec<MPoly> = eqs.iter().map(|f| f.compose(&images)).filter(|f| !f.is_zero()).collect();
        let comp = EigenComponent {
            eigenvalue: lambda,
            basis: basis.clone(),
            restricted: restricted.clone(),
        };
        eigen.push(comp.clone());
        if d == 1 {
            if restricted.is_empty() {
                let p: Vec<Complex64> = basis[0].iter().map(CycElem::embed).collect();
                let r = numsolve::residual(&num_eqs, &p);
                points.push(CPoint::new(p, r));
            }
            continue;
        }
        if restricted.is_empty() {
            components.push(comp);
            continue;
        }
        let sols = match numsolve::solve_zero_dim(&restricted, cfg) {
            Ok(s) => s,
            Err(Error::NotZeroDimensional { .. }) => {
                components.push(comp);
                continue;
            }
            Err(e) => return Err(e),
        };
        for s in &sols.points {
            let p: Vec<Complex64> = (0..6)
                .map(|i| (0..d).map(|j| basis[j][i].embed() * s.coords[j]).sum())
                .collect();
            let r = numsolve::residual(&num_eqs, &p);
            points.push(CPoint::new(p, r));
        }
    }
    points.sort_by(|a, b| {
        let ka: Vec<f64> = a.coords.iter().flat_map(|c| [c.re, c.im]).collect();
        let kb: Vec<f64> = b.coords.iter().flat_map(|c| [c.re, c.im]).collect();
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    let n = points.len();
    Ok(FixedLocus {
        eigenspaces: eigen,
        isolated: SolutionSet {
            points,
            found_in_chart: vec![0; n],
            chart_dims: vec![],
        },
        components,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Orbits {
    /// Index of the image of each point.
    pub permutation: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
    pub fixed: Vec<usize>,
}

/// Orbits of the permutation g induces on a g-stable point set.
pub fn orbit_partition(g: &LinearAut, s: &SolutionSet, cfg: &Config) -> Result<Orbits> {
    let mut perm = Vec::with_capacity(s.len());
    for p in &s.points {
        let q = g.apply(&p.coords);
        let j = s
            .points
            .iter()
            .position(|r| fubini_study(&r.coords, &q) <= cfg.tol.dedup)
            .ok_or(Error::NotStable)?;
        perm.push(j);
    }
    let mut seen = vec![false; s.len()];
    let mut orbits = Vec::new();
    for i in 0..s.len() {
        if seen[i] {
            continue;
        }
        let mut orbit = vec![i];
        seen[i] = true;
        let mut j = perm[i];
        while j != i {
            if seen[j] {
                return Err(Error::NotStable);
            }
            seen[j] = true;
            orbit.push(j);
            j = perm[j];
        }
        orbits.push(orbit);
    }
    let fixed = (0..s.len()).filter(|&i| perm[i] == i).collect();
    Ok(Orbits {
        permutation: perm,
        orbits,
        fixed,
    })
}

/// The constant by which g* scales the holomorphic 3-form of X.
#[derive(Clone, Debug)]
pub struct TwistFactor {
    /// From the residue description: det(M) / det(C).
    pub by_determinants: CycElem,
    /// From pulling back the chart form and reducing modulo the ideal of X.
    pub by_chart: CycElem,
    pub chart: usize,
    /// The two chart variables (as indices into v) solved for on X.
    pub split: (usize, usize),
}

impl TwistFactor {
    pub fn scalar(&self) -> &CycElem {
        &self.by_chart
    }

    pub fn routes_agree(&self) -> bool {
        self.by_determinants == self.by_chart
    }
}

pub fn canonical_twist(g: &LinearAut, x: &CIThreefold) -> Result<TwistFactor> {
    let inv = verify_invariance(g, x);
    let c = inv.c.ok_or(Error::NotInvariant)?;
    let det_c = &(&c[0][0] * &c[1][1]) - &(&c[0][1] * &c[1][0]);
    let by_determinants = linalg::determinant(g.matrix()).checked_div(&det_c)?;
    let (by_chart, chart, split) = chart_twist(g, x)?;
    Ok(TwistFactor {
        by_determinants,
        by_chart,
        chart,
        split,
    })
}

fn det3(m: &[Vec<MPoly>]) -> MPoly {
    let t = |a: usize, b: usize, c: usize| &(&m[0][a] * &m[1][b]) * &m[2][c];
    let pos = &(&t(0, 1, 2) + &t(1, 2, 0)) + &t(2, 0, 1);
    let neg = &(&t(2, 1, 0) + &t(0, 2, 1)) + &t(1, 0, 2);
    &pos - &neg
}

/// Chart route: in the chart v_c = 1 the 3-form is dy_S / J with J the minor
/// of (A, B) in the two split variables. The pullback ratio is
/// det(Dphi_S T) / (L^2 J^2 J(Mv)), which must reduce to a constant modulo (A, B).
fn chart_twist(g: &LinearAut, x: &CIThreefold) -> Result<(CycElem, usize, (usize, usize))> {
    let v = rings::v();
    let eqs = [x.a().clone(), x.b().clone()];
    for chart in 0..6 {
        let gb = chart_basis(&eqs, chart, None)?;
        let affine: Vec<usize> = (0..6).filter(|&j| j != chart).collect();
        let pos = |var: usize| affine.iter().position(|&j| j == var).expect("affine variable");
        for i1 in 0..5 {
            for i2 in i1 + 1..5 {
                let (d1, d2) = (affine[i1], affine[i2]);
                let jh = &(&eqs[0].partial_derivative(d1) * &eqs[1].partial_derivative(d2))
                    - &(&eqs[0].partial_derivative(d2) * &eqs[1].partial_derivative(d1));
                let j = jh.dehomogenize(chart)?;
                if gb.normal_form(&j)?.is_zero() {
                    continue;
                }
                let s_vars: Vec<usize> = affine.iter().copied().filter(|&k| k != d1 && k != d2).collect();
                let r = gb.ring().clone();
                let nf = |p: &MPoly| gb.normal_form(p);
                let dh = |f: &MPoly, k: usize| f.partial_derivative(k).dehomogenize(chart);
                // affine images P_i / L of the chart coordinates
                let lin: Vec<MPoly> = (0..6)
                    .map(|i| {
                        MPoly::from_terms(&v, g.matrix()[i].iter().enumerate().map(|(k, c)| (Monomial::var(k), c.clone())))
                            .dehomogenize(chart)
                    })
                    .collect::<Result<_>>()?;
                let l = &lin[chart];
                let dphi: Vec<Vec<MPoly>> = s_vars
                    .iter()
                    .map(|&i| {
                        (0..5)
                            .map(|k| &(&lin[i].partial_derivative(k) * l) - &(&lin[i] * &l.partial_derivative(k)))
                            .collect()
                    })
                    .collect();
                let a_d = [[dh(&eqs[0], d1)?, dh(&eqs[0], d2)?], [dh(&eqs[1], d1)?, dh(&eqs[1], d2)?]];
                let a_s: Vec<[MPoly; 2]> = s_vars
                    .iter()
                    .map(|&k| Ok([dh(&eqs[0], k)?, dh(&eqs[1], k)?]))
                    .collect::<Result<_>>()?;
                // T: dy = (T / J) dy_S along X
                let mut t = vec![vec![MPoly::zero(&r); 3]; 5];
                for (col, &k) in s_vars.iter().enumerate() {
                    t[pos(k)][col] = j.clone();
                    // -adj(A_d) * A_S column
                    let (a0, a1) = (&a_s[col][0], &a_s[col][1]);
                    t[pos(d1)][col] = -&(&(&a_d[1][1] * a0) - &(&a_d[0][1] * a1));
                    t[pos(d2)][col] = -&(&(&a_d[0][0] * a1) - &(&a_d[1][0] * a0));
                }
                let num: Vec<Vec<MPoly>> = (0..3)
                    .map(|row| {
                        (0..3)
                            .map(|col| {
                                let s = (0..5).fold(MPoly::zero(&r), |acc, k| &acc + &(&dphi[row][k] * &t[k][col]));
                                nf(&s)
                            })
                            .collect::<Result<_>>()
                    })
                    .collect::<Result<_>>()?;
                let n_red = nf(&det3(&num))?;
                let jm = g.pullback(&jh).dehomogenize(chart)?;
                let den = nf(&(&(&l.pow(2) * &nf(&j.pow(2))?) * &nf(&jm)?))?;
                if den.is_zero() {
                    continue;
                }
                let kappa = n_red.leading_coeff().cloned().unwrap_or_else(CycElem::zero).checked_div(den.leading_coeff().unwrap())?;
                if (&n_red - &den.scale(&kappa)).is_zero() {
                    return Ok((kappa, chart, (d1, d2)));
                }
                return Err(Error::NonConstantRatio);
            }
        }
    }
    Err(Error::NonConstantRatio)
}

/// Eigenvalues of the differential of g on T_p X at a fixed point, snapped
/// to roots of unity of order dividing the automorphism order.
#[derive(Clone, Debug)]
pub struct TangentAction {
    pub eigenvalues: Vec<Complex64>,
    /// Exponents k with eigenvalue exp(2 pi i k / n), n the automorphism order.
    pub exponents: Vec<u32>,
    pub snapped: Vec<CycElem>,
    pub max_snap_error: f64,
}

impl TangentAction {
    pub fn determinant(&self) -> CycElem {
        self.snapped.iter().fold(CycElem::one(), |acc, x| &acc * x)
    }
}

pub fn local_tangent_action(g: &LinearAut, x: &CIThreefold, p: &CPoint, cfg: &Config) -> Result<TangentAction> {
    let n = g.order();
    let pt = numsolve::normalize(&p.coords);
    let gp = g.apply(&pt);
    if fubini_study(&gp, &pt) > cfg.tol.dedup {
        return Err(Error::Numeric("point is not fixed".into()));
    }
    let k = pt.iter().enumerate().max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap()).unwrap().0;
    let mu = gp[k] / pt[k];
    let eqs = [NumPoly::new(x.a()), NumPoly::new(x.b())];
    let jac = DMatrix::<Complex64>::from_fn(2, 6, |i, j| eqs[i].derivative(j).eval(&pt));
    let svd = jac.svd(false, true);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    if sv[1] <= cfg.tol.jacobian_rank * sv[0].max(1.0) {
        return Err(Error::SingularPoint);
    }
    // affine cone tangent space: orthonormal kernel of the 2 x 6 Jacobian
    let jac_full = DMatrix::<Complex64>::from_fn(6, 6, |i, j| if i < 2 { eqs[i].derivative(j).eval(&pt) } else { Complex64::zero() });
    let full = jac_full.svd(false, true);
    let vt = full.v_t.expect("v requested");
    let mut order: Vec<usize> = (0..6).collect();
    order.sort_by(|&a, &b| full.singular_values[b].partial_cmp(&full.singular_values[a]).unwrap());
    let w = DMatrix::<Complex64>::from_fn(6, 4, |i, j| vt[(order[j + 2], i)].conj());
    let restricted = w.adjoint() * g.complex_matrix() * &w;
    let (_, t) = Schur::new(restricted).unpack();
    let mut eig: Vec<Complex64> = (0..4).map(|i| t[(i, i)] / mu).collect();
    // drop the radial direction
    let drop = eig
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - 1.0).norm().partial_cmp(&(b.1 - 1.0).norm()).unwrap())
        .unwrap()
        .0;
    eig.remove(drop);
    snap_all(&eig, n, cfg.tol.snap)
}

fn snap_all(eig: &[Complex64], n: u32, tol: f64) -> Result<TangentAction> {
    let mut exps = Vec::new();
    let mut snapped = Vec::new();
    let mut worst: f64 = 0.0;
    for e in eig {
        let (k, d) = (0..n)
            .map(|k| {
                let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
                (k, (e - z).norm())
            })
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if d > tol {
            return Err(Error::SnapFailure(format!("{e}")));
        }
        worst = worst.max(d);
        exps.push(k);
        snapped.push(CycElem::root_of_unity(n, k as i64));
    }
    let mut idx: Vec<usize> = (0..eig.len()).collect();
    idx.sort_by_key(|&i| exps[i]);
    Ok(TangentAction {
        eigenvalues: idx.iter().map(|&i| eig[i]).collect(),
        exponents: idx.iter().map(|&i| exps[i]).collect(),
        snapped: idx.iter().map(|&i| snapped[i].clone()).collect(),
        max_snap_error: worst,
    })
}

/// Cyclic quotient singularity 1/n(a_1, ..., a_k).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSingType {
    pub order: u32,
    pub weights: Vec<u32>,
}

impl QuotientSingType {
    pub fn new(order: u32, mut weights: Vec<u32>) -> Self {
        for w in weights.iter_mut() {
            *w %= order;
        }
        weights.sort_unstable();
        QuotientSingType { order, weights }
    }

    /// Reid-Tai age (sum of weights) / n.
    pub fn age(&self) -> Rational {
        let s: u32 = self.weights.iter().sum();
        Rational::new(s.into(), self.order.into())
    }

    pub fn inverse(&self) -> QuotientSingType {
        QuotientSingType::new(self.order, self.weights.iter().map(|w| (self.order - w) % self.order).collect())
    }

    pub fn nonzero_weights(&self) -> usize {
        self.weights.iter().filter(|&&w| w != 0).count()
    }

    pub fn is_isolated(&self) -> bool {
        self.nonzero_weights() == self.weights.len()
    }
}

impl fmt::Display for QuotientSingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(u32::to_string).collect();
        write!(f, "1/{}({})", self.order, w.join(","))
    }
}

/// Exponent k with x = zeta_n^k, if x is an n-th root of unity.
pub fn root_exponent(x: &CycElem, n: u32) -> Option<u32> {
    (0..n).find(|&k| CycElem::root_of_unity(n, k as i64) == *x)
}

/// Combines three tangent eigenvalues on the threefold with the curve's
/// tangent eigenvalue into a 4-dimensional cyclic quotient type.
pub fn quotient_sing_type(threefold: &[CycElem], curve_tangent: &CycElem, order: u32) -> Result<QuotientSingType> {
    let mut weights = Vec::with_capacity(threefold.len() + 1);
    for e in threefold.iter().chain(std::iter::once(curve_tangent)) {
        weights.push(root_exponent(e, order).ok_or_else(|| Error::IncompatibleOrders(format!("{e} is not a root of unity of order {order}")))?);
    }
    Ok(QuotientSingType::new(order, weights))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveKind {
    /// y^2 = x(x-1)(x-lambda) with (x, y) -> (x, -y).
    Order2,
    /// y^2 = x^3 - 1 with (x, y) -> (zeta_3 x, y).
    Order3,
}

/// Weierstrass model of an elliptic curve with a diagonal automorphism.
#[derive(Clone, Debug)]
pub struct EllipticCurveModel {
    pub kind: CurveKind,
    pub ring: RingRef,
    pub equation: MPoly,
    /// (x, y) -> (ax, by).
    pub action: (CycElem, CycElem),
}

impl EllipticCurveModel {
    pub fn order2(lambda: i64) -> Self {
        let ring = Ring::new("E", &["x", "y"], MonOrder::Grevlex);
        let equation = parse_poly(&ring, &format!("y^2 - x*(x - 1)*(x - ({lambda}))")).expect("curve");
        EllipticCurveModel {
            kind: CurveKind::Order2,
            ring,
            equation,
            action: (CycElem::one(), CycElem::from_int(-1)),
        }
    }

    pub fn order3() -> Self {
        let ring = Ring::new("E", &["x", "y"], MonOrder::Grevlex);
        let equation = parse_poly(&ring, "y^2 - x^3 + 1").expect("curve");
        EllipticCurveModel {
            kind: CurveKind::Order3,
            ring,
            equation,
            action: (CycElem::zeta3(), CycElem::one()),
        }
    }

    pub fn order(&self) -> u32 {
        match self.kind {
            CurveKind::Order2 => 2,
            CurveKind::Order3 => 3,
        }
    }

    fn pullback(&self, f: &MPoly) -> MPoly {
        let (a, b) = &self.action;
        let x = MPoly::var(&self.ring, 0).scale(a);
        let y = MPoly::var(&self.ring, 1).scale(b);
        f.compose(&[x, y])
    }

    /// c with F(ax, by) = c F, if the equation is preserved up to scale.
    pub fn equation_scale(&self) -> Option<CycElem> {
        let img = self.pullback(&self.equation);
        express_in_span(&[self.equation.clone()], &img).map(|r| r[0].clone())
    }
}

#[derive(Clone, Debug)]
pub struct CurveFixedData {
    /// Affine fixed points plus the point at infinity.
    pub count: usize,
    pub affine_points: Vec<[Complex64; 2]>,
    /// Eigenvalue of the differential at the fixed points.
    pub tangent: CycElem,
    /// g* (dx / y) = form * (dx / y).
    pub form: CycElem,
}

pub fn curve_fixed_data(curve: &EllipticCurveModel) -> Result<CurveFixedData> {
    let (a, b) = curve.action.clone();
    let c = curve.equation_scale().ok_or(Error::NotInvariant)?;
    let r = &curve.ring;
    let one = CycElem::one();
    let mut gens = vec![curve.equation.clone()];
    gens.push(MPoly::var(r, 0).scale(&(&a - &one)));
    gens.push(MPoly::var(r, 1).scale(&(&b - &one)));
    gens.retain(|g| !g.is_zero());
    let gb: GroebnerBasis = buchberger(&gens, MonOrder::Grevlex)?;
    let pts = numsolve::affine_solutions(&gb, 7)?;
    let fx = NumPoly::new(&curve.equation.partial_derivative(0));
    let fy = NumPoly::new(&curve.equation.partial_derivative(1));
    // tangent direction (-F_y, F_x): eigenvalue a when it has an x-component
    let mut tangent: Option<CycElem> = None;
    for p in &pts {
        let t = if fy.eval(p).norm() > fx.eval(p).norm() * 1e-12 && fy.eval(p).norm() > 1e-12 { a.clone() } else { b.clone() };
        match &tangent {
            Some(prev) if *prev != t => return Err(Error::Numeric("fixed points disagree on the tangent action".into())),
            _ => tangent = Some(t),
        }
    }
    // the point at infinity is the flex O, always fixed by a diagonal map;
    // there the local parameter x/y is scaled by a/b
    let tangent = tangent.unwrap_or(a.checked_div(&b)?);
    // d(ax)/F_y(ax, by) with b F_y(ax, by) = c F_y(x, y)
    let form = (&a * &b).checked_div(&c)?;
    Ok(CurveFixedData {
        count: pts.len() + 1,
        affine_points: pts.iter().map(|p| [p[0], p[1]]).collect(),
        tangent,
        form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_and_powers() {
        let s = LinearAut::sigma();
        assert_eq!(s.order(), 6);
        assert_eq!(LinearAut::rho().order(), 3);
        assert_eq!(LinearAut::tau().order(), 2);
        let p: Vec<CycElem> = (0..6).map(CycElem::from_int).collect();
        // coordinate 0 moves to position 3
        assert_eq!(s.apply_exact(&p)[3], CycElem::from_int(0));
        assert_eq!(s.apply_exact(&p)[0], CycElem::from_int(2));
        assert!(LinearAut::from_table("bad", "0->1,1->1", 2).is_err());
        assert!(LinearAut::from_table("x", "0->1,1->0", 3).is_err());
    }

    #[test]
    fn scaled_table_entry() {
        let g = LinearAut::from_table("g", "0->0,1->1*(-1)", 2).unwrap();
        assert_eq!(g.matrix()[1][1], CycElem::from_int(-1));
    }

    #[test]
    fn age_and_inverse() {
        let t = QuotientSingType::new(3, vec![1, 1, 2, 2]);
        assert_eq!(t.to_string(), "1/3(1,1,2,2)");
        assert_eq!(t.age(), Rational::from_integer(2.into()));
        assert_eq!(t.inverse(), t);
    }

    #[test]
    fn curve_data() {
        let e2 = curve_fixed_data(&EllipticCurveModel::order2(2)).unwrap();
        assert_eq!(e2.count, 4);
        assert_eq!(e2.tangent, CycElem::from_int(-1));
        assert_eq!(e2.form, CycElem::from_int(-1));
        let e3 = curve_fixed_data(&EllipticCurveModel::order3()).unwrap();
        assert_eq!(e3.count, 3);
        assert_eq!(e3.form, CycElem::zeta3());
    }
}
