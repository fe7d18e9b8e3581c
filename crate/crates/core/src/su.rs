//! Matrix realization of `su(n+1)` and the `SU(n+1)/T` specialization of `U`.
//!
//! Roots are `ε_i − ε_j`; the simple roots are `α_i = ε_i − ε_{i+1}`, so a
//! positive root `ε_i − ε_j` (`i < j`) equals `α_i + α_{i+1} + … + α_{j−1}`.
//! The real basis of `m^{ε_i−ε_j}` is `e_ij − e_ji`, `i(e_ij + e_ji)`.
//!
//! The abstract Chevalley pipeline and the matrices are related by a diagonal
//! change of basis on `m`, computed here from Killing norms (simple roots,
//! positive sign on both generators) and propagated to higher roots through
//! the bracket tables.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::chevalley::MVector;
use crate::connection::u_bilinear;
use crate::error::{Error, Result};
use crate::flag::FlagManifold;
use crate::metric::{build_metric, MetricSpec};
use crate::oracle::{u_oracle, CheckReport};
use crate::rootsys::{Family, Root, RootId};

pub type CMatrix = DMatrix<Complex64>;

/// `ε_i − ε_j` with 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsRoot {
    pub i: usize,
    pub j: usize,
}

impl EpsRoot {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > n + 1 || j > n + 1 {
            return Err(Error::Domain(format!("ε_{i} − ε_{j} is not a root of A_{n}")));
        }
        Ok(EpsRoot { i, j })
    }

    pub fn is_positive(self) -> bool {
        self.i < self.j
    }

    pub fn neg(self) -> Self {
        EpsRoot { i: self.j, j: self.i }
    }
}

impl std::fmt::Display for EpsRoot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ε{}−ε{}", self.i, self.j)
    }
}

pub fn eps_to_simple(n: usize, r: EpsRoot) -> Result<Root> {
    EpsRoot::new(n, r.i, r.j)?;
    let (lo, hi, sign) = if r.i < r.j { (r.i, r.j, 1) } else { (r.j, r.i, -1) };
    let mut c = vec![0; n];
    for k in lo..hi {
        c[k - 1] = sign;
    }
    Root::new(c)
}

pub fn simple_to_eps(n: usize, root: &Root) -> Result<EpsRoot> {
    let c = root.coords();
    if c.len() != n {
        return Err(Error::Dimension { expected: n, found: c.len() });
    }
    let support: Vec<usize> = (0..n).filter(|&k| c[k] != 0).collect();
    let (first, last) = (support[0], *support.last().unwrap());
    let sign = c[first];
    let contiguous = support.len() == last - first + 1;
    if !contiguous || sign.abs() != 1 || support.iter().any(|&k| c[k] != sign) {
        return Err(Error::NotARoot(root.to_string()));
    }
    let (i, j) = (first + 1, last + 2);
    Ok(if sign > 0 { EpsRoot { i, j } } else { EpsRoot { i: j, j: i } })
}

/// Anti-Hermitian traceless `(n+1)×(n+1)` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SuElement(CMatrix);

impl SuElement {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Representation("su element must be square".into()));
        }
        let herm = (&m + m.adjoint()).iter().fold(0.0f64, |a, z| a.max(z.norm()));
        if herm > 1e-12 || m.trace().norm() > 1e-12 {
            return Err(Error::Representation("matrix is not anti-Hermitian and traceless".into()));
        }
        Ok(SuElement(m))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

fn unit(size: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(size, size);
    m[(i, j)] = Complex64::new(1.0, 0.0);
    m
}

/// `(e_ij − e_ji, i(e_ij + e_ji))` for positive `ε_i − ε_j` (1-based).
fn generators(size: usize, r: EpsRoot) -> [CMatrix; 2] {
    let (i, j) = (r.i - 1, r.j - 1);
    let u = unit(size, i, j) - unit(size, j, i);
    let v = (unit(size, i, j) + unit(size, j, i)) * Complex64::new(0.0, 1.0);
    [u, v]
}

/// Positive roots of `A_n` in ascending lexicographic order, as `ε` pairs.
fn ordered_eps_roots(fm: &FlagManifold, n: usize) -> Vec<EpsRoot> {
    fm.roots()
        .positive_roots()
        .iter()
        .map(|r| simple_to_eps(n, r).expect("A_n roots are contiguous blocks"))
        .collect()
}

/// Real m-basis of `su(n+1)`, ordered by ascending positive root.
pub fn su_m_basis(n: usize) -> Result<Vec<SuElement>> {
    let fm = FlagManifold::new(Family::A, n)?;
    Ok(ordered_eps_roots(&fm, n)
        .into_iter()
        .flat_map(|r| generators(n + 1, r))
        .map(SuElement)
        .collect())
}

/// `2(n+1)·tr(XY)`, the Killing form of `sl(n+1)`.
pub fn matrix_killing(x: &CMatrix, y: &CMatrix) -> Complex64 {
    let size = x.nrows() as f64;
    (x * y).trace() * (2.0 * size)
}

/// `tr(ad X ∘ ad Y)` computed on `gl(n+1)`; the centre contributes nothing,
/// so this equals the `sl(n+1)` trace for traceless arguments.
pub fn matrix_ad_trace(x: &CMatrix, y: &CMatrix) -> Complex64 {
    let size = x.nrows();
    let mut tr = Complex64::new(0.0, 0.0);
    for a in 0..size {
        for b in 0..size {
            let e = unit(size, a, b);
            tr += commutator(x, &commutator(y, &e))[(a, b)];
        }
    }
    tr
}

/// Coordinates of the off-diagonal part of an anti-Hermitian matrix over the
/// ordered m-basis.
fn matrix_m_coords(eps: &[EpsRoot], z: &CMatrix) -> MVector {
    let mut out = Vec::with_capacity(2 * eps.len());
    for r in eps {
        let c = z[(r.i - 1, r.j - 1)];
        out.push(c.re);
        out.push(c.im);
    }
    MVector(out)
}

/// Metric coefficients keyed by positive `ε` roots.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsCoefficients {
    n: usize,
    c: BTreeMap<EpsRoot, f64>,
}

impl EpsCoefficients {
    pub fn new(n: usize, entries: impl IntoIterator<Item = (EpsRoot, f64)>) -> Result<Self> {
        let mut c = BTreeMap::new();
        for (r, v) in entries {
            EpsRoot::new(n, r.i, r.j)?;
            if !r.is_positive() {
                return Err(Error::Config(format!("coefficient key {r} is not positive")));
            }
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("coefficient for {r} must be positive, got {v}")));
            }
            if c.insert(r, v).is_some() {
                return Err(Error::Config(format!("duplicate coefficient for {r}")));
            }
        }
        if c.len() != n * (n + 1) / 2 {
            return Err(Error::Config(format!(
                "expected {} coefficients for A_{n}, got {}",
                n * (n + 1) / 2,
                c.len()
            )));
        }
        Ok(EpsCoefficients { n, c })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.c[&EpsRoot { i, j }]
    }

    pub fn to_metric(&self, fm: &FlagManifold) -> Result<MetricSpec> {
        let pairs = self
            .c
            .iter()
            .map(|(&r, &v)| Ok((eps_to_simple(self.n, r)?, v)))
            .collect::<Result<Vec<_>>>()?;
        MetricSpec::from_pairs(fm.roots(), pairs)
    }

    pub fn from_metric(fm: &FlagManifold, spec: &MetricSpec) -> Result<Self> {
        let n = fm.roots().rank();
        let entries = spec
            .pairs(fm.roots())
            .into_iter()
            .map(|(r, v)| Ok((simple_to_eps(n, &r)?, v)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, entries)
    }
}

/// `su(n+1)` together with its alignment to the abstract `A_n` pipeline.
#[derive(Debug, Clone)]
pub struct SuRealization {
    n: usize,
    fm: FlagManifold,
    eps: Vec<EpsRoot>,
    basis: Vec<CMatrix>,
    /// `φ(e_k) = scale[k] · M_k` for abstract `e_k` and matrix `M_k`.
    scale: Vec<f64>,
}

impl SuRealization {
    pub fn new(n: usize) -> Result<Self> {
        let fm = FlagManifold::new(Family::A, n)?;
        let eps = ordered_eps_roots(&fm, n);
        let basis: Vec<CMatrix> = eps.iter().flat_map(|&r| generators(n + 1, r)).collect();
        let scale = align(&fm, &basis)?;
        Ok(SuRealization {
            n,
            fm,
            eps,
            basis,
            scale,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flag(&self) -> &FlagManifold {
        &self.fm
    }

    pub fn eps_roots(&self) -> &[EpsRoot] {
        &self.eps
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    pub fn scale(&self) -> &[f64] {
        &self.scale
    }

    pub fn to_matrix_coords(&self, x: &MVector) -> MVector {
        MVector(x.coords().iter().zip(&self.scale).map(|(a, s)| a * s).collect())
    }

    pub fn from_matrix_coords(&self, x: &MVector) -> MVector {
        MVector(x.coords().iter().zip(&self.scale).map(|(a, s)| a / s).collect())
    }

    pub fn matrix(&self, x: &MVector) -> CMatrix {
        let size = self.n + 1;
        x.coords()
            .iter()
            .zip(&self.basis)
            .fold(CMatrix::zeros(size, size), |acc, (&c, m)| acc + m * Complex64::new(c, 0.0))
    }

    pub fn m_coords(&self, z: &CMatrix) -> MVector {
        matrix_m_coords(&self.eps, z)
    }

    /// Component of `x` in `m^{ε_i−ε_j}` as a matrix.
    fn block(&self, x: &MVector, i: usize, j: usize) -> CMatrix {
        let k = self
            .eps
            .iter()
            .position(|r| r.i == i && r.j == j)
            .expect("positive ε root");
        let [u, v] = &generators(self.n + 1, self.eps[k]);
        u * Complex64::new(x.0[2 * k], 0.0) + v * Complex64::new(x.0[2 * k + 1], 0.0)
    }

    /// Largest deviation of `scale_k [e_a,e_b]^k − scale_a scale_b [M_a,M_b]^k`.
    pub fn check_brackets(&self, threshold: f64) -> CheckReport {
        let ms = self.fm.m_structure();
        let d = self.basis.len();
        let mut worst = (0.0f64, None);
        for a in 0..d {
            for b in 0..d {
                let mat = self.m_coords(&commutator(&self.basis[a], &self.basis[b]));
                let abs = ms.basis_bracket(a, b);
                for k in 0..d {
                    let r = (self.scale[k] * abs[k] - self.scale[a] * self.scale[b] * mat.0[k]).abs();
                    if r > worst.0 || r.is_nan() {
                        worst = (if r.is_nan() { f64::INFINITY } else { r }, Some(vec![a, b, k]));
                    }
                }
            }
        }
        CheckReport::new("su-brackets", worst.0, threshold, worst.1)
    }

    /// Compares the ad-trace Killing form (abstract), `2(n+1)tr(XY)` and the
    /// matrix ad-trace on every pair of m-basis vectors.
    pub fn check_killing(&self, threshold: f64) -> CheckReport {
        let (fm, d) = (&self.fm, self.basis.len());
        let mut worst = (0.0f64, None);
        for a in 0..d {
            for b in 0..d {
                let abs = fm
                    .killing()
                    .form(&fm.basis().element::<i64>(a), &fm.basis().element::<i64>(b));
                let (ma, mb) = (&self.basis[a] * Complex64::new(self.scale[a], 0.0), &self.basis[b] * Complex64::new(self.scale[b], 0.0));
                let tr = matrix_killing(&ma, &mb);
                let ad = matrix_ad_trace(&ma, &mb);
                let r = (Complex64::new(abs.re as f64, abs.im as f64) - tr).norm().max((tr - ad).norm());
                if r > worst.0 {
                    worst = (r, Some(vec![a, b]));
                }
            }
        }
        CheckReport::new("su-killing", worst.0, threshold, worst.1)
    }
}

/// Diagonal change of basis between abstract and matrix m.
fn align(fm: &FlagManifold, basis: &[CMatrix]) -> Result<Vec<f64>> {
    let rs = fm.roots();
    let d = basis.len();
    let mut scale: Vec<Option<f64>> = vec![None; d];
    for s in rs.simple_roots() {
        for k in [2 * s.index(), 2 * s.index() + 1] {
            let e = fm.basis().element::<i64>(k);
            let b_abs = fm.killing().form(&e, &e).re as f64;
            let b_mat = matrix_killing(&basis[k], &basis[k]).re;
            scale[k] = Some((b_abs / b_mat).sqrt());
        }
    }
    let eps: Vec<EpsRoot> = ordered_eps_roots(fm, rs.rank());
    let ms = fm.m_structure();
    let mut order: Vec<RootId> = rs.positive_ids().collect();
    order.sort_by_key(|&a| rs.root(a).height());
    for alpha in order {
        for k in [2 * alpha.index(), 2 * alpha.index() + 1] {
            if scale[k].is_some() {
                continue;
            }
            let mut found = None;
            'search: for a in 0..d {
                for b in 0..d {
                    let (Some(sa), Some(sb)) = (scale[a], scale[b]) else {
                        continue;
                    };
                    let c_abs = ms.basis_bracket(a, b)[k];
                    let c_mat = matrix_m_coords(&eps, &commutator(&basis[a], &basis[b])).0[k];
                    if c_abs != 0.0 && c_mat != 0.0 {
                        found = Some(sa * sb * c_mat / c_abs);
                        break 'search;
                    }
                }
            }
            scale[k] = Some(found.ok_or_else(|| Error::Representation(format!("cannot align basis vector {k}")))?);
        }
    }
    Ok(scale.into_iter().map(|s| s.expect("every basis vector aligned")).collect())
}

/// `U(X, Y)` on `SU(n+1)/T` in matrix coordinates, by the three `i<j<k` sums.
pub fn u_sun(real: &SuRealization, c: &EpsCoefficients, x: &MVector, y: &MVector) -> Result<MVector> {
    let n = real.n;
    if n < 2 {
        return Err(Error::Domain(format!("the SU(n+1) formula needs n >= 2, got {n}")));
    }
    if c.n != n {
        return Err(Error::Dimension { expected: n, found: c.n });
    }
    let dim = real.basis.len();
    for v in [x, y] {
        if v.dim() != dim {
            return Err(Error::Dimension { expected: dim, found: v.dim() });
        }
    }
    let size = n + 1;
    let mut acc = CMatrix::zeros(size, size);
    let sym = |xa: &CMatrix, yb: &CMatrix, ya: &CMatrix, xb: &CMatrix| commutator(xa, yb) + commutator(ya, xb);
    for i in 1..=size {
        for j in i + 1..=size {
            for k in j + 1..=size {
                let (xij, yij) = (real.block(x, i, j), real.block(y, i, j));
                let (xjk, yjk) = (real.block(x, j, k), real.block(y, j, k));
                let (xik, yik) = (real.block(x, i, k), real.block(y, i, k));
                let c1 = (c.get(j, k) - c.get(i, j)) / (2.0 * c.get(i, k));
                let c2 = (c.get(i, j) - c.get(i, k)) / (2.0 * c.get(j, k));
                let c3 = (c.get(j, k) - c.get(i, k)) / (2.0 * c.get(i, j));
                acc += sym(&xij, &yjk, &yij, &xjk) * Complex64::new(c1, 0.0);
                acc += sym(&xik, &yij, &yik, &xij) * Complex64::new(c2, 0.0);
                acc += sym(&xik, &yjk, &yik, &xjk) * Complex64::new(c3, 0.0);
            }
        }
    }
    Ok(real.m_coords(&acc))
}

/// The three scalar coefficients of the `SU(3)/T` formula, for
/// `c1 = c_{ε1−ε2}`, `c2 = c_{ε1−ε3}`, `c3 = c_{ε2−ε3}`.
pub fn su3_coefficients(c1: f64, c2: f64, c3: f64) -> Result<[f64; 3]> {
    if ![c1, c2, c3].iter().all(|c| c.is_finite() && *c > 0.0) {
        return Err(Error::Config(format!("SU(3) coefficients must be positive, got ({c1}, {c2}, {c3})")));
    }
    Ok([(c3 - c2) / (2.0 * c1), (c3 - c1) / (2.0 * c2), (c2 - c1) / (2.0 * c3)])
}

/// `U(X, Y)` on `SU(3)/T` in matrix coordinates (`real` must have `n = 2`).
pub fn u_su3(real: &SuRealization, c1: f64, c2: f64, c3: f64, x: &MVector, y: &MVector) -> Result<MVector> {
    if real.n != 2 {
        return Err(Error::Domain(format!("u_su3 needs the su(3) realization, got n = {}", real.n)));
    }
    let [k1, k2, k3] = su3_coefficients(c1, c2, c3)?;
    for v in [x, y] {
        if v.dim() != 6 {
            return Err(Error::Dimension { expected: 6, found: v.dim() });
        }
    }
    // m_1 = m^{ε1−ε2}, m_2 = m^{ε1−ε3}, m_3 = m^{ε2−ε3}
    let (x1, y1) = (real.block(x, 1, 2), real.block(y, 1, 2));
    let (x2, y2) = (real.block(x, 1, 3), real.block(y, 1, 3));
    let (x3, y3) = (real.block(x, 2, 3), real.block(y, 2, 3));
    let acc = (commutator(&x2, &y3) + commutator(&y2, &x3)) * Complex64::new(k1, 0.0)
        + (commutator(&x1, &y3) + commutator(&y1, &x3)) * Complex64::new(k2, 0.0)
        + (commutator(&x1, &y2) + commutator(&y1, &x2)) * Complex64::new(k3, 0.0);
    Ok(real.m_coords(&acc))
}

/// Worst disagreement of the `SU(n+1)` formula with the closed form and with
/// the oracle over all basis pairs, both transported to matrix coordinates.
pub fn check_su_specialization(real: &SuRealization, spec: &MetricSpec, threshold: f64) -> Result<CheckReport> {
    let fm = &real.fm;
    let coeffs = EpsCoefficients::from_metric(fm, spec)?;
    let gram = build_metric(fm.roots(), fm.killing(), fm.basis(), spec)?;
    let d = fm.dim();
    let mut worst = (0.0f64, None);
    for i in 0..d {
        for j in 0..d {
            let (xa, ya) = (MVector::unit(d, i), MVector::unit(d, j));
            let (xm, ym) = (real.to_matrix_coords(&xa), real.to_matrix_coords(&ya));
            let sun = u_sun(real, &coeffs, &xm, &ym)?;
            let closed = real.to_matrix_coords(&u_bilinear(fm, spec, &xa, &ya)?);
            let oracle = real.to_matrix_coords(&u_oracle(fm, &gram, &xa, &ya)?);
            let r = sun.max_abs_diff(&closed).max(sun.max_abs_diff(&oracle));
            if r > worst.0 || r.is_nan() {
                worst = (if r.is_nan() { f64::INFINITY } else { r }, Some(vec![i, j]));
            }
        }
    }
    Ok(CheckReport::new("su-crosscheck", worst.0, threshold, worst.1))
}
