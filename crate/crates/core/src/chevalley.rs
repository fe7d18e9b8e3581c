//! Chevalley basis of the complexified Lie algebra and the compact real form.
//!
//! The basis is `H_1, ..., H_l` (simple coroots) followed by `E_γ` for every
//! root `γ`, with
//!
//! ```text
//! [H_i, E_γ]   = <γ, α_i^∨> E_γ
//! [E_γ, E_{-γ}] = H_γ  (the coroot)
//! [E_γ, E_δ]   = N_{γ,δ} E_{γ+δ}   when γ + δ is a root
//! ```
//!
//! Signs of `N` follow the extraspecial-pair construction: for each positive
//! non-simple root `ξ`, the pair `(α, β)` with `α < β`, `α + β = ξ` and `α`
//! lexicographically minimal gets `N_{α,β} = +(p + 1)`; every other constant
//! follows from the Jacobi identity. The constants satisfy
//! `N_{-α,-β} = -N_{α,β}`, so `E_α - E_{-α}` and `i(E_α + E_{-α})` span the
//! compact real form's complement `m` of the torus.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Num, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{RootId, RootSystem};

/// Coefficient ring for [`LieElement`]: exact integers or doubles.
pub trait Scalar: Num + Copy + Neg<Output = Self> + PartialEq + Debug + 'static {
    fn from_i64(v: i64) -> Self;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

#[derive(Debug, Clone)]
pub struct StructureConstants {
    rank: usize,
    num_roots: usize,
    /// `N_{γ,δ}` in row-major order, zero where `γ + δ` is not a root.
    n: Vec<i64>,
    sums: Vec<Option<RootId>>,
    neg: Vec<RootId>,
    /// `eval[γ][i] = γ(H_i)`
    eval: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
}

impl StructureConstants {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.num_roots
    }

    /// `N_{γ,δ}`, defined exactly when `γ + δ` is a root.
    pub fn n(&self, a: RootId, b: RootId) -> Option<i64> {
        self.sums[a.0 * self.num_roots + b.0].map(|_| self.n[a.0 * self.num_roots + b.0])
    }

    /// `γ(H_i)`.
    pub fn cartan_action(&self, i: usize, gamma: RootId) -> i64 {
        self.eval[gamma.0][i]
    }

    pub fn coroot(&self, gamma: RootId) -> &[i64] {
        &self.coroots[gamma.0]
    }

    fn sum(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.sums[a.0 * self.num_roots + b.0]
    }

    /// Dimension of the full algebra, `rank + |R|`.
    pub fn dim(&self) -> usize {
        self.rank + self.num_roots
    }
}

/// Largest `p` with `β - pα` a root.
fn string_below(rs: &RootSystem, alpha: RootId, beta: RootId) -> i64 {
    let mut p = 0;
    let mut cur = beta;
    while let Some(next) = rs.diff(cur, alpha) {
        p += 1;
        cur = next;
    }
    p
}

struct PositiveTable<'a> {
    rs: &'a RootSystem,
    n: Vec<Option<i64>>,
}

impl PositiveTable<'_> {
    fn get(&self, a: RootId, b: RootId) -> i64 {
        let p = self.rs.num_positive();
        self.n[a.0 * p + b.0].expect("positive pair consulted before it was fixed")
    }

    fn set(&mut self, a: RootId, b: RootId, v: i64) {
        let p = self.rs.num_positive();
        self.n[a.0 * p + b.0] = Some(v);
        self.n[b.0 * p + a.0] = Some(-v);
    }

    fn same_sign(&self, a: RootId, b: RootId) -> i64 {
        let rs = self.rs;
        if rs.is_positive(a) {
            self.get(a, b)
        } else {
            -self.get(rs.neg(a), rs.neg(b))
        }
    }

    /// `N_{a,b}` for arbitrary roots with `a + b` a root, reduced to positive
    /// pairs through `N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)` for
    /// `a + b + c = 0`.
    fn any(&self, a: RootId, b: RootId) -> i64 {
        let rs = self.rs;
        let s = rs.sum(a, b).expect("N requested for a non-root sum");
        if rs.is_positive(a) == rs.is_positive(b) {
            return self.same_sign(a, b);
        }
        let c = rs.neg(s);
        let (num, den) = if rs.is_positive(c) == rs.is_positive(b) {
            (rs.norm2(c) * self.same_sign(b, c), rs.norm2(a))
        } else {
            (rs.norm2(c) * self.same_sign(c, a), rs.norm2(b))
        };
        assert_eq!(num % den, 0, "non-integral structure constant");
        num / den
    }
}

/// Exact Chevalley structure constants for `rs`.
pub fn chevalley_constants(rs: &RootSystem) -> StructureConstants {
    let p = rs.num_positive();
    let mut table = PositiveTable {
        rs,
        n: vec![None; p * p],
    };

    let mut targets: Vec<RootId> = rs.positive_ids().filter(|&x| rs.root(x).height() > 1).collect();
    targets.sort_by_key(|&x| (rs.root(x).height(), x));

    for xi in targets {
        // special pairs, first component ascending
        let pairs: Vec<(RootId, RootId)> = rs
            .positive_ids()
            .filter_map(|a| {
                rs.diff(xi, a)
                    .filter(|&b| rs.is_positive(b) && a < b)
                    .map(|b| (a, b))
            })
            .collect();
        let (a0, b0) = pairs[0];
        let n0 = string_below(rs, a0, b0) + 1;
        table.set(a0, b0, n0);

        let xi2 = rs.norm2(xi);
        for &(a, b) in &pairs[1..] {
            // Four-root relation for a + b - a0 - b0 = 0.
            let mut acc = Ratio::from_integer(0i64);
            if let (Some(r1), Some(_)) = (rs.diff(b, a0), rs.diff(a, b0)) {
                let num = table.any(b, rs.neg(a0)) * table.any(a, rs.neg(b0));
                acc += Ratio::new(num, rs.norm2(r1));
            }
            if let (Some(r2), Some(_)) = (rs.diff(a, a0), rs.diff(b, b0)) {
                let num = table.any(rs.neg(a0), a) * table.any(b, rs.neg(b0));
                acc += Ratio::new(num, rs.norm2(r2));
            }
            let val = acc * Ratio::new(xi2, n0);
            assert!(val.is_integer(), "non-integral structure constant");
            table.set(a, b, val.to_integer());
        }
    }

    let nr = rs.num_roots();
    let mut n = vec![0i64; nr * nr];
    let mut sums = vec![None; nr * nr];
    for a in rs.ids() {
        for b in rs.ids() {
            if let Some(s) = rs.sum(a, b) {
                sums[a.0 * nr + b.0] = Some(s);
                n[a.0 * nr + b.0] = table.any(a, b);
            }
        }
    }
    let eval = rs
        .ids()
        .map(|g| (0..rs.rank()).map(|i| rs.pairing(g, i)).collect())
        .collect();
    let coroots = rs.ids().map(|g| rs.coroot(g)).collect();
    let neg = rs.ids().map(|g| rs.neg(g)).collect();

    StructureConstants {
        rank: rs.rank(),
        num_roots: nr,
        n,
        sums,
        neg,
        eval,
        coroots,
    }
}

/// Element of the complexified algebra: a Cartan part over `H_1..H_l` and a
/// sparse root part over the `E_γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieElement<T> {
    cartan: Vec<Complex<T>>,
    roots: BTreeMap<RootId, Complex<T>>,
}

impl<T: Scalar> LieElement<T> {
    pub fn zero(rank: usize) -> Self {
        LieElement {
            cartan: vec![Complex::zero(); rank],
            roots: BTreeMap::new(),
        }
    }

    pub fn cartan_vector(rank: usize, i: usize, c: Complex<T>) -> Self {
        let mut x = Self::zero(rank);
        x.cartan[i] = c;
        x
    }

    pub fn root_vector(rank: usize, gamma: RootId, c: Complex<T>) -> Self {
        let mut x = Self::zero(rank);
        x.add_root(gamma, c);
        x
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_part(&self) -> &[Complex<T>] {
        &self.cartan
    }

    pub fn root_part(&self) -> &BTreeMap<RootId, Complex<T>> {
        &self.roots
    }

    /// Coefficient of `E_γ`.
    pub fn coeff(&self, gamma: RootId) -> Complex<T> {
        self.roots.get(&gamma).copied().unwrap_or_else(Complex::zero)
    }

    pub fn add_root(&mut self, gamma: RootId, c: Complex<T>) {
        let e = self.roots.entry(gamma).or_insert_with(Complex::zero);
        *e = *e + c;
        if e.is_zero() {
            self.roots.remove(&gamma);
        }
    }

    pub fn add_cartan(&mut self, i: usize, c: Complex<T>) {
        self.cartan[i] = self.cartan[i] + c;
    }

    pub fn is_zero(&self) -> bool {
        self.roots.is_empty() && self.cartan.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut out = Self::zero(self.rank());
        for (i, c) in self.cartan.iter().enumerate() {
            out.cartan[i] = *c * s;
        }
        for (&g, &c) in &self.roots {
            out.add_root(g, c * s);
        }
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (i, c) in other.cartan.iter().enumerate() {
            self.cartan[i] = self.cartan[i] + *c;
        }
        for (&g, &c) in &other.roots {
            self.add_root(g, c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(&other.scale(-Complex::new(T::one(), T::zero())));
        out
    }
}

impl LieElement<i64> {
    pub fn to_f64(&self) -> LieElement<f64> {
        let cv = |c: &Complex<i64>| Complex::new(c.re as f64, c.im as f64);
        LieElement {
            cartan: self.cartan.iter().map(cv).collect(),
            roots: self.roots.iter().map(|(&g, c)| (g, cv(c))).collect(),
        }
    }
}

/// Lie bracket `[x, y]`.
pub fn bracket<T: Scalar>(sc: &StructureConstants, x: &LieElement<T>, y: &LieElement<T>) -> Result<LieElement<T>> {
    for z in [x, y] {
        if z.rank() != sc.rank {
            return Err(Error::Dimension {
                expected: sc.rank,
                found: z.rank(),
            });
        }
    }
    let mut out = LieElement::zero(sc.rank);
    for (i, h) in x.cartan.iter().enumerate() {
        if h.is_zero() {
            continue;
        }
        for (&g, &c) in &y.roots {
            out.add_root(g, *h * c * T::from_i64(sc.cartan_action(i, g)));
        }
    }
    for (i, h) in y.cartan.iter().enumerate() {
        if h.is_zero() {
            continue;
        }
        for (&g, &c) in &x.roots {
            out.add_root(g, -(*h * c * T::from_i64(sc.cartan_action(i, g))));
        }
    }
    for (&g, &a) in &x.roots {
        for (&d, &b) in &y.roots {
            bracket_root_terms(sc, g, a, d, b, &mut out);
        }
    }
    Ok(out)
}

/// Accumulates `[a E_γ, b E_δ]` into `out`.
pub(crate) fn bracket_root_terms<T: Scalar>(
    sc: &StructureConstants,
    gamma: RootId,
    a: Complex<T>,
    delta: RootId,
    b: Complex<T>,
    out: &mut LieElement<T>,
) {
    let ab = a * b;
    if ab.is_zero() {
        return;
    }
    if sc.neg[gamma.0] == delta {
        for (i, &h) in sc.coroots[gamma.0].iter().enumerate() {
            if h != 0 {
                out.add_cartan(i, ab * T::from_i64(h));
            }
        }
    } else if let Some(s) = sc.sum(gamma, delta) {
        out.add_root(s, ab * T::from_i64(sc.n[gamma.0 * sc.num_roots + delta.0]));
    }
}

/// Killing form `B(x, y) = tr(ad x ∘ ad y)` tabulated on the Chevalley basis.
#[derive(Debug, Clone)]
pub struct Killing {
    rank: usize,
    dim: usize,
    table: Vec<i64>,
}

impl Killing {
    /// Position of `H_i` / `E_γ` in the Chevalley basis.
    pub fn cartan_index(&self, i: usize) -> usize {
        i
    }

    pub fn root_index(&self, gamma: RootId) -> usize {
        self.rank + gamma.0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn on_basis(&self, a: usize, b: usize) -> i64 {
        self.table[a * self.dim + b]
    }

    /// Bilinear (not sesquilinear) extension to arbitrary elements.
    pub fn form<T: Scalar>(&self, x: &LieElement<T>, y: &LieElement<T>) -> Complex<T> {
        let mut acc = Complex::zero();
        let xs = Self::expand(self.rank, x);
        let ys = Self::expand(self.rank, y);
        for &(a, ca) in &xs {
            for &(b, cb) in &ys {
                let k = self.on_basis(a, b);
                if k != 0 {
                    acc = acc + ca * cb * T::from_i64(k);
                }
            }
        }
        acc
    }

    fn expand<T: Scalar>(rank: usize, x: &LieElement<T>) -> Vec<(usize, Complex<T>)> {
        let mut v: Vec<(usize, Complex<T>)> = x
            .cartan
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, c))
            .collect();
        v.extend(x.roots.iter().map(|(&g, &c)| (rank + g.0, c)));
        v
    }
}

/// Basis element `k` of the Chevalley basis (Cartan first, then roots).
pub fn chevalley_basis_element(sc: &StructureConstants, k: usize) -> LieElement<i64> {
    let one = Complex::new(1, 0);
    if k < sc.rank {
        LieElement::cartan_vector(sc.rank, k, one)
    } else {
        LieElement::root_vector(sc.rank, RootId(k - sc.rank), one)
    }
}

/// Matrix of `ad x` on the Chevalley basis; column `b` holds `[x, basis_b]`.
pub fn ad_matrix(sc: &StructureConstants, x: &LieElement<i64>) -> Vec<Vec<i64>> {
    let dim = sc.dim();
    let mut m = vec![vec![0i64; dim]; dim];
    for b in 0..dim {
        let y = chevalley_basis_element(sc, b);
        let z = bracket(sc, x, &y).expect("rank matches by construction");
        for (i, c) in z.cartan.iter().enumerate() {
            debug_assert_eq!(c.im, 0);
            m[i][b] = c.re;
        }
        for (g, c) in &z.roots {
            debug_assert_eq!(c.im, 0);
            m[sc.rank + g.0][b] = c.re;
        }
    }
    m
}

/// Killing form via traces of products of adjoint matrices.
pub fn killing_gram(sc: &StructureConstants) -> Killing {
    let dim = sc.dim();
    let ads: Vec<Vec<Vec<i64>>> = (0..dim)
        .map(|k| ad_matrix(sc, &chevalley_basis_element(sc, k)))
        .collect();
    let mut table = vec![0i64; dim * dim];
    for a in 0..dim {
        for b in a..dim {
            let mut tr = 0i64;
            for p in 0..dim {
                for q in 0..dim {
                    tr += ads[a][p][q] * ads[b][q][p];
                }
            }
            table[a * dim + b] = tr;
            table[b * dim + a] = tr;
        }
    }
    Killing {
        rank: sc.rank,
        dim,
        table,
    }
}

/// The two real generators of `m^α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    /// `E_α - E_{-α}`
    U,
    /// `i(E_α + E_{-α})`
    V,
}

/// Real basis `{U_α, V_α}` of `m`, ordered by ascending positive root.
/// Flat index `2k` is `U` and `2k + 1` is `V` of the `k`-th positive root.
#[derive(Debug, Clone)]
pub struct MBasis {
    rank: usize,
    num_positive: usize,
}

impl MBasis {
    pub fn dim(&self) -> usize {
        2 * self.num_positive
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn index(&self, alpha: RootId, kind: Kind) -> usize {
        assert!(alpha.0 < self.num_positive, "m-basis is indexed by positive roots");
        2 * alpha.0 + matches!(kind, Kind::V) as usize
    }

    pub fn label(&self, k: usize) -> (RootId, Kind) {
        let kind = if k % 2 == 0 { Kind::U } else { Kind::V };
        (RootId(k / 2), kind)
    }

    fn neg(&self, alpha: RootId) -> RootId {
        if alpha.0 < self.num_positive {
            RootId(alpha.0 + self.num_positive)
        } else {
            RootId(alpha.0 - self.num_positive)
        }
    }

    pub fn element<T: Scalar>(&self, k: usize) -> LieElement<T> {
        let (alpha, kind) = self.label(k);
        let (o, z) = (T::one(), T::zero());
        let (plus, minus) = match kind {
            Kind::U => (Complex::new(o, z), Complex::new(-o, z)),
            Kind::V => (Complex::new(z, o), Complex::new(z, o)),
        };
        let mut x = LieElement::zero(self.rank);
        x.add_root(alpha, plus);
        x.add_root(self.neg(alpha), minus);
        x
    }

    /// Component of `x` in `g^γ`, as a complex coefficient of `E_γ`.
    pub fn component(&self, x: &MVector, gamma: RootId) -> Complex<f64> {
        let c = &x.0;
        if gamma.0 < self.num_positive {
            Complex::new(c[2 * gamma.0], c[2 * gamma.0 + 1])
        } else {
            let a = gamma.0 - self.num_positive;
            Complex::new(-c[2 * a], c[2 * a + 1])
        }
    }

    pub fn to_lie(&self, x: &MVector) -> Result<LieElement<f64>> {
        self.check(x)?;
        let mut out = LieElement::zero(self.rank);
        for a in 0..self.num_positive {
            let alpha = RootId(a);
            out.add_root(alpha, self.component(x, alpha));
            out.add_root(self.neg(alpha), self.component(x, self.neg(alpha)));
        }
        Ok(out)
    }

    /// Drops the Cartan part and re-expresses the root part over the m-basis.
    pub fn project_m(&self, x: &LieElement<f64>) -> Result<MVector> {
        let mut coords = vec![0.0; self.dim()];
        let zero = Complex::zero();
        for a in 0..self.num_positive {
            let plus = x.roots.get(&RootId(a)).copied().unwrap_or(zero);
            let minus = x.roots.get(&self.neg(RootId(a))).copied().unwrap_or(zero);
            let defect = (minus + plus.conj()).norm();
            if defect > REALITY_TOL * (1.0 + plus.norm()) {
                return Err(Error::Representation(format!(
                    "element is not in the compact form: E_{{-α}} coefficient {minus} \
                     does not equal -conj({plus}) for positive root #{a}"
                )));
            }
            coords[2 * a] = plus.re;
            coords[2 * a + 1] = plus.im;
        }
        Ok(MVector(coords))
    }

    pub fn check(&self, x: &MVector) -> Result<()> {
        if x.0.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: x.0.len(),
            });
        }
        Ok(())
    }
}

const REALITY_TOL: f64 = 1e-9;

pub fn build_m_basis(rs: &RootSystem) -> MBasis {
    MBasis {
        rank: rs.rank(),
        num_positive: rs.num_positive(),
    }
}

/// Coefficient of `E_γ` in `x`.
pub fn project_root_space<T: Scalar>(x: &LieElement<T>, gamma: RootId) -> Complex<T> {
    x.coeff(gamma)
}

/// Coordinates of a vector in `m` over [`MBasis`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MVector(pub Vec<f64>);

impl MVector {
    pub fn zeros(dim: usize) -> Self {
        MVector(vec![0.0; dim])
    }

    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[k] = 1.0;
        MVector(v)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scaled(&self, s: f64) -> Self {
        MVector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn plus(&self, other: &Self) -> Self {
        MVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &Self) -> Self {
        MVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn axpy(&mut self, a: f64, x: &Self) {
        for (y, xi) in self.0.iter_mut().zip(&x.0) {
            *y += a * xi;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Structure constants of `[·,·]_m` on the m-basis:
/// `[e_a, e_b]_m = Σ_k table[a][b][k] e_k`.
#[derive(Debug, Clone)]
pub struct MStructure {
    dim: usize,
    table: Vec<f64>,
}

impl MStructure {
    pub fn new(sc: &StructureConstants, basis: &MBasis) -> Self {
        let dim = basis.dim();
        let elems: Vec<LieElement<i64>> = (0..dim).map(|k| basis.element(k)).collect();
        let mut table = vec![0.0; dim * dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                let z = bracket(sc, &elems[a], &elems[b]).expect("rank matches by construction");
                let m = basis
                    .project_m(&z.to_f64())
                    .expect("bracket of compact-form elements is compact");
                table[(a * dim + b) * dim..(a * dim + b + 1) * dim].copy_from_slice(&m.0);
            }
        }
        MStructure { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `[e_a, e_b]_m`.
    pub fn basis_bracket(&self, a: usize, b: usize) -> &[f64] {
        let d = self.dim;
        &self.table[(a * d + b) * d..(a * d + b + 1) * d]
    }

    pub fn bracket(&self, x: &MVector, y: &MVector) -> MVector {
        let d = self.dim;
        let mut out = vec![0.0; d];
        for a in 0..d {
            if x.0[a] == 0.0 {
                continue;
            }
            for b in 0..d {
                let s = x.0[a] * y.0[b];
                if s == 0.0 {
                    continue;
                }
                for (o, t) in out.iter_mut().zip(self.basis_bracket(a, b)) {
                    *o += s * t;
                }
            }
        }
        MVector(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, Root};

    fn setup(f: Family, l: usize) -> (RootSystem, StructureConstants) {
        let rs = RootSystem::build(f, l).unwrap();
        let sc = chevalley_constants(&rs);
        (rs, sc)
    }

    fn id(rs: &RootSystem, v: &[i32]) -> RootId {
        rs.id_of(&Root::new(v.to_vec()).unwrap()).unwrap()
    }

    fn all_systems() -> Vec<(Family, usize)> {
        vec![
            (Family::A, 1),
            (Family::A, 2),
            (Family::A, 3),
            (Family::A, 4),
            (Family::B, 2),
            (Family::B, 3),
            (Family::B, 4),
            (Family::C, 2),
            (Family::C, 3),
            (Family::C, 4),
            (Family::D, 3),
            (Family::D, 4),
        ]
    }

    #[test]
    fn a2_and_b2_magnitudes() {
        let (rs, sc) = setup(Family::A, 2);
        assert_eq!(sc.n(id(&rs, &[1, 0]), id(&rs, &[0, 1])).map(i64::abs), Some(1));

        let (rs, sc) = setup(Family::B, 2);
        assert_eq!(sc.n(id(&rs, &[1, 0]), id(&rs, &[0, 1])).map(i64::abs), Some(1));
        assert_eq!(sc.n(id(&rs, &[0, 1]), id(&rs, &[1, 1])).map(i64::abs), Some(2));
    }

    #[test]
    fn extraspecial_pairs_are_positive() {
        let (rs, sc) = setup(Family::A, 2);
        // only special pair for α1+α2 is (α2, α1) in lex order
        assert_eq!(sc.n(id(&rs, &[0, 1]), id(&rs, &[1, 0])), Some(1));
    }

    #[test]
    fn constant_invariants() {
        for (f, l) in all_systems() {
            let (rs, sc) = setup(f, l);
            for a in rs.ids() {
                for b in rs.ids() {
                    let Some(n) = sc.n(a, b) else {
                        assert!(rs.sum(a, b).is_none());
                        continue;
                    };
                    assert_eq!(sc.n(b, a), Some(-n));
                    assert_eq!(sc.n(rs.neg(a), rs.neg(b)), Some(-n), "{f}{l}");
                    assert_eq!(n.abs(), string_below(&rs, a, b) + 1, "{f}{l}");
                }
            }
        }
    }

    #[test]
    fn jacobi_exact_on_basis_triples() {
        for (f, l) in all_systems() {
            let (_, sc) = setup(f, l);
            let basis: Vec<LieElement<i64>> = (0..sc.dim()).map(|k| chevalley_basis_element(&sc, k)).collect();
            for x in &basis {
                for y in &basis {
                    let xy = bracket(&sc, x, y).unwrap();
                    for z in &basis {
                        let mut s = bracket(&sc, x, &bracket(&sc, y, z).unwrap()).unwrap();
                        s.add_assign(&bracket(&sc, y, &bracket(&sc, z, x).unwrap()).unwrap());
                        s.add_assign(&bracket(&sc, z, &xy).unwrap());
                        assert!(s.is_zero(), "Jacobi fails in {f}{l}");
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let (rs, sc) = setup(Family::A, 2);
        let one = Complex::new(1i64, 0);
        let (a1, a2, a12) = (id(&rs, &[1, 0]), id(&rs, &[0, 1]), id(&rs, &[1, 1]));
        let z = bracket(&sc, &LieElement::root_vector(2, a1, one), &LieElement::root_vector(2, a2, one)).unwrap();
        let n = sc.n(a1, a2).unwrap();
        assert_eq!(z, LieElement::root_vector(2, a12, Complex::new(n, 0)));

        let x = LieElement::root_vector(2, a1, Complex::new(2, 1));
        assert!(bracket(&sc, &x, &x).unwrap().is_zero());

        let bad = LieElement::<i64>::zero(3);
        assert!(matches!(bracket(&sc, &x, &bad), Err(Error::Dimension { .. })));
    }

    #[test]
    fn bracket_is_graded() {
        let (rs, sc) = setup(Family::B, 3);
        let one = Complex::new(1i64, 0);
        for g in rs.ids() {
            for d in rs.ids() {
                let z = bracket(&sc, &LieElement::root_vector(3, g, one), &LieElement::root_vector(3, d, one)).unwrap();
                let support: Vec<RootId> = z.root_part().keys().copied().collect();
                match rs.sum(g, d) {
                    Some(s) => assert_eq!(support, vec![s]),
                    None => assert!(support.is_empty()),
                }
                if rs.neg(g) != d {
                    assert!(z.cartan_part().iter().all(|c| c.is_zero()));
                }
            }
        }
    }

    #[test]
    fn killing_is_ad_invariant_and_graded() {
        for (f, l) in [(Family::A, 2), (Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 3)] {
            let (rs, sc) = setup(f, l);
            let k = killing_gram(&sc);
            let basis: Vec<LieElement<i64>> = (0..sc.dim()).map(|i| chevalley_basis_element(&sc, i)).collect();
            for x in &basis {
                for y in &basis {
                    let xy = bracket(&sc, x, y).unwrap();
                    for z in &basis {
                        let xz = bracket(&sc, x, z).unwrap();
                        assert!((k.form(&xy, z) + k.form(y, &xz)).is_zero(), "{f}{l}");
                    }
                }
            }
            for a in rs.ids() {
                for b in rs.ids() {
                    let v = k.on_basis(k.root_index(a), k.root_index(b));
                    if rs.neg(a) == b {
                        assert!(v > 0);
                    } else {
                        assert_eq!(v, 0);
                    }
                }
                for i in 0..l {
                    assert_eq!(k.on_basis(k.cartan_index(i), k.root_index(a)), 0);
                }
            }
        }
    }

    #[test]
    fn killing_on_m_is_negative_definite_and_blockwise() {
        for (f, l) in [(Family::A, 2), (Family::B, 2), (Family::C, 3), (Family::D, 4)] {
            let (rs, sc) = setup(f, l);
            let k = killing_gram(&sc);
            let m = build_m_basis(&rs);
            for a in 0..m.dim() {
                for b in 0..m.dim() {
                    let v = k.form(&m.element::<i64>(a), &m.element::<i64>(b));
                    assert_eq!(v.im, 0);
                    if a == b {
                        assert!(v.re < 0);
                    } else {
                        assert_eq!(v.re, 0, "{f}{l} {a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn killing_on_a2_root_vectors() {
        let (rs, sc) = setup(Family::A, 2);
        let k = killing_gram(&sc);
        assert_eq!(k.on_basis(k.root_index(id(&rs, &[1, 0])), k.root_index(id(&rs, &[0, 1]))), 0);
    }

    #[test]
    fn m_basis_layout() {
        let rs = RootSystem::build(Family::A, 1).unwrap();
        assert_eq!(build_m_basis(&rs).dim(), 2);

        let rs = RootSystem::build(Family::A, 2).unwrap();
        let m = build_m_basis(&rs);
        assert_eq!(m.dim(), 6);
        let labels: Vec<(Vec<i32>, Kind)> = (0..6)
            .map(|k| {
                let (r, kind) = m.label(k);
                (rs.root(r).coords().to_vec(), kind)
            })
            .collect();
        assert_eq!(
            labels,
            vec![
                (vec![0, 1], Kind::U),
                (vec![0, 1], Kind::V),
                (vec![1, 0], Kind::U),
                (vec![1, 0], Kind::V),
                (vec![1, 1], Kind::U),
                (vec![1, 1], Kind::V),
            ]
        );
        for k in 0..6 {
            let e = m.element::<i64>(k);
            assert!(e.cartan_part().iter().all(|c| c.is_zero()));
            let (alpha, kind) = m.label(k);
            assert_eq!(m.index(alpha, kind), k);
            let support: Vec<RootId> = e.root_part().keys().copied().collect();
            assert_eq!(support, vec![alpha, rs.neg(alpha)]);
            assert_eq!(e.coeff(rs.neg(alpha)), -e.coeff(alpha).conj());
        }
    }

    #[test]
    fn projections() {
        let rs = RootSystem::build(Family::A, 2).unwrap();
        let m = build_m_basis(&rs);
        let h = LieElement::cartan_vector(2, 0, Complex::new(0.0, 1.0));
        assert_eq!(m.project_m(&h).unwrap(), MVector::zeros(6));
        for k in 0..6 {
            let e = m.element::<i64>(k).to_f64();
            assert_eq!(m.project_m(&e).unwrap(), MVector::unit(6, k));
        }
        let (alpha, _) = m.label(1);
        let v = m.element::<i64>(1);
        assert_eq!(project_root_space(&v, rs.neg(alpha)), Complex::new(0, 1));
        assert_eq!(project_root_space(&v, alpha), Complex::new(0, 1));

        let not_real = LieElement::root_vector(2, alpha, Complex::new(1.0, 0.0));
        assert!(matches!(m.project_m(&not_real), Err(Error::Representation(_))));
    }

    #[test]
    fn m_structure_matches_direct_bracket() {
        let (rs, sc) = setup(Family::C, 3);
        let m = build_m_basis(&rs);
        let ms = MStructure::new(&sc, &m);
        let x = MVector((0..m.dim()).map(|k| (k as f64 * 0.37).sin()).collect());
        let y = MVector((0..m.dim()).map(|k| (k as f64 * 1.3).cos()).collect());
        let direct = m
            .project_m(&bracket(&sc, &m.to_lie(&x).unwrap(), &m.to_lie(&y).unwrap()).unwrap())
            .unwrap();
        assert!(ms.bracket(&x, &y).max_abs_diff(&direct) < 1e-12);
    }
}
