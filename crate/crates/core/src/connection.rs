//! Closed-form Levi-Civita connection `∇_X Y = ½[X,Y]_m + U(X,Y)`.
//!
//! On root vectors `X_γ ∈ g^γ`, `Y_δ ∈ g^δ` the symmetric term is
//!
//! ```text
//! U(X_γ, Y_δ) = (c_|γ| − c_|δ|) / (2 c_|γ+δ|) · [Y_δ, X_γ]   if γ + δ ∈ R
//!             = 0                                            otherwise
//! ```
//!
//! Grouping the four ordered pairs `(α,β), (β,α), (−α,−β), (−β,−α)` that carry
//! the same coefficient gives, for general `X, Y ∈ m`,
//!
//! ```text
//! U(X,Y) = Σ_{α<β, α+β∈R⁺} (c_α − c_β)/(2c_{α+β}) Z_α^β
//!        + Σ_{β−α∈R⁺}      (c_α − c_β)/(2c_{β−α}) Z_{−α}^β
//! Z_α^β  = [Y_β, X_α] + [X_β, Y_α] + [Y_{−β}, X_{−α}] + [X_{−β}, Y_{−α}]
//! ```
//!
//! with `α, β` ranging over positive roots. Note `Z_β^α = −Z_α^β`; only the
//! product with its coefficient is invariant under the swap.

use std::cmp::Ordering;

use num_complex::Complex;

use crate::chevalley::{bracket_root_terms, Kind, LieElement, MVector};
use crate::error::{Error, Result};
use crate::flag::FlagManifold;
use crate::metric::MetricSpec;
use crate::rootsys::{lex_cmp, Root, RootId, RootSystem};

/// Selects the unique pair among `(α,β), (β,α), (−α,−β), (−β,−α)` with
/// `|a₁| < a₂`.
pub fn canonical_pair(rs: &RootSystem, alpha: RootId, beta: RootId) -> Result<(RootId, RootId)> {
    if alpha == beta || alpha == rs.neg(beta) {
        return Err(Error::UndefinedPair);
    }
    let (mut a1, mut a2) = (alpha, beta);
    if !rs.is_positive(a2) {
        (a1, a2) = (rs.neg(a1), rs.neg(a2));
    }
    if rs.cmp_ids(a1, a2) != Ordering::Less {
        (a1, a2) = (a2, a1);
    }
    if rs.cmp_ids(a1, rs.neg(a2)) == Ordering::Greater {
        Ok((a1, a2))
    } else {
        Ok((rs.neg(a2), rs.neg(a1)))
    }
}

/// `|a₁| < a₂` tested directly on coordinates, i.e. `−a₂ < a₁ < a₂`.
pub fn is_canonical(rs: &RootSystem, a1: RootId, a2: RootId) -> bool {
    let (x, y) = (rs.root(a1).coords(), rs.root(a2).coords());
    let minus_y: Vec<i32> = y.iter().map(|v| -v).collect();
    lex_cmp(&minus_y, x) == Ordering::Less && lex_cmp(x, y) == Ordering::Less
}

/// `U(X_γ, Y_δ)` for `X_γ = x·E_γ`, `Y_δ = y·E_δ`.
pub fn u_root_pair(
    fm: &FlagManifold,
    spec: &MetricSpec,
    x: Complex<f64>,
    gamma: RootId,
    y: Complex<f64>,
    delta: RootId,
) -> LieElement<f64> {
    let rs = fm.roots();
    let mut out = LieElement::zero(rs.rank());
    let Some(sum) = rs.sum(gamma, delta) else {
        return out;
    };
    let coef = (spec.c(rs, gamma) - spec.c(rs, delta)) / (2.0 * spec.c(rs, sum));
    bracket_root_terms(fm.constants(), delta, y * coef, gamma, x, &mut out);
    out
}

fn accumulate_z(
    fm: &FlagManifold,
    x: &MVector,
    y: &MVector,
    alpha: RootId,
    beta: RootId,
    scale: f64,
    out: &mut LieElement<f64>,
) {
    let (rs, sc, basis) = (fm.roots(), fm.constants(), fm.basis());
    let (na, nb) = (rs.neg(alpha), rs.neg(beta));
    let s = Complex::new(scale, 0.0);
    for (p, q, from_y_first) in [(beta, alpha, true), (beta, alpha, false), (nb, na, true), (nb, na, false)] {
        // [Y_p, X_q] or [X_p, Y_q]
        let (first, second) = if from_y_first {
            (basis.component(y, p), basis.component(x, q))
        } else {
            (basis.component(x, p), basis.component(y, q))
        };
        bracket_root_terms(sc, p, first * s, q, second, out);
    }
}

/// `Z_α^β` projected to `m`.
pub fn z_term(fm: &FlagManifold, x: &MVector, y: &MVector, alpha: RootId, beta: RootId) -> Result<MVector> {
    fm.basis().check(x)?;
    fm.basis().check(y)?;
    let mut acc = LieElement::zero(fm.roots().rank());
    accumulate_z(fm, x, y, alpha, beta, 1.0, &mut acc);
    fm.basis().project_m(&acc)
}

/// `U(X, Y)` by the grouped closed form over pairs of positive roots.
pub fn u_bilinear(fm: &FlagManifold, spec: &MetricSpec, x: &MVector, y: &MVector) -> Result<MVector> {
    fm.basis().check(x)?;
    fm.basis().check(y)?;
    let rs = fm.roots();
    let mut acc = LieElement::zero(rs.rank());
    for a in rs.positive_ids() {
        for b in rs.positive_ids() {
            if a < b {
                if let Some(s) = rs.sum(a, b) {
                    let coef = (spec.c(rs, a) - spec.c(rs, b)) / (2.0 * spec.c(rs, s));
                    if coef != 0.0 {
                        accumulate_z(fm, x, y, a, b, coef, &mut acc);
                    }
                }
            }
            if let Some(d) = rs.diff(b, a).filter(|&d| rs.is_positive(d)) {
                let coef = (spec.c(rs, a) - spec.c(rs, b)) / (2.0 * spec.c(rs, d));
                if coef != 0.0 {
                    accumulate_z(fm, x, y, rs.neg(a), b, coef, &mut acc);
                }
            }
        }
    }
    fm.basis().project_m(&acc)
}

/// `U(X, Y)` by summing the root-vector formula over every pair of root
/// components of `X` and `Y`, without grouping.
pub fn u_from_root_pairs(fm: &FlagManifold, spec: &MetricSpec, x: &MVector, y: &MVector) -> Result<MVector> {
    let basis = fm.basis();
    basis.check(x)?;
    basis.check(y)?;
    let rs = fm.roots();
    let mut acc = LieElement::zero(rs.rank());
    for g in rs.ids() {
        let xg = basis.component(x, g);
        for d in rs.ids() {
            let term = u_root_pair(fm, spec, xg, g, basis.component(y, d), d);
            acc.add_assign(&term);
        }
    }
    basis.project_m(&acc)
}

/// `∇_X Y = ½[X,Y]_m + U(X,Y)`.
pub fn nabla(fm: &FlagManifold, spec: &MetricSpec, x: &MVector, y: &MVector) -> Result<MVector> {
    let mut out = u_bilinear(fm, spec, x, y)?;
    out.axpy(0.5, &fm.m_structure().bracket(x, y));
    Ok(out)
}

/// Dense array with `∇_{e_i} e_j = Σ_k gamma[i][j][k] e_k` over the m-basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionTensor {
    dim: usize,
    gamma: Vec<f64>,
    labels: Vec<(Root, Kind)>,
}

impl ConnectionTensor {
    /// Wraps a row-major `dim³` array; `labels` names the basis vectors.
    pub fn from_dense(labels: Vec<(Root, Kind)>, gamma: Vec<f64>) -> Result<Self> {
        let dim = labels.len();
        if gamma.len() != dim * dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim * dim,
                found: gamma.len(),
            });
        }
        if let Some(bad) = gamma.iter().position(|v| !v.is_finite()) {
            return Err(Error::Representation(format!("non-finite tensor entry at flat index {bad}")));
        }
        Ok(ConnectionTensor { dim, gamma, labels })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[(Root, Kind)] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.gamma[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `∇_{e_i} e_j`.
    pub fn row(&self, i: usize, j: usize) -> &[f64] {
        let d = self.dim;
        &self.gamma[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.gamma
    }

    /// Copy with one entry shifted by `delta`.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, delta: f64) -> Self {
        let mut t = self.clone();
        t.gamma[(i * self.dim + j) * self.dim + k] += delta;
        t
    }

    /// `gamma − ½[·,·]_m`, the array of `U(e_i, e_j)`.
    pub fn u_part(&self, fm: &FlagManifold) -> Vec<f64> {
        let ms = fm.m_structure();
        let mut out = self.gamma.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let row = &mut out[(i * self.dim + j) * self.dim..(i * self.dim + j + 1) * self.dim];
                for (o, b) in row.iter_mut().zip(ms.basis_bracket(i, j)) {
                    *o -= 0.5 * b;
                }
            }
        }
        out
    }
}

pub fn basis_labels(fm: &FlagManifold) -> Vec<(Root, Kind)> {
    (0..fm.dim())
        .map(|k| {
            let (a, kind) = fm.basis().label(k);
            (fm.roots().root(a).clone(), kind)
        })
        .collect()
}

/// Evaluates `∇_{e_i} e_j` for every pair of basis vectors.
pub fn assemble_tensor(fm: &FlagManifold, spec: &MetricSpec) -> Result<ConnectionTensor> {
    let n = fm.dim();
    let mut gamma = Vec::with_capacity(n * n * n);
    for i in 0..n {
        let ei = MVector::unit(n, i);
        for j in 0..n {
            let v = nabla(fm, spec, &ei, &MVector::unit(n, j))?;
            gamma.extend_from_slice(v.coords());
        }
    }
    ConnectionTensor::from_dense(basis_labels(fm), gamma)
}
