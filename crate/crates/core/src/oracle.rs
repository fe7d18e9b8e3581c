//! Brute-force reference for `U` and the Levi-Civita property checks.
//!
//! The reference solves `2g(U(X,Y), Z) = g(X, [Z,Y]_m) + g([Z,X]_m, Y)` for
//! every basis vector `Z`. Since `g` is diagonal on the m-basis this is one
//! division per coordinate. Nothing here uses the closed form.

use serde::{Deserialize, Serialize};

use crate::chevalley::{MStructure, MVector};
use crate::connection::{u_bilinear, ConnectionTensor};
use crate::error::{Error, Result};
use crate::flag::FlagManifold;
use crate::metric::{build_metric, MetricGram, MetricSpec};
use crate::rootsys::RootSystem;

/// Default absolute threshold for floating-point residuals.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    pub max_residual: f64,
    pub threshold: f64,
    pub passed: bool,
    /// Indices of the worst violation, when there is one.
    pub witness: Option<Vec<usize>>,
}

impl CheckReport {
    pub fn new(name: &str, max_residual: f64, threshold: f64, witness: Option<Vec<usize>>) -> Self {
        CheckReport {
            check_name: name.to_string(),
            max_residual,
            threshold,
            // NaN residuals fail
            passed: max_residual <= threshold,
            witness,
        }
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {}: max residual {:.3e} (threshold {:.1e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.check_name,
            self.max_residual,
            self.threshold
        )?;
        if let Some(w) = &self.witness {
            write!(f, " at {w:?}")?;
        }
        Ok(())
    }
}

/// Running maximum that remembers where it occurred.
#[derive(Default)]
struct Worst {
    value: f64,
    at: Option<Vec<usize>>,
}

impl Worst {
    fn see(&mut self, v: f64, at: impl FnOnce() -> Vec<usize>) {
        if v > self.value || v.is_nan() {
            self.value = if v.is_nan() { f64::INFINITY } else { v };
            self.at = Some(at());
        }
    }

    fn report(self, name: &str, threshold: f64) -> CheckReport {
        CheckReport::new(name, self.value, threshold, self.at)
    }
}

/// `U(X, Y)` from its defining identity against each basis vector.
pub fn u_oracle(fm: &FlagManifold, gram: &MetricGram, x: &MVector, y: &MVector) -> Result<MVector> {
    let n = fm.dim();
    for v in [x, y] {
        if v.dim() != n {
            return Err(Error::Dimension { expected: n, found: v.dim() });
        }
    }
    if gram.dim() != n {
        return Err(Error::Dimension { expected: n, found: gram.dim() });
    }
    let ms = fm.m_structure();
    let coords = (0..n)
        .map(|k| {
            let ek = MVector::unit(n, k);
            let rhs = gram.inner(x, &ms.bracket(&ek, y))? + gram.inner(&ms.bracket(&ek, x), y)?;
            Ok(rhs / (2.0 * gram.diagonal()[k]))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(MVector(coords))
}

/// Compares the closed form with [`u_oracle`] on every pair of basis vectors.
pub fn check_oracle_equivalence(fm: &FlagManifold, spec: &MetricSpec, threshold: f64) -> Result<CheckReport> {
    let gram = build_metric(fm.roots(), fm.killing(), fm.basis(), spec)?;
    let n = fm.dim();
    let mut worst = Worst::default();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (MVector::unit(n, i), MVector::unit(n, j));
            let closed = u_bilinear(fm, spec, &x, &y)?;
            let oracle = u_oracle(fm, &gram, &x, &y)?;
            for k in 0..n {
                worst.see((closed.0[k] - oracle.0[k]).abs(), || vec![i, j, k]);
            }
        }
    }
    Ok(worst.report("oracle", threshold))
}

/// `max |Γ_ij − Γ_ji − [e_i, e_j]_m|`.
pub fn check_torsion(tensor: &ConnectionTensor, ms: &MStructure, threshold: f64) -> Result<CheckReport> {
    let n = tensor.dim();
    if ms.dim() != n {
        return Err(Error::Dimension { expected: ms.dim(), found: n });
    }
    let mut worst = Worst::default();
    for i in 0..n {
        for j in 0..n {
            let br = ms.basis_bracket(i, j);
            for k in 0..n {
                let r = tensor.get(i, j, k) - tensor.get(j, i, k) - br[k];
                worst.see(r.abs(), || vec![i, j, k]);
            }
        }
    }
    Ok(worst.report("torsion", threshold))
}

/// `max |g(∇_{e_i} e_j, e_k) + g(e_j, ∇_{e_i} e_k)|`.
pub fn check_metric_compat(tensor: &ConnectionTensor, gram: &MetricGram, threshold: f64) -> Result<CheckReport> {
    let n = tensor.dim();
    if gram.dim() != n {
        return Err(Error::Dimension { expected: gram.dim(), found: n });
    }
    let d = gram.diagonal();
    let mut worst = Worst::default();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = tensor.get(i, j, k) * d[k] + d[j] * tensor.get(i, k, j);
                worst.see(r.abs(), || vec![i, j, k]);
            }
        }
    }
    Ok(worst.report("metric", threshold))
}

/// For every ordered pair `α ≠ ±β`, counts the candidate pairs satisfying
/// `|a₁| < a₂`; the residual is the largest deviation of a count from one.
pub fn check_lemma2(rs: &RootSystem) -> CheckReport {
    let mut worst = Worst::default();
    for a in rs.ids() {
        for b in rs.ids() {
            if a == b || a == rs.neg(b) {
                continue;
            }
            let cands = [(a, b), (b, a), (rs.neg(a), rs.neg(b)), (rs.neg(b), rs.neg(a))];
            let count = cands
                .iter()
                .filter(|&&(p, q)| {
                    // |p| < q on raw coordinates
                    let abs_p: Vec<i32> = {
                        let c = rs.root(p).coords();
                        if c.iter().all(|&v| v >= 0) {
                            c.to_vec()
                        } else {
                            c.iter().map(|v| -v).collect()
                        }
                    };
                    let q = rs.root(q).coords();
                    q.iter().all(|&v| v >= 0) && crate::rootsys::lex_cmp(&abs_p, q) == std::cmp::Ordering::Less
                })
                .count();
            worst.see((count as f64 - 1.0).abs(), || vec![a.index(), b.index()]);
        }
    }
    worst.report("lemma2", 0.0)
}
