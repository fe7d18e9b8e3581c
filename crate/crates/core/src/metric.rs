//! Invariant Riemannian metrics `g = Σ_{α∈R⁺} c_α (−B)|_{m^α}`.
//!
//! The modules `m^α` are pairwise inequivalent under `Ad(T)`, so every
//! invariant metric has this diagonal form; there is no off-diagonal case to
//! support.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chevalley::{Killing, MBasis, MVector};
use crate::error::{Error, Result};
use crate::rootsys::{Root, RootId, RootSystem};

/// Range used for seeded random metric coefficients.
pub const RANDOM_COEFF_RANGE: (f64, f64) = (0.5, 5.0);

/// One positive coefficient `c_α` per positive root.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpec {
    /// Indexed by positive [`RootId`].
    coeffs: Vec<f64>,
}

fn check_positive(root: &Root, c: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("coefficient for root {root} must be positive and finite, got {c}")))
    }
}

impl MetricSpec {
    /// Builds a spec from `(root, c)` pairs covering each positive root once.
    pub fn from_pairs<I>(rs: &RootSystem, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Root, f64)>,
    {
        let mut coeffs: Vec<Option<f64>> = vec![None; rs.num_positive()];
        for (root, c) in pairs {
            let id = rs.require(&root).map_err(|e| Error::Config(format!("coefficient key {root}: {e}")))?;
            if !rs.is_positive(id) {
                return Err(Error::Config(format!("coefficient key {root} is not a positive root")));
            }
            check_positive(&root, c)?;
            if coeffs[id.index()].replace(c).is_some() {
                return Err(Error::Config(format!("duplicate coefficient for root {root}")));
            }
        }
        let missing: Vec<String> = rs
            .positive_ids()
            .filter(|a| coeffs[a.index()].is_none())
            .map(|a| rs.root(a).to_string())
            .collect();
        if !missing.is_empty() {
            return Err(Error::Config(format!("missing coefficient for root(s) {}", missing.join(", "))));
        }
        Ok(MetricSpec {
            coeffs: coeffs.into_iter().flatten().collect(),
        })
    }

    /// Coefficients listed in ascending positive-root order.
    pub fn from_values(rs: &RootSystem, values: &[f64]) -> Result<Self> {
        if values.len() != rs.num_positive() {
            return Err(Error::Dimension {
                expected: rs.num_positive(),
                found: values.len(),
            });
        }
        Self::from_pairs(rs, rs.positive_roots().iter().cloned().zip(values.iter().copied()))
    }

    /// All coefficients equal: the normal metric, a multiple of `−B`.
    pub fn normal(rs: &RootSystem, value: f64) -> Result<Self> {
        Self::from_values(rs, &vec![value; rs.num_positive()])
    }

    /// Coefficients drawn uniformly from [`RANDOM_COEFF_RANGE`].
    pub fn random(rs: &RootSystem, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (lo, hi) = RANDOM_COEFF_RANGE;
        MetricSpec {
            coeffs: (0..rs.num_positive()).map(|_| rng.gen_range(lo..hi)).collect(),
        }
    }

    /// `c_{|γ|}` for any root `γ`.
    pub fn c(&self, rs: &RootSystem, gamma: RootId) -> f64 {
        self.coeffs[rs.abs(gamma).index()]
    }

    pub fn values(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn pairs(&self, rs: &RootSystem) -> Vec<(Root, f64)> {
        rs.positive_roots().iter().cloned().zip(self.coeffs.iter().copied()).collect()
    }

    pub fn is_normal(&self) -> bool {
        self.coeffs.windows(2).all(|w| w[0] == w[1])
    }
}

/// Diagonal Gram matrix of `g` on [`MBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct MetricGram {
    diagonal: Vec<f64>,
}

pub fn build_metric(rs: &RootSystem, killing: &Killing, basis: &MBasis, spec: &MetricSpec) -> Result<MetricGram> {
    if spec.coeffs.len() != rs.num_positive() {
        return Err(Error::Config(format!(
            "metric has {} coefficients but the system has {} positive roots",
            spec.coeffs.len(),
            rs.num_positive()
        )));
    }
    let diagonal = (0..basis.dim())
        .map(|k| {
            let (alpha, _) = basis.label(k);
            let e = basis.element::<i64>(k);
            let b = killing.form(&e, &e);
            debug_assert_eq!(b.im, 0);
            spec.coeffs[alpha.index()] * (-b.re) as f64
        })
        .collect();
    Ok(MetricGram { diagonal })
}

impl MetricGram {
    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn inner(&self, x: &MVector, y: &MVector) -> Result<f64> {
        for v in [x, y] {
            if v.dim() != self.dim() {
                return Err(Error::Dimension {
                    expected: self.dim(),
                    found: v.dim(),
                });
            }
        }
        Ok(self
            .diagonal
            .iter()
            .zip(x.coords().iter().zip(y.coords()))
            .map(|(d, (a, b))| d * (a * b))
            .sum())
    }
}
