//! Levi-Civita connections of flag manifolds `G/T` for the classical compact
//! Lie groups, with invariant Riemannian metrics given by one positive
//! coefficient per positive root.
//!
//! Root vectors use the Chevalley normalization (integer structure constants,
//! `[E_α, E_{−α}] = H_α`). Raw tensor entries depend on that normalization;
//! torsion-freeness and metric compatibility do not.

pub mod chevalley;
pub mod connection;
pub mod error;
pub mod flag;
pub mod metric;
pub mod oracle;
pub mod rootsys;
pub mod su;

pub use chevalley::{Kind, LieElement, MBasis, MVector};
pub use connection::{assemble_tensor, nabla, u_bilinear, ConnectionTensor};
pub use error::{Error, Result};
pub use flag::FlagManifold;
pub use metric::{build_metric, MetricGram, MetricSpec};
pub use oracle::CheckReport;
pub use rootsys::{Family, Root, RootId, RootSystem};
