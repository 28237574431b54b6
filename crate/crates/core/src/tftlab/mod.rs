//! Manifolds as invariant tuples, vector-field bordism, and the values of
//! explicit invertible theories.

mod bordism;
mod manifold;
mod theories;

use thiserror::Error;

pub use bordism::{is_vf_nullbordant, vf_invariant, FormalSum, VfInvariant};
pub use manifold::{standard_manifolds, Catalog, ManifoldClass, CATALOG_VERSION};
pub use theories::{
    euler_theory_value, frobenius_closed_value, frobenius_verify, invertible_4d_monomial, invertible_4d_value,
    FrobeniusCheck, FrobeniusData, FrobeniusVerdict, SurfaceBordism,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TftError {
    #[error("invalid manifold {0}")]
    InvalidManifold(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: u8, found: u8 },
    #[error("no k_ℝ recorded for {0}")]
    MissingKr(String),
    #[error("unknown manifold `{0}`")]
    UnknownManifold(String),
    #[error("cannot parse {0}")]
    Parse(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
