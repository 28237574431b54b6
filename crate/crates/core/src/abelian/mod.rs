//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups in invariant-factor form, homomorphisms between them,
//! exactness checks and extension enumeration.
//!
//! Relations are always columns: a matrix `A` with `r` rows presents the
//! group `Z^r / colspan(A)`.

mod extension;
mod group;
pub mod lattice;
mod matrix;
mod snf;

pub use extension::{
    ext_group, extensions, middle_group_candidates, units_kernel, Extension, MAX_ENUMERATED_ORDER,
    MAX_EXTENSION_CLASSES,
};
pub use group::{check_exact, Exactness, FgAbGroup, GroupHom};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbelianError {
    #[error("expected {expected} matrix entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("homomorphism matrix is {rows}x{cols}, groups need {target_gens}x{source_gens}")]
    HomShape {
        rows: usize,
        cols: usize,
        target_gens: usize,
        source_gens: usize,
    },
    #[error("image of torsion generator {generator} does not respect its order")]
    NotWellDefined { generator: usize },
    #[error("cannot compose: target {left} differs from source {right}")]
    CompositionMismatch { left: String, right: String },
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("torsion orders are not in invariant-factor form")]
    NonCanonical,
}
