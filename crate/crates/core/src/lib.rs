//! First Dirichlet eigenvalues of trees whose boundary is the leaf set, the
//! tree families that minimize them, and exhaustive checks of those
//! minimizers over small orders.

// index loops mirror the matrix formulas; `!(x > 0.0)` also rejects NaN
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod io;
pub mod json;
pub mod linalg;
pub mod matching;
pub mod spectral;
pub mod transforms;
pub mod tree;

pub use enumerate::{
    classify, free_trees, verify_class, verify_theorem_sweep, ClassKey, ExtremalCertificate,
    Theorem, Verdict, VerifyConfig,
};
pub use error::{Error, Result};
pub use families::{build_comet, build_fork, build_path, build_star, build_t, predicted_extremal};
pub use matching::{matching_number, Matching};
pub use spectral::{first_eigenpair, lambda1, rayleigh_quotient, DirichletSpectrum};
pub use tree::{CanonicalCode, Edge, TreeInvariants, TreeWithBoundary};
