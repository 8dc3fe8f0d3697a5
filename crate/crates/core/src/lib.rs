//! Exact-arithmetic obstructions to knots having finite concordance order.
//!
//! The crate computes abelian invariants of a knot from a Seifert matrix
//! (Alexander polynomial, homology of the double branched cover, linking
//! form), decides the hypothesis gates of the known infinite-order criteria,
//! enumerates metabolizers of prime-power linking forms and replays the
//! Casson–Gordon argument on them as checkable certificates.

pub mod algebra;
pub mod classifier;
pub mod knot;
pub mod metabolizer;
pub mod number_theory;
pub mod replay;
pub mod serde_util;

pub use algebra::{
    cokernel, poly_resultant, smith_normal_form, AlgebraError, FiniteAbelianGroup, IntMatrix,
    IntPolynomial, SnfResult,
};
pub use classifier::{full_verdict, AlgebraicOrder, ConcordanceVerdict};
pub use knot::{alexander_polynomial, double_cover_homology, linking_form, SeifertMatrix};
pub use metabolizer::{
    enumerate_metabolizers, normal_form, verify_structure, MetabolizerNormalForm, PrimaryForm,
};
pub use replay::{replay, Certificate, GroupRingElement};
