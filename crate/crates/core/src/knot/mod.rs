//! Knot inputs and their abelian invariants.

mod linking;
mod seifert;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteAbelianGroup};
use crate::serde_util;

pub use linking::{mod_one, Character, LinkingForm};
pub use seifert::{
    alexander_polynomial, double_cover_homology, linking_form, twisted_double_seifert,
    SeifertMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("Seifert matrix is {rows}x{cols}, must be square")]
    NotSquare { rows: usize, cols: usize },
    #[error("Seifert matrix has odd size {0}")]
    OddSize(usize),
    #[error("det(V - V^T) = 1 violated: det(V - V^T) = {det}")]
    SkewNotUnimodular { det: BigInt },
    #[error("invalid two-bridge parameters: {0}")]
    InvalidBridgeParams(String),
    #[error("invalid linking form: {0}")]
    InvalidLinkingForm(String),
    #[error("element has {found} coordinates, carrier has {expected} generators")]
    NotInCarrier { expected: usize, found: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The two-bridge knot `K(p, q)`: cover homology `Z_p` with linking `q/p`
/// on the generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoBridgeKnot {
    #[serde(with = "serde_util::bigint")]
    pub p: BigInt,
    #[serde(with = "serde_util::bigint")]
    pub q: BigInt,
    pub homology: FiniteAbelianGroup,
    pub linking_form: LinkingForm,
}

pub fn two_bridge(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<TwoBridgeKnot, KnotError> {
    let (p, q) = (p.into(), q.into());
    if p < BigInt::from(3) || p.is_even() {
        return Err(KnotError::InvalidBridgeParams(format!(
            "p = {p} must be odd and at least 3"
        )));
    }
    if !q.is_positive() || q >= p {
        return Err(KnotError::InvalidBridgeParams(format!(
            "q = {q} must satisfy 0 < q < p"
        )));
    }
    if !p.gcd(&q).is_one() {
        return Err(KnotError::InvalidBridgeParams(format!("gcd({p}, {q}) ≠ 1")));
    }
    let homology = FiniteAbelianGroup::from_invariant_factors(vec![p.clone()])?;
    let linking_form = LinkingForm::new(
        homology.clone(),
        vec![vec![BigRational::new(q.clone(), p.clone())]],
    )?;
    Ok(TwoBridgeKnot {
        p,
        q,
        homology,
        linking_form,
    })
}

/// The p-primary summand of `g`.
pub fn primary_part(g: &FiniteAbelianGroup, p: u64) -> FiniteAbelianGroup {
    g.primary_part(p)
}

/// Character given by linking with `x` (coordinates on the carrier's generators).
pub fn character_of(x: &[BigInt], form: &LinkingForm) -> Result<Character, KnotError> {
    form.character_of(x)
}
