//! Verdicts: algebraic concordance order of quadratic Alexander polynomials
//! and the infinite-order obstructions that apply to a knot.
//!
//! Every obstruction names the [`Rule`] that produced it. The toolkit never
//! claims a finite concordance order; when nothing fires the verdict is
//! [`ConcordanceStatus::Unresolved`].

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{FiniteAbelianGroup, IntPolynomial};
use crate::knot::{
    alexander_polynomial, double_cover_homology, twisted_double_seifert, SeifertMatrix,
};
use crate::number_theory::{factorize_big, is_perfect_square, NumberTheoryError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("Alexander polynomial {0} is not quadratic")]
    NotQuadratic(String),
    #[error("Δ(1) = {0}, expected ±1 for a knot polynomial")]
    NotAKnotPolynomial(BigInt),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    NumberTheory(#[from] NumberTheoryError),
}

/// A prime together with the exponent that qualified it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeWitness {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimeWitness {
    /// `p ≡ 3 (mod 4)` with odd exponent, the shape every obstruction needs.
    pub fn is_valid(&self) -> bool {
        self.prime % 4 == 3 && self.exponent % 2 == 1
    }
}

impl fmt::Display for PrimeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.prime, self.exponent)
    }
}

/// Order of a knot in the algebraic concordance group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "order", rename_all = "kebab-case")]
pub enum AlgebraicOrder {
    Slice,
    Order2,
    /// Witnessed by every prime `≡ 3 (mod 4)` with odd exponent in `|Δ(1)Δ(−1)|`.
    Order4 {
        witnesses: Vec<PrimeWitness>,
    },
    Infinite,
    Indeterminate,
}

impl fmt::Display for AlgebraicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicOrder::Slice => write!(f, "algebraically slice (order 1)"),
            AlgebraicOrder::Order2 => write!(f, "order 2"),
            AlgebraicOrder::Order4 { witnesses } => {
                let ps: Vec<String> = witnesses.iter().map(|w| w.prime.to_string()).collect();
                write!(f, "order 4 (witness primes {})", ps.join(", "))
            }
            AlgebraicOrder::Infinite => write!(f, "infinite order"),
            AlgebraicOrder::Indeterminate => write!(f, "indeterminate"),
        }
    }
}

/// The statement an obstruction rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Cover homology `Z_{p^n} ⊕ G`, `p ≡ 3 (mod 4)`, `n` odd, `p ∤ |G|`.
    CyclicPrimaryGate,
    /// Polynomial `nt² − (2n+1)t + n`, odd-exponent prime `p ≡ 3 (mod 4)` in `4n+1`, `H_p` cyclic.
    TwistedPolynomialCyclic,
    /// Unknotting number one and an odd-exponent prime `p ≡ 3 (mod 4)` in `Δ(−1)`.
    UnknottingNumberOne,
    /// Two-bridge `K(p, q)` with an odd-exponent prime `≡ 3 (mod 4)` in `p`.
    TwoBridge,
    /// A twisted double of algebraic order 4.
    TwistedDoubleOrderFour,
    /// Infinite algebraic order, `Δ(1)Δ(−1) > 0` for quadratic `Δ`.
    AlgebraicInfiniteOrder,
}

impl Rule {
    pub fn label(&self) -> &'static str {
        match self {
            Rule::CyclicPrimaryGate => "cyclic-primary-gate",
            Rule::TwistedPolynomialCyclic => "twisted-polynomial-cyclic",
            Rule::UnknottingNumberOne => "unknotting-number-one",
            Rule::TwoBridge => "two-bridge",
            Rule::TwistedDoubleOrderFour => "twisted-double-order-four",
            Rule::AlgebraicInfiniteOrder => "algebraic-infinite-order",
        }
    }

    /// Whether the rule rests on a prime witness.
    pub fn needs_prime_witness(&self) -> bool {
        !matches!(self, Rule::AlgebraicInfiniteOrder)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub rule: Rule,
    pub witness: Option<PrimeWitness>,
    pub detail: String,
}

impl Obstruction {
    pub fn is_valid(&self) -> bool {
        match (self.rule.needs_prime_witness(), &self.witness) {
            (true, Some(w)) => w.is_valid(),
            (false, None) => true,
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConcordanceStatus {
    /// Known slice: the unknot, or the 2-twisted double of the unknot.
    Slice,
    InfiniteOrder,
    /// No obstruction applies; the concordance order is not decided here.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcordanceVerdict {
    pub status: ConcordanceStatus,
    pub algebraic_order: Option<AlgebraicOrder>,
    pub obstructions: Vec<Obstruction>,
    pub gate_witnesses: Vec<PrimeWitness>,
    pub notes: Vec<String>,
}

impl ConcordanceVerdict {
    pub fn is_infinite_order(&self) -> bool {
        self.status == ConcordanceStatus::InfiniteOrder
    }

    /// Infinite order must be backed by at least one valid obstruction.
    pub fn is_consistent(&self) -> bool {
        self.obstructions.iter().all(Obstruction::is_valid)
            && (self.status == ConcordanceStatus::InfiniteOrder) == !self.obstructions.is_empty()
    }

    pub fn fired_rules(&self) -> Vec<Rule> {
        let mut rules: Vec<Rule> = self.obstructions.iter().map(|o| o.rule).collect();
        rules.dedup();
        rules
    }
}

/// Primes `p ≡ 3 (mod 4)` whose primary summand of `g` is cyclic `Z_{p^n}`
/// with `n` odd. An empty result means the gate is silent, never that the
/// knot has finite order.
pub fn cyclic_primary_gate(g: &FiniteAbelianGroup) -> Result<Vec<PrimeWitness>, ClassifyError> {
    Ok(g.primary_decomposition()?
        .into_iter()
        .filter(|c| c.prime % 4 == 3 && c.is_cyclic())
        .map(|c| PrimeWitness {
            prime: c.prime,
            exponent: c.exponents[0],
        })
        .filter(PrimeWitness::is_valid)
        .collect())
}

fn odd_exponent_witnesses(n: &BigInt) -> Result<Vec<PrimeWitness>, ClassifyError> {
    if n.is_zero() {
        return Ok(Vec::new());
    }
    Ok(factorize_big(&n.abs())?
        .odd_exponent_primes_3_mod_4()
        .into_iter()
        .map(|(prime, exponent)| PrimeWitness { prime, exponent })
        .collect())
}

/// Algebraic concordance order of a knot with quadratic Alexander polynomial.
///
/// Infinite when `Δ(1)Δ(−1) > 0`. Otherwise slice when `Δ` is reducible
/// (square discriminant), order 4 when some prime `≡ 3 (mod 4)` divides
/// `|Δ(1)Δ(−1)|` to an odd power, and order 2 in the remaining case.
pub fn classify_quadratic(delta: &IntPolynomial) -> Result<AlgebraicOrder, ClassifyError> {
    let disc = delta
        .discriminant_quadratic()
        .ok_or_else(|| ClassifyError::NotQuadratic(delta.to_string()))?;
    let at_one = delta.eval(&BigInt::one());
    if at_one.abs() != BigInt::one() {
        return Err(ClassifyError::NotAKnotPolynomial(at_one));
    }
    let product = &at_one * delta.eval(&-BigInt::one());
    if product.is_positive() {
        return Ok(AlgebraicOrder::Infinite);
    }
    if product.is_zero() {
        return Ok(AlgebraicOrder::Indeterminate);
    }
    if !disc.is_negative() && is_perfect_square(&disc.to_biguint().expect("nonnegative")) {
        return Ok(AlgebraicOrder::Slice);
    }
    let witnesses = odd_exponent_witnesses(&product)?;
    Ok(if witnesses.is_empty() {
        AlgebraicOrder::Order2
    } else {
        AlgebraicOrder::Order4 { witnesses }
    })
}

/// Which case of the twisted-double classification applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwistedDoubleClause {
    /// `a = 0`: the unknot.
    Unknotted,
    /// `a < 0`: infinite algebraic order.
    NegativeTwist,
    /// `a > 0`, `4a + 1` a perfect square: algebraically slice.
    SquareDeterminant,
    /// `a > 0`, every prime `≡ 3 (mod 4)` has even exponent in `4a + 1`: order 2.
    EvenExponents,
    /// `a > 0`, some prime `≡ 3 (mod 4)` has odd exponent in `4a + 1`: order 4.
    OddExponent,
}

impl TwistedDoubleClause {
    pub fn describe(&self) -> &'static str {
        match self {
            TwistedDoubleClause::Unknotted => "a = 0: unknotted double, slice",
            TwistedDoubleClause::NegativeTwist => {
                "a < 0: infinite order in the algebraic concordance group"
            }
            TwistedDoubleClause::SquareDeterminant => {
                "a > 0 and 4a+1 a perfect square: algebraically slice"
            }
            TwistedDoubleClause::EvenExponents => {
                "a > 0, 4a+1 not a square, primes ≡ 3 mod 4 all with even exponent: order 2"
            }
            TwistedDoubleClause::OddExponent => {
                "a > 0 and a prime ≡ 3 mod 4 with odd exponent in 4a+1: order 4"
            }
        }
    }
}

/// Closed-form classification of the a-twisted double, without touching
/// its Alexander polynomial.
pub fn twisted_double_clause(
    a: &BigInt,
) -> Result<(TwistedDoubleClause, AlgebraicOrder), ClassifyError> {
    if a.is_zero() {
        return Ok((TwistedDoubleClause::Unknotted, AlgebraicOrder::Slice));
    }
    if a.is_negative() {
        return Ok((TwistedDoubleClause::NegativeTwist, AlgebraicOrder::Infinite));
    }
    let det: BigInt = BigInt::from(4) * a + 1;
    if is_perfect_square(&det.to_biguint().expect("positive")) {
        return Ok((
            TwistedDoubleClause::SquareDeterminant,
            AlgebraicOrder::Slice,
        ));
    }
    let witnesses = odd_exponent_witnesses(&det)?;
    if witnesses.is_empty() {
        Ok((TwistedDoubleClause::EvenExponents, AlgebraicOrder::Order2))
    } else {
        Ok((
            TwistedDoubleClause::OddExponent,
            AlgebraicOrder::Order4 { witnesses },
        ))
    }
}

/// `a t² − (2a+1) t + a`, the Alexander polynomial of the a-twisted double
/// before sign normalization.
pub fn twisted_double_polynomial(a: &BigInt) -> IntPolynomial {
    IntPolynomial::new(vec![
        a.clone(),
        -(BigInt::from(2) * a + BigInt::one()),
        a.clone(),
    ])
}

pub fn classify_twisted_double(a: &BigInt) -> Result<AlgebraicOrder, ClassifyError> {
    let (_, order) = twisted_double_clause(a)?;
    if !a.is_zero() {
        debug_assert_eq!(
            classify_quadratic(&twisted_double_polynomial(a)).ok(),
            Some(order.clone())
        );
    }
    Ok(order)
}

/// For a knot known to have unknotting number one: the smallest prime
/// `≡ 3 (mod 4)` with odd exponent in `Δ(−1)`.
pub fn unknotting_number_one_obstruction(
    delta_at_minus_one: &BigInt,
    unknotting_number_one: bool,
) -> Result<Option<PrimeWitness>, ClassifyError> {
    if !unknotting_number_one {
        return Ok(None);
    }
    if delta_at_minus_one.is_zero() {
        return Err(ClassifyError::InvalidInput(
            "Δ(−1) = 0 is not a knot determinant".into(),
        ));
    }
    Ok(odd_exponent_witnesses(delta_at_minus_one)?
        .into_iter()
        .next())
}

/// Two-bridge knot `K(p, q)`: the smallest prime `≡ 3 (mod 4)` with odd exponent in `p`.
pub fn two_bridge_obstruction(p: &BigInt) -> Result<Option<PrimeWitness>, ClassifyError> {
    if p < &BigInt::from(3) || (p % 2u32).is_zero() {
        return Err(ClassifyError::InvalidInput(format!(
            "p = {p} must be odd and at least 3"
        )));
    }
    Ok(odd_exponent_witnesses(p)?.into_iter().next())
}

fn gate_notes(h: &FiniteAbelianGroup) -> Result<Vec<String>, ClassifyError> {
    let mut notes = Vec::new();
    for c in h.primary_decomposition()? {
        if c.prime % 4 != 3 {
            continue;
        }
        let part = h.primary_part(c.prime);
        if !c.is_cyclic() {
            notes.push(format!(
                "p = {}: H_{} = {} is not cyclic",
                c.prime,
                c.prime,
                part.primary_string()
            ));
        } else if c.exponents[0] % 2 == 0 {
            notes.push(format!(
                "p = {}: H_{} = {} has even exponent",
                c.prime, c.prime, part
            ));
        }
    }
    Ok(notes)
}

const UNRESOLVED_NOTE: &str = "concordance order unresolved by this toolkit";

/// Runs every applicable obstruction on a Seifert matrix.
pub fn full_verdict(v: &SeifertMatrix) -> Result<ConcordanceVerdict, ClassifyError> {
    if v.matrix().is_empty() {
        return Ok(ConcordanceVerdict {
            status: ConcordanceStatus::Slice,
            algebraic_order: Some(AlgebraicOrder::Slice),
            obstructions: Vec::new(),
            gate_witnesses: Vec::new(),
            notes: vec!["empty Seifert matrix: the unknot".into()],
        });
    }
    let h = double_cover_homology(v);
    let delta = alexander_polynomial(v);
    let gate = cyclic_primary_gate(&h)?;
    let mut notes = Vec::new();
    let mut obstructions: Vec<Obstruction> = gate
        .iter()
        .map(|w| Obstruction {
            rule: Rule::CyclicPrimaryGate,
            witness: Some(*w),
            detail: format!(
                "H_{} = Z_{} is cyclic of odd exponent {}",
                w.prime,
                BigUint::from(w.prime).pow(w.exponent),
                w.exponent
            ),
        })
        .collect();
    if gate.is_empty() {
        notes.push("cyclic-primary gate not applicable".into());
        notes.extend(gate_notes(&h)?);
    }

    let algebraic_order = match delta.degree() {
        Some(0) if delta == IntPolynomial::one() => Some(AlgebraicOrder::Slice),
        Some(2) => match classify_quadratic(&delta) {
            Ok(order) => Some(order),
            Err(e) => {
                notes.push(format!("quadratic classification skipped: {e}"));
                None
            }
        },
        _ => {
            notes.push(format!(
                "algebraic order not computed for degree-{} Alexander polynomial",
                delta.degree().unwrap_or(0)
            ));
            None
        }
    };

    match &algebraic_order {
        Some(AlgebraicOrder::Infinite) => obstructions.push(Obstruction {
            rule: Rule::AlgebraicInfiniteOrder,
            witness: None,
            detail: "Δ(1)Δ(−1) > 0".into(),
        }),
        Some(AlgebraicOrder::Order4 { witnesses }) => {
            if let Some(n) = twisted_parameter(&delta) {
                for w in witnesses {
                    if h.primary_exponents(w.prime).len() == 1 {
                        obstructions.push(Obstruction {
                            rule: Rule::TwistedPolynomialCyclic,
                            witness: Some(*w),
                            detail: format!(
                                "Δ = {n}t^2 - {}t + {n} with H_{} cyclic",
                                BigInt::from(2) * &n + 1,
                                w.prime
                            ),
                        });
                    }
                }
            }
        }
        _ => {}
    }

    let status = if obstructions.is_empty() {
        ConcordanceStatus::Unresolved
    } else {
        ConcordanceStatus::InfiniteOrder
    };
    if status == ConcordanceStatus::Unresolved {
        notes.push(UNRESOLVED_NOTE.into());
    }
    Ok(ConcordanceVerdict {
        status,
        algebraic_order,
        obstructions,
        gate_witnesses: gate,
        notes,
    })
}

/// `Some(n)` when `Δ = n t² − (2n+1) t + n` with `n > 0`.
fn twisted_parameter(delta: &IntPolynomial) -> Option<BigInt> {
    let n = delta.coefficient(2);
    (n.is_positive()
        && delta.degree() == Some(2)
        && delta.coefficient(0) == n
        && delta.coefficient(1) == -(BigInt::from(2) * &n + BigInt::one()))
    .then_some(n)
}

/// Full verdict for the a-twisted double, including the order-four rule.
pub fn twisted_double_verdict(
    a: &BigInt,
) -> Result<(TwistedDoubleClause, ConcordanceVerdict), ClassifyError> {
    let (clause, order) = twisted_double_clause(a)?;
    let mut verdict = full_verdict(&twisted_double_seifert(a.clone()))?;
    if let AlgebraicOrder::Order4 { witnesses } = &order {
        let h = double_cover_homology(&twisted_double_seifert(a.clone()));
        debug_assert!(h.is_cyclic());
        for w in witnesses {
            verdict.obstructions.push(Obstruction {
                rule: Rule::TwistedDoubleOrderFour,
                witness: Some(*w),
                detail: format!(
                    "order 4 in the algebraic concordance group, cover homology {h} cyclic"
                ),
            });
        }
        verdict.status = ConcordanceStatus::InfiniteOrder;
        verdict.notes.retain(|n| n != UNRESOLVED_NOTE);
    }
    if a == &BigInt::from(2) {
        verdict.status = ConcordanceStatus::Slice;
        verdict.notes.retain(|n| n != UNRESOLVED_NOTE);
        verdict
            .notes
            .push("the 2-twisted double of the unknot is slice".into());
    }
    Ok((clause, verdict))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(c.iter().copied())
    }

    fn w(prime: u64, exponent: u32) -> PrimeWitness {
        PrimeWitness { prime, exponent }
    }

    fn group(orders: &[i64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_cyclic_orders(orders).unwrap()
    }

    #[test]
    fn gate_examples() {
        assert_eq!(cyclic_primary_gate(&group(&[3])).unwrap(), vec![w(3, 1)]);
        assert!(cyclic_primary_gate(&group(&[3, 9, 7, 49]))
            .unwrap()
            .is_empty());
        assert_eq!(
            cyclic_primary_gate(&group(&[21])).unwrap(),
            vec![w(3, 1), w(7, 1)]
        );
        assert!(cyclic_primary_gate(&group(&[5])).unwrap().is_empty());
        assert!(cyclic_primary_gate(&group(&[9])).unwrap().is_empty());
        assert_eq!(
            cyclic_primary_gate(&group(&[27, 5, 5])).unwrap(),
            vec![w(3, 3)]
        );
        assert!(cyclic_primary_gate(&FiniteAbelianGroup::trivial())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn quadratic_examples() {
        assert_eq!(
            classify_quadratic(&poly(&[5, -11, 5])).unwrap(),
            AlgebraicOrder::Order4 {
                witnesses: vec![w(3, 1), w(7, 1)]
            }
        );
        assert_eq!(
            classify_quadratic(&poly(&[2315, -4631, 2315])).unwrap(),
            AlgebraicOrder::Order4 {
                witnesses: vec![w(3, 3), w(7, 3)]
            }
        );
        assert_eq!(
            classify_quadratic(&poly(&[2, -5, 2])).unwrap(),
            AlgebraicOrder::Slice
        );
        assert_eq!(
            classify_quadratic(&poly(&[1, -3, 1])).unwrap(),
            AlgebraicOrder::Order2
        );
        assert_eq!(
            classify_quadratic(&poly(&[1, -1, 1])).unwrap(),
            AlgebraicOrder::Infinite
        );
    }

    #[test]
    fn quadratic_errors() {
        assert!(matches!(
            classify_quadratic(&poly(&[1, -1, 1, 1])),
            Err(ClassifyError::NotQuadratic(_))
        ));
        assert!(matches!(
            classify_quadratic(&poly(&[1])),
            Err(ClassifyError::NotQuadratic(_))
        ));
        assert!(matches!(
            classify_quadratic(&poly(&[3, -4, 3])),
            Err(ClassifyError::NotAKnotPolynomial(_))
        ));
    }

    #[test]
    fn twisted_double_examples() {
        let c = |a: i64| classify_twisted_double(&BigInt::from(a)).unwrap();
        assert_eq!(c(2), AlgebraicOrder::Slice);
        assert_eq!(c(-1), AlgebraicOrder::Infinite);
        assert_eq!(
            c(5),
            AlgebraicOrder::Order4 {
                witnesses: vec![w(3, 1), w(7, 1)]
            }
        );
        assert_eq!(c(1), AlgebraicOrder::Order2);
        assert_eq!(c(0), AlgebraicOrder::Slice);
    }

    #[test]
    fn twisted_double_agrees_with_quadratic() {
        for a in -20i64..=20 {
            if a == 0 {
                continue;
            }
            let a = BigInt::from(a);
            assert_eq!(
                classify_twisted_double(&a).unwrap(),
                classify_quadratic(&twisted_double_polynomial(&a)).unwrap(),
                "a = {a}"
            );
        }
    }

    #[test]
    fn gate_matches_two_bridge_rule_on_doubles() {
        for a in -20i64..=20 {
            let h = double_cover_homology(&twisted_double_seifert(a));
            let det = BigInt::from((4 * a + 1).abs());
            let gate_fires = !cyclic_primary_gate(&h).unwrap().is_empty();
            let rule_fires = if det >= BigInt::from(3) {
                two_bridge_obstruction(&det).unwrap().is_some()
            } else {
                false
            };
            assert_eq!(gate_fires, rule_fires, "a = {a}");
        }
    }

    #[test]
    fn unknotting_number_one_examples() {
        let f = |d: i64| unknotting_number_one_obstruction(&BigInt::from(d), true).unwrap();
        assert_eq!(f(21), Some(w(3, 1)));
        assert_eq!(f(9), None);
        assert_eq!(f(147), Some(w(3, 1)));
        assert_eq!(f(-21), Some(w(3, 1)));
        assert_eq!(
            unknotting_number_one_obstruction(&BigInt::from(21), false).unwrap(),
            None
        );
    }

    #[test]
    fn two_bridge_examples() {
        let f = |p: i64| two_bridge_obstruction(&BigInt::from(p)).unwrap();
        assert_eq!(f(3), Some(w(3, 1)));
        assert_eq!(f(9), None);
        assert_eq!(f(21), Some(w(3, 1)));
        assert!(two_bridge_obstruction(&BigInt::from(4)).is_err());
    }

    #[test]
    fn verdict_counterexample() {
        let v = SeifertMatrix::from_rows(vec![vec![21, 53], vec![52, 21]]).unwrap();
        let verdict = full_verdict(&v).unwrap();
        assert_eq!(verdict.status, ConcordanceStatus::Unresolved);
        assert!(verdict.gate_witnesses.is_empty());
        assert_eq!(
            verdict.algebraic_order,
            Some(AlgebraicOrder::Order4 {
                witnesses: vec![w(3, 3), w(7, 3)]
            })
        );
        assert!(verdict.notes.iter().any(|n| n.contains("not cyclic")));
        assert!(verdict.is_consistent());
    }

    #[test]
    fn verdict_twisted_five() {
        let verdict = full_verdict(&twisted_double_seifert(5)).unwrap();
        assert!(verdict.is_infinite_order());
        assert_eq!(verdict.gate_witnesses, vec![w(3, 1), w(7, 1)]);
        assert!(verdict.fired_rules().contains(&Rule::CyclicPrimaryGate));
        assert!(verdict
            .fired_rules()
            .contains(&Rule::TwistedPolynomialCyclic));
        assert!(verdict.is_consistent());
    }

    #[test]
    fn verdict_unknot() {
        let verdict = full_verdict(&SeifertMatrix::empty()).unwrap();
        assert_eq!(verdict.status, ConcordanceStatus::Slice);
        assert_eq!(verdict.algebraic_order, Some(AlgebraicOrder::Slice));
        assert!(verdict.is_consistent());
    }

    #[test]
    fn order_four_doubles_have_infinite_order() {
        for a in -20i64..=40 {
            let a = BigInt::from(a);
            let (clause, verdict) = twisted_double_verdict(&a).unwrap();
            if clause == TwistedDoubleClause::OddExponent {
                assert!(full_verdict(&twisted_double_seifert(a.clone()))
                    .unwrap()
                    .is_infinite_order());
                assert!(verdict
                    .fired_rules()
                    .contains(&Rule::TwistedDoubleOrderFour));
            }
            if a.is_negative() {
                assert!(verdict.is_infinite_order());
            }
            assert!(verdict.is_consistent(), "a = {a}");
        }
        let (_, two) = twisted_double_verdict(&BigInt::from(2)).unwrap();
        assert_eq!(two.status, ConcordanceStatus::Slice);
    }
}
