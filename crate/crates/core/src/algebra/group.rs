use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, AlgebraError, IntMatrix};
use crate::number_theory::{factorize_big, NumberTheoryError};
use crate::serde_util;

/// Finite abelian group `Z_{d_1} ⊕ … ⊕ Z_{d_r}` with `2 ≤ d_1 | d_2 | … | d_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    #[serde(with = "serde_util::bigint_vec")]
    invariant_factors: Vec<BigInt>,
}

/// The cyclic p-power orders making up one p-primary summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimaryComponent {
    pub prime: u64,
    /// Exponents `e` of the summands `Z_{p^e}`, ascending.
    pub exponents: Vec<u32>,
}

impl PrimaryComponent {
    pub fn is_cyclic(&self) -> bool {
        self.exponents.len() == 1
    }
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Validates a divisibility chain of factors; entries equal to 1 are dropped.
    pub fn from_invariant_factors(factors: Vec<BigInt>) -> Result<Self, AlgebraError> {
        let factors: Vec<BigInt> = factors.into_iter().filter(|d| !d.is_one()).collect();
        for (k, d) in factors.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(AlgebraError::InvalidInvariantFactors(format!(
                    "factor {d} is not ≥ 2"
                )));
            }
            if let Some(next) = factors.get(k + 1) {
                if !next.is_multiple_of(d) {
                    return Err(AlgebraError::InvalidInvariantFactors(format!(
                        "{d} does not divide {next}"
                    )));
                }
            }
        }
        Ok(Self {
            invariant_factors: factors,
        })
    }

    /// Canonical form of an arbitrary direct sum of cyclic groups.
    pub fn from_cyclic_orders<T: Into<BigInt> + Clone>(orders: &[T]) -> Result<Self, AlgebraError> {
        let diag: Vec<BigInt> = orders.iter().cloned().map(Into::into).collect();
        if diag.iter().any(|d| !d.is_positive()) {
            return Err(AlgebraError::InvalidInvariantFactors(
                "cyclic orders must be positive".into(),
            ));
        }
        let n = diag.len();
        cokernel(&IntMatrix::diagonal_matrix(n, n, &diag))
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// Exponents of the `Z_{p^e}` summands of the p-primary part, ascending.
    pub fn primary_exponents(&self, p: u64) -> Vec<u32> {
        let p = BigInt::from(p);
        self.invariant_factors
            .iter()
            .map(|d| {
                let mut v = 0;
                let mut x = d.clone();
                while x.is_multiple_of(&p) {
                    x /= &p;
                    v += 1;
                }
                v
            })
            .filter(|&v| v > 0)
            .collect()
    }

    /// The p-primary summand `H_p`.
    pub fn primary_part(&self, p: u64) -> FiniteAbelianGroup {
        let base = BigInt::from(p);
        FiniteAbelianGroup {
            invariant_factors: self
                .primary_exponents(p)
                .into_iter()
                .map(|e| base.pow(e))
                .collect(),
        }
    }

    pub fn primary_decomposition(&self) -> Result<Vec<PrimaryComponent>, NumberTheoryError> {
        let Some(top) = self.invariant_factors.last() else {
            return Ok(Vec::new());
        };
        // every prime divides the largest invariant factor
        let primes = factorize_big(top)?;
        Ok(primes
            .primes()
            .map(|p| PrimaryComponent {
                prime: p,
                exponents: self.primary_exponents(p),
            })
            .collect())
    }

    /// Direct sum, re-canonicalized.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let all: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned()
            .collect();
        if all.is_empty() {
            return Self::trivial();
        }
        Self::from_cyclic_orders(&all).expect("invariant factors are positive")
    }

    /// Reduces a coefficient vector on the canonical generators.
    pub fn reduce(&self, element: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(
            element.len(),
            self.rank(),
            "element has wrong number of coordinates"
        );
        element
            .iter()
            .zip(&self.invariant_factors)
            .map(|(x, d)| x.mod_floor(d))
            .collect()
    }

    /// Order of an element given on the canonical generators.
    pub fn element_order(&self, element: &[BigInt]) -> BigInt {
        self.reduce(element)
            .iter()
            .zip(&self.invariant_factors)
            .fold(BigInt::one(), |acc, (x, d)| {
                let ord = if x.is_zero() {
                    BigInt::one()
                } else {
                    d / x.gcd(d)
                };
                acc.lcm(&ord)
            })
    }

    /// `Z_3 ⊕ Z_9 ⊕ Z_7 ⊕ Z_49` style rendering of the primary decomposition.
    pub fn primary_string(&self) -> String {
        match self.primary_decomposition() {
            Ok(parts) if !parts.is_empty() => parts
                .iter()
                .flat_map(|c| {
                    c.exponents
                        .iter()
                        .map(move |&e| format!("Z_{}", BigInt::from(c.prime).pow(e)))
                })
                .collect::<Vec<_>>()
                .join(" ⊕ "),
            Ok(_) => "0".into(),
            Err(_) => self.to_string(),
        }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z_{d}"))
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Cokernel `Z^n / M Z^n` of a nonsingular square matrix.
pub fn cokernel(m: &IntMatrix) -> Result<FiniteAbelianGroup, AlgebraError> {
    Ok(cokernel_with_basis(m)?.0)
}

/// Cokernel together with the Smith decomposition that produced it.
pub(crate) fn cokernel_with_basis(
    m: &IntMatrix,
) -> Result<(FiniteAbelianGroup, super::SnfResult), AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    if diag.iter().any(Zero::is_zero) {
        return Err(AlgebraError::SingularPresentation);
    }
    let group = FiniteAbelianGroup {
        invariant_factors: diag.into_iter().filter(|d| !d.is_one()).collect(),
    };
    Ok((group, snf))
}
