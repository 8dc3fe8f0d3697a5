use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::LabError;
use crate::number_theory::{checked_pow, is_prime, mul_mod};

/// Diagonal linking form `β(x, y) = Σ εᵢ xᵢ yᵢ / pⁿ` on `(Z_{pⁿ})^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimaryForm {
    p: u64,
    n: u32,
    modulus: u64,
    eps: Vec<u64>,
}

impl PrimaryForm {
    /// `eps` entries may be negative; each must be a unit mod `p`.
    pub fn new(p: u64, n: u32, eps: &[i64]) -> Result<Self, LabError> {
        if !is_prime(p) {
            return Err(LabError::InvalidForm(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(LabError::InvalidForm("exponent n must be positive".into()));
        }
        if eps.is_empty() {
            return Err(LabError::InvalidForm("rank d must be positive".into()));
        }
        let modulus = checked_pow(p, n)
            .ok()
            .filter(|m| *m < 1 << 62)
            .ok_or_else(|| LabError::InvalidForm(format!("{p}^{n} is too large")))?;
        let eps: Vec<u64> = eps
            .iter()
            .map(|&e| e.rem_euclid(modulus as i64) as u64)
            .collect();
        if let Some(e) = eps.iter().find(|&&e| e % p == 0) {
            return Err(LabError::InvalidForm(format!(
                "coefficient {e} is not a unit mod {p}"
            )));
        }
        Ok(Self { p, n, modulus, eps })
    }

    /// Coefficients `(1, −1, 1, −1, …)`.
    pub fn alternating(p: u64, n: u32, d: usize) -> Result<Self, LabError> {
        let eps: Vec<i64> = (0..d).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
        Self::new(p, n, &eps)
    }

    /// All coefficients 1.
    pub fn standard(p: u64, n: u32, d: usize) -> Result<Self, LabError> {
        Self::new(p, n, &vec![1; d])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> usize {
        self.eps.len()
    }

    /// `pⁿ`
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn eps(&self) -> &[u64] {
        &self.eps
    }

    /// Numerator of `β(x, y)` over `pⁿ`, in `[0, pⁿ)`.
    pub fn pair(&self, x: &[u64], y: &[u64]) -> u64 {
        debug_assert_eq!(x.len(), self.d());
        let m = self.modulus as u128;
        let mut acc: u128 = 0;
        for ((e, a), b) in self.eps.iter().zip(x).zip(y) {
            acc = (acc + mul_mod(mul_mod(*e, *a, self.modulus), *b, self.modulus) as u128) % m;
        }
        acc as u64
    }

    /// `|H| = p^{nd}`
    pub fn group_order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.n * self.d() as u32)
    }

    pub fn reduce(&self, x: &[i64]) -> Vec<u64> {
        x.iter()
            .map(|&v| v.rem_euclid(self.modulus as i64) as u64)
            .collect()
    }
}
