use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{poly_resultant, IntPolynomial};
use crate::serde_util;

/// Element `Σ cⱼ tʲ` of the integral group ring of the cyclic group of order `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupRingElement {
    q: usize,
    #[serde(with = "serde_util::bigint_vec")]
    coeffs: Vec<BigInt>,
}

impl GroupRingElement {
    /// Coefficient `i` of `coeffs` lands on `t^{i mod q}`.
    pub fn new(q: usize, coeffs: Vec<BigInt>) -> Self {
        assert!(q > 0, "group order must be positive");
        let mut folded = vec![BigInt::zero(); q];
        for (i, c) in coeffs.into_iter().enumerate() {
            folded[i % q] += c;
        }
        Self { q, coeffs: folded }
    }

    pub fn zero(q: usize) -> Self {
        Self::new(q, Vec::new())
    }

    pub fn monomial(q: usize, exponent: u64) -> Self {
        let mut g = Self::zero(q);
        g.coeffs[(exponent % q as u64) as usize] = BigInt::one();
        g
    }

    /// `constant + Σ t^{αᵢ}` with exponents reduced mod `q`.
    pub fn from_exponents(q: usize, constant: impl Into<BigInt>, exponents: &[u64]) -> Self {
        let mut g = Self::zero(q);
        g.coeffs[0] += constant.into();
        for &a in exponents {
            g.coeffs[(a % q as u64) as usize] += 1;
        }
        g
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Sum of coefficients, the image under `t ↦ 1`.
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiplication by `t^α`.
    pub fn shift(&self, alpha: u64) -> Self {
        let a = (alpha % self.q as u64) as usize;
        let mut out = vec![BigInt::zero(); self.q];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[(j + a) % self.q] = c.clone();
        }
        Self {
            q: self.q,
            coeffs: out,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.q, other.q, "group orders differ");
        let mut out = vec![BigInt::zero(); self.q];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[(i + j) % self.q] += a * b;
            }
        }
        Self {
            q: self.q,
            coeffs: out,
        }
    }

    /// Representative polynomial of degree below `q`.
    pub fn to_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.clone())
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{j}")?,
                (_, false) => write!(f, "{mag}t^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `Res(f, t^q − 1)`, a nonzero integer in the ideal generated by `f` exactly
/// when `f` vanishes at no `q`-th root of unity. `None` signals failure.
pub fn coprime_certificate(f: &GroupRingElement) -> Option<BigInt> {
    if f.is_zero() {
        return None;
    }
    let r = poly_resultant(&f.to_polynomial(), &IntPolynomial::cyclic_modulus(f.q()))
        .expect("both polynomials are nonzero");
    (!r.is_zero()).then_some(r)
}
