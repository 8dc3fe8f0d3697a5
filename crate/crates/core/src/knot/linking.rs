use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::KnotError;
use crate::algebra::{smith_normal_form, FiniteAbelianGroup, IntMatrix};
use crate::serde_util;

/// Reduces a rational into `[0, 1)`.
pub fn mod_one(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Symmetric `Q/Z`-valued pairing given by its Gram matrix on the canonical
/// generators of the carrier group. Entries are kept in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingForm {
    carrier: FiniteAbelianGroup,
    #[serde(with = "serde_util::rational_matrix")]
    gram: Vec<Vec<BigRational>>,
}

/// A homomorphism `H → Z_m` presented by its values on the generators of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    #[serde(with = "serde_util::bigint")]
    pub modulus: BigInt,
    #[serde(with = "serde_util::bigint_vec")]
    pub values: Vec<BigInt>,
    /// `β(x, x) mod 1` for the element `x` the character links with.
    #[serde(with = "serde_util::rational")]
    pub self_linking: BigRational,
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.modulus.is_one()
    }

    /// Each generator's order must annihilate its value.
    pub fn is_well_defined(&self, carrier: &FiniteAbelianGroup) -> bool {
        self.values.len() == carrier.rank()
            && self
                .values
                .iter()
                .zip(carrier.invariant_factors())
                .all(|(v, d)| (v * d).is_multiple_of(&self.modulus))
    }

    pub fn evaluate(&self, y: &[BigInt]) -> BigInt {
        self.values
            .iter()
            .zip(y)
            .map(|(v, x)| v * x)
            .sum::<BigInt>()
            .mod_floor(&self.modulus)
    }
}

impl LinkingForm {
    /// Checks shape, symmetry and that `gcd(dᵢ, dⱼ)·gᵢⱼ ∈ Z`; entries are reduced mod 1.
    pub fn new(
        carrier: FiniteAbelianGroup,
        gram: Vec<Vec<BigRational>>,
    ) -> Result<Self, KnotError> {
        let r = carrier.rank();
        if gram.len() != r || gram.iter().any(|row| row.len() != r) {
            return Err(KnotError::InvalidLinkingForm(format!(
                "Gram matrix must be {r}x{r}"
            )));
        }
        let gram: Vec<Vec<BigRational>> = gram
            .iter()
            .map(|row| row.iter().map(mod_one).collect())
            .collect();
        let d = carrier.invariant_factors();
        for i in 0..r {
            for j in 0..r {
                if gram[i][j] != gram[j][i] {
                    return Err(KnotError::InvalidLinkingForm(format!(
                        "not symmetric at ({i}, {j})"
                    )));
                }
                let scaled = &gram[i][j] * BigRational::from_integer(d[i].gcd(&d[j]));
                if !scaled.is_integer() {
                    return Err(KnotError::InvalidLinkingForm(format!(
                        "entry ({i}, {j}) = {} is not annihilated by the generator orders",
                        gram[i][j]
                    )));
                }
            }
        }
        Ok(Self { carrier, gram })
    }

    pub fn carrier(&self) -> &FiniteAbelianGroup {
        &self.carrier
    }

    pub fn gram(&self) -> &[Vec<BigRational>] {
        &self.gram
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc += &self.gram[i][j] * BigRational::from_integer(xi * yj);
            }
        }
        mod_one(&acc)
    }

    pub fn self_linking(&self, x: &[BigInt]) -> BigRational {
        self.pair(x, x)
    }

    pub fn is_symmetric(&self) -> bool {
        let r = self.gram.len();
        (0..r).all(|i| (0..r).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    /// Whether `x ↦ β(x, ·)` is a bijection `H → Hom(H, Q/Z)`.
    ///
    /// The image of generator `i` in `⊕ Z_{dⱼ}` is `(dⱼ gᵢⱼ)ⱼ`; together with
    /// the relations `dⱼ eⱼ` these must span `Zʳ`, which holds iff every
    /// Smith invariant of the combined `r × 2r` matrix is 1.
    pub fn is_nonsingular(&self) -> bool {
        let d = self.carrier.invariant_factors();
        let r = d.len();
        if r == 0 {
            return true;
        }
        let mut m = IntMatrix::zeros(r, 2 * r);
        for i in 0..r {
            for j in 0..r {
                let v = &self.gram[i][j] * BigRational::from_integer(d[j].clone());
                m.set(j, i, v.to_integer());
            }
            m.set(i, r + i, d[i].clone());
        }
        smith_normal_form(&m).diagonal().iter().all(One::is_one)
    }

    /// The character `y ↦ β(x, y)`, valued in `Z_m` with `m` the order of `x`.
    pub fn character_of(&self, x: &[BigInt]) -> Result<Character, KnotError> {
        if x.len() != self.carrier.rank() {
            return Err(KnotError::NotInCarrier {
                expected: self.carrier.rank(),
                found: x.len(),
            });
        }
        let x = self.carrier.reduce(x);
        let modulus = self.carrier.element_order(&x);
        let m = BigRational::from_integer(modulus.clone());
        let values = (0..self.carrier.rank())
            .map(|j| {
                let mut e = vec![BigInt::zero(); self.carrier.rank()];
                e[j] = BigInt::one();
                let v = &self.pair(&x, &e) * &m;
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        Ok(Character {
            modulus,
            values,
            self_linking: self.self_linking(&x),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn z(n: i64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_cyclic_orders(&[n]).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rejects_ill_defined_entries() {
        assert!(LinkingForm::new(z(3), vec![vec![q(1, 2)]]).is_err());
        assert!(LinkingForm::new(z(3), vec![vec![q(1, 3), q(0, 1)]]).is_err());
        let g = FiniteAbelianGroup::from_cyclic_orders(&[3, 3]).unwrap();
        assert!(LinkingForm::new(g, vec![vec![q(1, 3), q(1, 3)], vec![q(2, 3), q(1, 3)]]).is_err());
    }

    #[test]
    fn reduces_mod_one() {
        let form = LinkingForm::new(z(3), vec![vec![q(-1, 3)]]).unwrap();
        assert_eq!(form.gram()[0][0], q(2, 3));
    }

    #[test]
    fn singular_form_detected() {
        let g = FiniteAbelianGroup::from_cyclic_orders(&[3, 3]).unwrap();
        let form =
            LinkingForm::new(g, vec![vec![q(1, 3), q(1, 3)], vec![q(1, 3), q(1, 3)]]).unwrap();
        assert!(!form.is_nonsingular());
        let g = FiniteAbelianGroup::from_cyclic_orders(&[3, 3]).unwrap();
        let form =
            LinkingForm::new(g, vec![vec![q(1, 3), q(0, 1)], vec![q(0, 1), q(2, 3)]]).unwrap();
        assert!(form.is_nonsingular());
        let form = LinkingForm::new(z(9), vec![vec![q(3, 9)]]).unwrap();
        assert!(!form.is_nonsingular());
    }

    #[test]
    fn characters() {
        let form = LinkingForm::new(z(3), vec![vec![q(2, 3)]]).unwrap();
        let trivial = form.character_of(&ints(&[0])).unwrap();
        assert!(trivial.is_trivial());
        let chi = form.character_of(&ints(&[1])).unwrap();
        assert_eq!(chi.modulus, BigInt::from(3));
        assert_eq!(chi.values, ints(&[2]));
        assert_eq!(chi.self_linking, q(2, 3));
        let neg = form.character_of(&ints(&[-1])).unwrap();
        assert_eq!(neg.self_linking, chi.self_linking);
        assert!(chi.is_well_defined(form.carrier()));

        let form = LinkingForm::new(z(9), vec![vec![q(1, 9)]]).unwrap();
        let chi = form.character_of(&ints(&[3])).unwrap();
        assert_eq!(chi.modulus, BigInt::from(3));
        assert_eq!(chi.values, ints(&[1]));
        assert_eq!(chi.evaluate(&ints(&[2])), BigInt::from(2));
        assert!(form.character_of(&ints(&[1, 1])).is_err());
    }
}
