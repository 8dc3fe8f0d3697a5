use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{KnotError, LinkingForm};
use crate::algebra::{cokernel_with_basis, FiniteAbelianGroup, IntMatrix, IntPolynomial};

/// Square integer matrix of even size whose skew part `V − Vᵀ` has determinant 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    v: IntMatrix,
}

impl SeifertMatrix {
    pub fn new(v: IntMatrix) -> Result<Self, KnotError> {
        if !v.is_square() {
            return Err(KnotError::NotSquare {
                rows: v.rows(),
                cols: v.cols(),
            });
        }
        if v.rows() % 2 == 1 {
            return Err(KnotError::OddSize(v.rows()));
        }
        let skew = &v - &v.transpose();
        let det = skew.determinant()?;
        if !det.is_one() {
            return Err(KnotError::SkewNotUnimodular { det });
        }
        Ok(Self { v })
    }

    pub fn from_rows<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Result<Self, KnotError> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    /// The unknot's empty Seifert matrix.
    pub fn empty() -> Self {
        Self {
            v: IntMatrix::zeros(0, 0),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.v
    }

    pub fn genus(&self) -> usize {
        self.v.rows() / 2
    }

    /// `V + Vᵀ`, which presents the homology of the double branched cover.
    pub fn symmetrized(&self) -> IntMatrix {
        &self.v + &self.v.transpose()
    }
}

impl Serialize for SeifertMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .v
            .to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeifertMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed: Result<Vec<Vec<BigInt>>, _> = rows
            .iter()
            .map(|r| r.iter().map(|x| x.parse::<BigInt>()).collect())
            .collect();
        let parsed = parsed.map_err(D::Error::custom)?;
        SeifertMatrix::from_rows(parsed).map_err(D::Error::custom)
    }
}

/// `det(V − tVᵀ)` with powers of `t` stripped and a positive leading coefficient.
///
/// The determinant is sampled at `2g + 1` integer points and interpolated
/// exactly over the rationals.
pub fn alexander_polynomial(v: &SeifertMatrix) -> IntPolynomial {
    let m = v.matrix();
    let vt = m.transpose();
    let nodes: Vec<BigInt> = (0..=m.rows() as i64).map(BigInt::from).collect();
    let values: Vec<BigInt> = nodes
        .iter()
        .map(|x| {
            let scaled = IntMatrix::new(
                vt.rows(),
                vt.cols(),
                vt.entries().iter().map(|e| e * x).collect(),
            )
            .expect("same shape");
            (m - &scaled).determinant().expect("square")
        })
        .collect();
    interpolate(&nodes, &values)
        .strip_t_power()
        .with_positive_leading()
}

/// Newton interpolation through `(nodes[i], values[i])`; the result must have
/// integer coefficients.
fn interpolate(nodes: &[BigInt], values: &[BigInt]) -> IntPolynomial {
    let n = nodes.len();
    let mut dd: Vec<BigRational> = values
        .iter()
        .cloned()
        .map(BigRational::from_integer)
        .collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let denom = BigRational::from_integer(&nodes[i] - &nodes[i - level]);
            dd[i] = (&dd[i] - &dd[i - 1]) / denom;
        }
    }
    let mut coeffs = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()];
    for (k, c) in dd.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            coeffs[j] += c * b;
        }
        // basis *= (t − nodes[k])
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (j, b) in basis.iter().enumerate() {
            next[j + 1] += b;
            next[j] -= b * BigRational::from_integer(nodes[k].clone());
        }
        basis = next;
    }
    IntPolynomial::new(
        coeffs
            .into_iter()
            .map(|c| {
                assert!(
                    c.is_integer(),
                    "determinant polynomial has integer coefficients"
                );
                c.to_integer()
            })
            .collect(),
    )
}

/// Seifert matrix `[[a, 1], [0, −1]]` of the a-twisted double.
pub fn twisted_double_seifert(a: impl Into<BigInt>) -> SeifertMatrix {
    let v = IntMatrix::from_rows(vec![
        vec![a.into(), BigInt::one()],
        vec![BigInt::zero(), -BigInt::one()],
    ])
    .expect("2x2");
    SeifertMatrix { v }
}

/// First homology of the double branched cover, the cokernel of `V + Vᵀ`.
pub fn double_cover_homology(v: &SeifertMatrix) -> FiniteAbelianGroup {
    cokernel_with_basis(&v.symmetrized())
        .map(|(g, _)| g)
        .expect("V + Vᵀ is nonsingular for a Seifert matrix: det = ±Δ(−1) is odd")
}

/// Linking form `−(V + Vᵀ)⁻¹` on the Smith generators of the cover homology.
///
/// With `U·A·W = D` the generator of the `i`-th nontrivial summand is the
/// class of `wᵢ / dᵢ` in `A⁻¹Zⁿ / Zⁿ`, where `wᵢ` is the `i`-th column of
/// `W`, and the pairing is `β(u, v) = −uᵀ A v mod 1`.
pub fn linking_form(v: &SeifertMatrix) -> LinkingForm {
    let a = v.symmetrized();
    let (group, snf) = cokernel_with_basis(&a).expect("V + Vᵀ is nonsingular");
    let diag = snf.diagonal();
    let gens: Vec<(Vec<BigInt>, BigInt)> = diag
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_one())
        .map(|(i, d)| (snf.w.column(i), d.clone()))
        .collect();
    let gram: Vec<Vec<BigRational>> = gens
        .iter()
        .map(|(wi, di)| {
            gens.iter()
                .map(|(wj, dj)| {
                    let aw: BigInt = wi.iter().zip(a.mul_vec(wj)).map(|(x, y)| x * y).sum();
                    BigRational::new(-aw, di * dj)
                })
                .collect()
        })
        .collect();
    LinkingForm::new(group, gram).expect("symmetric, well-defined by construction")
}
