use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{LabError, MetabolizerNormalForm, PrimaryForm};
use crate::algebra::{smith_normal_form, FiniteAbelianGroup, IntMatrix};

/// Outcome of the structural checks on one metabolizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub metabolizer_id: String,
    pub profile: Vec<usize>,
    /// `|L|² = |H|`
    pub order_squared_matches: bool,
    /// `β` vanishes on every pair of generators, each with itself included.
    pub isotropic: bool,
    pub subgroup: FiniteAbelianGroup,
    pub quotient: FiniteAbelianGroup,
    /// `H/L ≅ L`
    pub quotient_isomorphic: bool,
    /// `k_i = k_{n−i}` for `1 ≤ i ≤ n − 1`, with `k_n = d − Σ k_i`.
    pub profile_symmetric: bool,
    /// `Σ k_i = d − k_0`
    pub row_count_matches: bool,
    /// `S_{(n−1)/2} = d/2`, checked when `n` is odd and `4 | d`.
    pub middle_sum_matches: Option<bool>,
    pub staircase: bool,
}

impl StructureReport {
    pub fn passes(&self) -> bool {
        self.order_squared_matches
            && self.isotropic
            && self.quotient_isomorphic
            && self.profile_symmetric
            && self.row_count_matches
            && self.middle_sum_matches != Some(false)
            && self.staircase
    }
}

fn check_compatible(l: &MetabolizerNormalForm, form: &PrimaryForm) -> Result<(), LabError> {
    if (l.p(), l.n(), l.d()) != (form.p(), form.n(), form.d()) {
        return Err(LabError::InvalidSubgroup(format!(
            "subgroup lives in (Z_{}^{})^{}, form on (Z_{}^{})^{}",
            l.p(),
            l.n(),
            l.d(),
            form.p(),
            form.n(),
            form.d()
        )));
    }
    Ok(())
}

/// Whether every generator pair pairs to zero.
pub fn is_isotropic(l: &MetabolizerNormalForm, form: &PrimaryForm) -> bool {
    let rows = l.rows();
    (0..rows.len()).all(|i| (i..rows.len()).all(|j| form.pair(&rows[i], &rows[j]) == 0))
}

/// Fails with `NotAMetabolizer` unless `|L|² = |H|` and `β(L, L) = 0`.
pub fn require_metabolizer(l: &MetabolizerNormalForm, form: &PrimaryForm) -> Result<(), LabError> {
    check_compatible(l, form)?;
    let expected = form.n() as u64 * form.d() as u64;
    if 2 * l.order_exponent() != expected {
        return Err(LabError::NotAMetabolizer(format!(
            "|L| = {}^{} but |H| = {}^{}",
            l.p(),
            l.order_exponent(),
            l.p(),
            expected
        )));
    }
    if !is_isotropic(l, form) {
        return Err(LabError::NotAMetabolizer(
            "linking form does not vanish on L".into(),
        ));
    }
    Ok(())
}

/// Invariant factors of `H/L`, from the Smith form of the rows of `L`
/// stacked on `pⁿ I`.
pub fn quotient_group(l: &MetabolizerNormalForm) -> FiniteAbelianGroup {
    let d = l.d();
    let m = BigInt::from(l.modulus());
    let mut rows: Vec<Vec<BigInt>> = l
        .rows()
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    for i in 0..d {
        let mut e = vec![BigInt::from(0); d];
        e[i] = m.clone();
        rows.push(e);
    }
    let pres = IntMatrix::from_rows(rows).expect("rectangular");
    let factors: Vec<BigInt> = smith_normal_form(&pres)
        .diagonal()
        .into_iter()
        .filter(|x| !x.is_one())
        .collect();
    FiniteAbelianGroup::from_invariant_factors(factors).expect("Smith diagonal is a divisor chain")
}

/// `L ≅ ⊕ Z_{p^{n−i}}` with one summand per row of level `i`.
pub fn subgroup_group(l: &MetabolizerNormalForm) -> FiniteAbelianGroup {
    let orders: Vec<BigInt> = l
        .levels()
        .iter()
        .map(|&i| BigInt::from(l.p()).pow(l.n() - i))
        .collect();
    FiniteAbelianGroup::from_cyclic_orders(&orders).expect("positive orders")
}

pub fn verify_structure(
    l: &MetabolizerNormalForm,
    form: &PrimaryForm,
) -> Result<StructureReport, LabError> {
    require_metabolizer(l, form)?;
    let (n, d) = (l.n() as usize, l.d());
    let k = l.profile();
    let top = d - k.iter().sum::<usize>();
    let at = |i: usize| if i == n { top } else { k[i] };
    let subgroup = subgroup_group(l);
    let quotient = quotient_group(l);
    let order_sq = BigUint::from(l.p()).pow(2 * l.order_exponent() as u32);
    let middle_sum_matches =
        (n % 2 == 1 && d % 4 == 0).then(|| l.partial_sums()[(n - 1) / 2] == d / 2);
    Ok(StructureReport {
        metabolizer_id: l.id(),
        profile: k.clone(),
        order_squared_matches: order_sq == form.group_order(),
        isotropic: is_isotropic(l, form),
        quotient_isomorphic: quotient == subgroup,
        subgroup,
        quotient,
        profile_symmetric: (1..n).all(|i| at(i) == at(n - i)),
        row_count_matches: k.iter().sum::<usize>() == d - k[0],
        middle_sum_matches,
        staircase: l.is_canonical(),
    })
}
