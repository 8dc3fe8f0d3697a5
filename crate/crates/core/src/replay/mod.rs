//! Replays the level-by-level argument that no metabolizer of `(Z_{pⁿ})^{4k}`
//! is compatible with nonvanishing Casson–Gordon invariants, for `n` odd and
//! `p ≡ 3 mod 4`.
//!
//! Casson–Gordon values are formal symbols `σ(χ_x)`. A vector `x ∈ L` yields
//! the relation `Σ σ(χ_{xᵢ}) = 0`; symbols of characters of the same order
//! are indexed by the discrete log of their unit part, which turns the
//! relation into an element `f` of `Z[Z_q]`. A nonzero resultant of `f` with
//! `t^q − 1` is an integer `N` in the ideal of `f`, so `N σ = 0` for every
//! symbol of that level.

mod group_ring;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metabolizer::{require_metabolizer, LabError, MetabolizerNormalForm, PrimaryForm};
use crate::number_theory::{
    discrete_log, mul_mod, primitive_root, unit_group_order, valuation, NumberTheoryError,
};
use crate::serde_util;

pub use group_ring::{coprime_certificate, GroupRingElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("entry of valuation {valuation} at level {level} depends on a class not yet resolved")]
    UnresolvedDependency { level: u32, valuation: u32 },
    #[error("vector entry {entry} has valuation below level {level}")]
    InvalidVector { level: u32, entry: u64 },
    #[error("group ring order q = {q} at level {level} is even")]
    EvenGroupRingOrder { level: u32, q: u64 },
    #[error("relation {relation} at level {level} shares a root with t^q - 1")]
    ReplayFailure {
        level: u32,
        relation: GroupRingElement,
    },
    #[error(transparent)]
    Lab(#[from] LabError),
    #[error(transparent)]
    NumberTheory(#[from] NumberTheoryError),
}

/// One step of the induction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub level: u32,
    /// `S_l`, the number of leading entries equal to `p^l`.
    pub partial_sum: usize,
    pub vector: Vec<u64>,
    pub q: u64,
    pub generator: u64,
    pub relation: GroupRingElement,
    /// `N = Res(f, t^q − 1)`, with `N σ(χ_{a p^l}) = 0` for every unit `a`.
    #[serde(with = "serde_util::bigint")]
    pub integer_witness: BigInt,
    /// Valuations whose symbols were already known to vanish.
    pub resolved_before: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub p: u64,
    pub n: u32,
    pub k: usize,
    pub metabolizer_id: String,
    pub levels: Vec<LevelRecord>,
    pub final_level: u32,
    /// The character `χ_{p^{final_level}}` maps onto `Z_{p^e}` with this `e`.
    pub character_order_exponent: u32,
    pub conclusion: String,
}

impl Certificate {
    /// Every witness nonzero, levels `n−1` down to `(n−1)/2` present in order,
    /// and the final character of order exceeding `p^{n/2}`.
    pub fn is_valid(&self) -> bool {
        let expected: Vec<u32> = ((self.n - 1) / 2..self.n).rev().collect();
        let got: Vec<u32> = self.levels.iter().map(|r| r.level).collect();
        got == expected
            && self
                .levels
                .iter()
                .all(|r| r.integer_witness != BigInt::from(0) && r.q % 2 == 1)
            && self.final_level == (self.n - 1) / 2
            && self.character_order_exponent == self.n - self.final_level
            && 2 * self.character_order_exponent > self.n
    }
}

/// Vector of `L` whose first `S_l` staircase entries are `p^l` and whose
/// other entries are divisible by `p^l`.
///
/// Rows of level `i ≤ l` are scaled by `p^{l−i}`, the entries they then have
/// at pivots of levels in `(i, l]` are cleared with those pivots' rows, and
/// everything is summed.
pub fn level_vector(l: &MetabolizerNormalForm, level: u32) -> Result<Vec<u64>, ReplayError> {
    if level >= l.n() {
        return Err(ReplayError::Precondition(format!(
            "level {level} must be below n = {}",
            l.n()
        )));
    }
    let (p, m) = (l.p(), l.modulus());
    let pl = p.pow(level);
    let idx: Vec<usize> = (0..l.rows().len())
        .filter(|&r| l.levels()[r] <= level)
        .collect();
    let scaled: Vec<Vec<u64>> = idx
        .iter()
        .map(|&r| {
            let f = p.pow(level - l.levels()[r]);
            l.rows()[r].iter().map(|&v| mul_mod(v, f, m)).collect()
        })
        .collect();
    let mut cleared = scaled.clone();
    for (a, row) in cleared.iter_mut().enumerate() {
        let la = l.levels()[idx[a]];
        // rows are sorted by level, so clearing in this order never refills a pivot
        for (b, &r) in idx.iter().enumerate() {
            if l.levels()[r] <= la {
                continue;
            }
            let u = row[l.pivots()[r]] / pl;
            for (x, s) in row.iter_mut().zip(&scaled[b]) {
                *x = (*x + m - mul_mod(u, *s, m)) % m;
            }
        }
    }
    let mut v = vec![0u64; l.d()];
    for row in &cleared {
        for (x, r) in v.iter_mut().zip(row) {
            *x = (*x + r) % m;
        }
    }
    Ok(v)
}

/// `q_l = |(Z_{p^{n−l}})^×| / 2`, the size of the group indexing symbols of level `l`.
pub fn group_ring_order(p: u64, n: u32, level: u32) -> Result<u64, ReplayError> {
    Ok(unit_group_order(p, n - level)? / 2)
}

/// Relation `f = S + Σ t^{αᵢ}` imposed on level-`l` symbols by a vector of `L`.
///
/// An entry `c·p^l` with `c` a unit contributes `t^{α}` where `g^α ≡ c`
/// mod `p^{n−l}`, read mod `q_l`; since `g^{q_l} ≡ −1` this identifies the
/// symbols of `c` and `−c`. Entries of higher valuation are skipped and must
/// belong to an already resolved valuation.
pub fn relation_of(
    vector: &[u64],
    level: u32,
    p: u64,
    n: u32,
    g: u64,
    resolved: &BTreeSet<u32>,
) -> Result<GroupRingElement, ReplayError> {
    if level >= n {
        return Err(ReplayError::Precondition(format!(
            "level {level} must be below n = {n}"
        )));
    }
    let q = group_ring_order(p, n, level)?;
    let pl = p.pow(level);
    let m = p.pow(n);
    let mut exponents = Vec::new();
    for &x in vector
        .iter()
        .map(|x| x % m)
        .filter(|&x| x != 0)
        .collect::<Vec<_>>()
        .iter()
    {
        let v = valuation(x, p);
        if v < level {
            return Err(ReplayError::InvalidVector { level, entry: x });
        }
        if v > level {
            if !resolved.contains(&v) {
                return Err(ReplayError::UnresolvedDependency {
                    level,
                    valuation: v,
                });
            }
            continue;
        }
        exponents.push(discrete_log(g, x / pl, p, n - level)? % q);
    }
    Ok(GroupRingElement::from_exponents(q as usize, 0, &exponents))
}

/// Certificate that `L` forces a vanishing Casson–Gordon symbol on a
/// character onto `Z_{p^{(n+1)/2}}`.
pub fn replay(form: &PrimaryForm, l: &MetabolizerNormalForm) -> Result<Certificate, ReplayError> {
    let (p, n, d) = (form.p(), form.n(), form.d());
    if n % 2 == 0 {
        return Err(ReplayError::Precondition(format!("n = {n} must be odd")));
    }
    if p % 4 != 3 {
        return Err(ReplayError::Precondition(format!(
            "p = {p} must be 3 mod 4"
        )));
    }
    if d % 4 != 0 {
        return Err(ReplayError::Precondition(format!(
            "d = {d} must be a multiple of 4"
        )));
    }
    require_metabolizer(l, form)?;
    let sums = l.partial_sums();
    let final_level = (n - 1) / 2;
    let mut resolved = BTreeSet::new();
    let mut levels = Vec::new();
    for level in (final_level..n).rev() {
        let q = group_ring_order(p, n, level)?;
        if q % 2 == 0 {
            return Err(ReplayError::EvenGroupRingOrder { level, q });
        }
        let generator = primitive_root(p, n - level)?;
        let vector = level_vector(l, level)?;
        let relation = relation_of(&vector, level, p, n, generator, &resolved)?;
        let integer_witness =
            coprime_certificate(&relation).ok_or_else(|| ReplayError::ReplayFailure {
                level,
                relation: relation.clone(),
            })?;
        levels.push(LevelRecord {
            level,
            partial_sum: sums[level as usize],
            vector,
            q,
            generator,
            relation,
            integer_witness,
            resolved_before: resolved.iter().copied().collect(),
        });
        resolved.insert(level);
    }
    let e = n - final_level;
    let conclusion = format!(
        "N·σ(K, χ_{{{p}^{final_level}}}) = 0 with N ≠ 0, so σ vanishes on a character onto Z_{{{p}^{e}}}; \
         nonvanishing is required for characters onto Z_{{{p}^e}} with 2e > n = {n}"
    );
    Ok(Certificate {
        p,
        n,
        k: d / 4,
        metabolizer_id: l.id(),
        levels,
        final_level,
        character_order_exponent: e,
        conclusion,
    })
}
