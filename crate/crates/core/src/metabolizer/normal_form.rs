use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::LabError;
use crate::number_theory::{checked_pow, inverse_mod, is_prime, mul_mod, valuation};

/// Canonical generating set of a subgroup of `(Z_{pⁿ})^d`.
///
/// Each row has a level `i` and a pivot column `c` holding exactly `pⁱ`.
/// Rows are zero at the pivots of lower or equal level, entries at the pivot
/// of a higher level `i'` lie in `[0, p^{i'})`, and every entry left of `c`
/// is divisible by `p^{i+1}`. Rows are stored in original coordinates and
/// sorted by `(level, pivot)`; [`column_order`](Self::column_order) gives
/// the permutation that shows the staircase.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MetabolizerNormalForm {
    p: u64,
    n: u32,
    d: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    levels: Vec<u32>,
}

impl MetabolizerNormalForm {
    pub(crate) fn from_parts(
        p: u64,
        n: u32,
        d: usize,
        rows: Vec<Vec<u64>>,
        pivots: Vec<usize>,
        levels: Vec<u32>,
    ) -> Self {
        Self {
            p,
            n,
            d,
            rows,
            pivots,
            levels,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    /// `(k_0, …, k_{n−1})`, the number of rows at each level.
    pub fn profile(&self) -> Vec<usize> {
        let mut k = vec![0; self.n as usize];
        for &l in &self.levels {
            k[l as usize] += 1;
        }
        k
    }

    /// `S_i = k_0 + … + k_i`.
    pub fn partial_sums(&self) -> Vec<usize> {
        self.profile()
            .iter()
            .scan(0, |acc, k| {
                *acc += k;
                Some(*acc)
            })
            .collect()
    }

    /// `log_p |L| = Σ (n − i) k_i`.
    pub fn order_exponent(&self) -> u64 {
        self.levels.iter().map(|&l| (self.n - l) as u64).sum()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.order_exponent() as u32)
    }

    /// Pivot columns in row order, then the remaining columns ascending.
    pub fn column_order(&self) -> Vec<usize> {
        let mut order = self.pivots.clone();
        order.extend((0..self.d).filter(|c| !self.pivots.contains(c)));
        order
    }

    /// Rows with columns permuted by [`column_order`](Self::column_order).
    pub fn staircase_rows(&self) -> Vec<Vec<u64>> {
        let order = self.column_order();
        self.rows
            .iter()
            .map(|r| order.iter().map(|&c| r[c]).collect())
            .collect()
    }

    /// Rows joined as `"1,0,2,2;0,1,2,1"`.
    pub fn id(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Whether `x` lies in the span, by triangular elimination.
    pub fn contains(&self, x: &[u64]) -> bool {
        let m = self.modulus();
        let mut x: Vec<u64> = x.iter().map(|v| v % m).collect();
        for ((row, &c), &l) in self.rows.iter().zip(&self.pivots).zip(&self.levels) {
            let pl = self.p.pow(l);
            if !x[c].is_multiple_of(pl) {
                return false;
            }
            let a = x[c] / pl;
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi = (*xi + m - mul_mod(a, *ri, m)) % m;
            }
        }
        x.iter().all(|&v| v == 0)
    }

    /// All elements of the span, for small instances.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let m = self.modulus();
        let mut out = vec![vec![0u64; self.d]];
        for (row, &l) in self.rows.iter().zip(&self.levels) {
            let ord = self.p.pow(self.n - l);
            let mut next = Vec::with_capacity(out.len() * ord as usize);
            for base in &out {
                for a in 0..ord {
                    next.push(
                        base.iter()
                            .zip(row)
                            .map(|(b, r)| (b + mul_mod(a, *r, m)) % m)
                            .collect(),
                    );
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Checks every normal-form condition listed on the type.
    pub fn is_canonical(&self) -> bool {
        let m = self.modulus();
        let sorted = self
            .levels
            .windows(2)
            .zip(self.pivots.windows(2))
            .all(|(l, c)| (l[0], c[0]) < (l[1], c[1]));
        if !sorted
            || self
                .rows
                .iter()
                .any(|r| r.len() != self.d || r.iter().any(|&v| v >= m))
        {
            return false;
        }
        self.rows
            .iter()
            .zip(&self.pivots)
            .zip(&self.levels)
            .all(|((row, &c), &l)| {
                let pl = self.p.pow(l);
                row[c] == pl
                    && row.iter().enumerate().all(|(j, &v)| {
                        if v % pl != 0 || (j < c && v % (pl * self.p) != 0 && v != 0) {
                            return false;
                        }
                        match self.pivots.iter().position(|&pc| pc == j) {
                            Some(idx) if idx != self.pivot_index(c) => {
                                let lj = self.levels[idx];
                                if lj <= l {
                                    v == 0
                                } else {
                                    v < self.p.pow(lj)
                                }
                            }
                            _ => true,
                        }
                    })
            })
    }

    fn pivot_index(&self, c: usize) -> usize {
        self.pivots
            .iter()
            .position(|&pc| pc == c)
            .expect("pivot present")
    }
}

impl fmt::Display for MetabolizerNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
                )
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Canonical normal form of the subgroup of `(Z_{pⁿ})^d` spanned by `generators`.
///
/// Pivots are chosen level by level: the next pivot is the leftmost unused
/// column holding an entry of least valuation. The pivot row is scaled so
/// the pivot is exactly `pᵛ`, the column is cleared from the remaining
/// generators, and earlier rows are reduced into `[0, pᵛ)` at that column.
pub fn normal_form(
    p: u64,
    n: u32,
    d: usize,
    generators: &[Vec<u64>],
) -> Result<MetabolizerNormalForm, LabError> {
    if !is_prime(p) || n == 0 || d == 0 {
        return Err(LabError::InvalidForm(format!(
            "need prime p, n ≥ 1, d ≥ 1; got p={p}, n={n}, d={d}"
        )));
    }
    let m = checked_pow(p, n).map_err(|e| LabError::InvalidForm(e.to_string()))?;
    if let Some(g) = generators.iter().find(|g| g.len() != d) {
        return Err(LabError::InvalidSubgroup(format!(
            "generator has {} entries, expected {d}",
            g.len()
        )));
    }
    let sub = |x: &mut Vec<u64>, f: u64, r: &[u64]| {
        for (xi, ri) in x.iter_mut().zip(r) {
            *xi = (*xi + m - mul_mod(f, *ri, m)) % m;
        }
    };
    let mut work: Vec<Vec<u64>> = generators
        .iter()
        .map(|g| g.iter().map(|v| v % m).collect::<Vec<_>>())
        .filter(|g| g.iter().any(|&v| v != 0))
        .collect();
    let mut used = vec![false; d];
    let mut basis: Vec<(Vec<u64>, usize, u32)> = Vec::new();
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for (ri, row) in work.iter().enumerate() {
            for c in (0..d).filter(|&c| !used[c] && row[c] != 0) {
                let key = (valuation(row[c], p), c, ri);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((v, c, ri)) = best else { break };
        let mut r = work.swap_remove(ri);
        let pv = p.pow(v);
        let unit = r[c] / pv;
        let inv = inverse_mod(unit % m, m).expect("p-free part is a unit");
        for x in r.iter_mut() {
            *x = mul_mod(*x, inv, m);
        }
        debug_assert_eq!(r[c], pv);
        for w in work.iter_mut() {
            let f = w[c] / pv;
            sub(w, f, &r);
        }
        work.retain(|w| w.iter().any(|&x| x != 0));
        for (b, _, _) in basis.iter_mut() {
            let f = b[c] / pv;
            sub(b, f, &r);
        }
        used[c] = true;
        basis.push((r, c, v));
    }
    basis.sort_by_key(|(_, c, v)| (*v, *c));
    let (rows, (pivots, levels)): (Vec<_>, (Vec<_>, Vec<_>)) =
        basis.into_iter().map(|(r, c, v)| (r, (c, v))).unzip();
    Ok(MetabolizerNormalForm {
        p,
        n,
        d,
        rows,
        pivots,
        levels,
    })
}
