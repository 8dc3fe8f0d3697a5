use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{LabError, MetabolizerNormalForm, PrimaryForm};

/// Largest `|H| = p^{nd}` enumerated without an explicit override.
pub const ENUMERATION_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationOptions {
    pub budget_override: bool,
    /// Only search this level profile `(k_0, …, k_{n−1})`.
    pub profile: Option<Vec<usize>>,
    /// Only search profiles with `k_i = k_{n−i}` for `i ≥ 1`, the shape every
    /// metabolizer has.
    pub symmetric_profiles_only: bool,
    /// Stop early and report partial coverage.
    pub time_limit: Option<Duration>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub metabolizers: Vec<MetabolizerNormalForm>,
    /// False when the time limit cut the search short.
    pub complete: bool,
    pub profiles_searched: Vec<Vec<usize>>,
    pub layouts_total: usize,
    pub layouts_finished: usize,
}

/// Every metabolizer of `form` in canonical normal form, sorted lexicographically.
pub fn enumerate_metabolizers(form: &PrimaryForm) -> Result<Vec<MetabolizerNormalForm>, LabError> {
    Ok(enumerate_with(form, &EnumerationOptions::default())?.metabolizers)
}

/// Level profiles `k` with `Σ k_i ≤ d` and `Σ (n − i) k_i = nd/2`.
pub fn candidate_profiles(n: u32, d: usize) -> Vec<Vec<usize>> {
    let target = n as usize * d;
    if target % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n as usize);
    profiles_rec(n as usize, d, target / 2, &mut cur, &mut out);
    out
}

fn profiles_rec(
    n: usize,
    rows_left: usize,
    weight_left: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let i = cur.len();
    if i == n {
        if weight_left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let w = n - i;
    for k in 0..=rows_left.min(weight_left / w) {
        cur.push(k);
        profiles_rec(n, rows_left - k, weight_left - k * w, cur, out);
        cur.pop();
    }
}

fn is_symmetric_profile(k: &[usize], d: usize) -> bool {
    let n = k.len();
    let top = d - k.iter().sum::<usize>();
    let at = |i: usize| if i == n { top } else { k[i] };
    (1..n).all(|i| at(i) == at(n - i)) && at(0) == top
}

/// Assignment of a level (or none) to every column, matching the profile counts.
fn layouts(profile: &[usize], d: usize) -> Vec<Vec<Option<u32>>> {
    let mut out = Vec::new();
    let mut remaining = profile.to_vec();
    let mut free = d - profile.iter().sum::<usize>();
    let mut cur = Vec::with_capacity(d);
    layouts_rec(d, &mut remaining, &mut free, &mut cur, &mut out);
    out
}

fn layouts_rec(
    d: usize,
    remaining: &mut Vec<usize>,
    free: &mut usize,
    cur: &mut Vec<Option<u32>>,
    out: &mut Vec<Vec<Option<u32>>>,
) {
    if cur.len() == d {
        out.push(cur.clone());
        return;
    }
    if *free > 0 {
        *free -= 1;
        cur.push(None);
        layouts_rec(d, remaining, free, cur, out);
        cur.pop();
        *free += 1;
    }
    for l in 0..remaining.len() {
        if remaining[l] > 0 {
            remaining[l] -= 1;
            cur.push(Some(l as u32));
            layouts_rec(d, remaining, free, cur, out);
            cur.pop();
            remaining[l] += 1;
        }
    }
}

/// One free position of a row: column, step `pⁱ` (or `p^{i+1}` left of the
/// pivot) and the number of values it takes.
struct Slot {
    col: usize,
    step: u64,
    count: u64,
}

struct RowShape {
    pivot: usize,
    level: u32,
    slots: Vec<Slot>,
}

fn row_shapes(form: &PrimaryForm, layout: &[Option<u32>]) -> Vec<RowShape> {
    let (p, n) = (form.p(), form.n());
    let mut pivots: Vec<(u32, usize)> = layout
        .iter()
        .enumerate()
        .filter_map(|(c, l)| l.map(|l| (l, c)))
        .collect();
    pivots.sort();
    pivots
        .iter()
        .map(|&(level, pivot)| {
            let slots = layout
                .iter()
                .enumerate()
                .filter_map(|(col, l)| {
                    let span = match l {
                        Some(lj) if *lj <= level => return None,
                        Some(lj) => lj - level,
                        None => n - level,
                    };
                    // entries left of the pivot vanish mod p^{level+1}
                    let (step, count) = if col < pivot {
                        (p.pow(level + 1), p.pow(span - 1))
                    } else {
                        (p.pow(level), p.pow(span))
                    };
                    (count > 1).then_some(Slot { col, step, count })
                })
                .collect();
            RowShape {
                pivot,
                level,
                slots,
            }
        })
        .collect()
}

struct Search<'a> {
    form: &'a PrimaryForm,
    shapes: Vec<RowShape>,
    rows: Vec<Vec<u64>>,
    found: Vec<MetabolizerNormalForm>,
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
    ticks: u64,
}

impl Search<'_> {
    fn timed_out(&mut self) -> bool {
        self.ticks += 1;
        if self.ticks.is_multiple_of(4096) {
            if let Some(t) = self.deadline {
                if Instant::now() >= t {
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        self.stop.load(Ordering::Relaxed)
    }

    fn run(&mut self, idx: usize) -> bool {
        if idx == self.shapes.len() {
            let pivots = self.shapes.iter().map(|s| s.pivot).collect();
            let levels = self.shapes.iter().map(|s| s.level).collect();
            self.found.push(MetabolizerNormalForm::from_parts(
                self.form.p(),
                self.form.n(),
                self.form.d(),
                self.rows.clone(),
                pivots,
                levels,
            ));
            return true;
        }
        let shape = &self.shapes[idx];
        let mut row = vec![0u64; self.form.d()];
        row[shape.pivot] = self.form.p().pow(shape.level);
        let mut digits = vec![0u64; shape.slots.len()];
        loop {
            if self.timed_out() {
                return false;
            }
            let isotropic = self.form.pair(&row, &row) == 0
                && self.rows.iter().all(|prev| self.form.pair(prev, &row) == 0);
            if isotropic {
                self.rows.push(row.clone());
                let go_on = self.run(idx + 1);
                self.rows.pop();
                if !go_on {
                    return false;
                }
            }
            let shape = &self.shapes[idx];
            let mut k = 0;
            loop {
                if k == digits.len() {
                    return true;
                }
                let slot = &shape.slots[k];
                digits[k] += 1;
                if digits[k] < slot.count {
                    row[slot.col] = digits[k] * slot.step;
                    break;
                }
                digits[k] = 0;
                row[slot.col] = 0;
                k += 1;
            }
        }
    }
}

/// Enumeration with options; the search is split over (profile, pivot
/// layout) pairs and run in parallel, then sorted canonically.
pub fn enumerate_with(
    form: &PrimaryForm,
    opts: &EnumerationOptions,
) -> Result<Enumeration, LabError> {
    let (n, d) = (form.n(), form.d());
    if (n as usize * d) % 2 == 1 {
        return Err(LabError::InvalidForm(format!(
            "n·d = {} is odd, no metabolizer can exist",
            n as usize * d
        )));
    }
    let size = form.group_order();
    if size > BigUint::from(ENUMERATION_BUDGET) && !opts.budget_override {
        return Err(LabError::BudgetExceeded {
            size: size.to_string(),
            limit: ENUMERATION_BUDGET,
        });
    }
    let profiles: Vec<Vec<usize>> = candidate_profiles(n, d)
        .into_iter()
        .filter(|k| opts.profile.as_ref().is_none_or(|want| want == k))
        .filter(|k| !opts.symmetric_profiles_only || is_symmetric_profile(k, d))
        .collect();
    let tasks: Vec<Vec<Option<u32>>> = profiles.iter().flat_map(|k| layouts(k, d)).collect();
    let stop = AtomicBool::new(false);
    let deadline = opts.time_limit.map(|t| Instant::now() + t);
    let results: Vec<(Vec<MetabolizerNormalForm>, bool)> = tasks
        .par_iter()
        .map(|layout| {
            let mut search = Search {
                form,
                shapes: row_shapes(form, layout),
                rows: Vec::new(),
                found: Vec::new(),
                deadline,
                stop: &stop,
                ticks: 0,
            };
            let finished = search.run(0);
            (search.found, finished)
        })
        .collect();
    let layouts_finished = results.iter().filter(|(_, f)| *f).count();
    let mut metabolizers: Vec<MetabolizerNormalForm> =
        results.into_iter().flat_map(|(m, _)| m).collect();
    metabolizers.sort_by(|a, b| a.rows().cmp(b.rows()));
    Ok(Enumeration {
        metabolizers,
        complete: layouts_finished == tasks.len(),
        profiles_searched: profiles,
        layouts_total: tasks.len(),
        layouts_finished,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles() {
        assert_eq!(candidate_profiles(1, 2), vec![vec![1]]);
        assert_eq!(candidate_profiles(1, 3), Vec::<Vec<usize>>::new());
        let mut p = candidate_profiles(3, 4);
        p.sort();
        assert_eq!(
            p,
            vec![
                vec![0, 2, 2],
                vec![0, 3, 0],
                vec![1, 0, 3],
                vec![1, 1, 1],
                vec![2, 0, 0]
            ]
        );
        assert!(is_symmetric_profile(&[1, 3, 3], 8));
        assert!(!is_symmetric_profile(&[1, 0, 3], 4));
        assert!(!is_symmetric_profile(&[0, 3, 0], 4));
    }

    #[test]
    fn layout_count() {
        assert_eq!(layouts(&[2], 4).len(), 6);
        assert_eq!(layouts(&[1, 1, 1], 4).len(), 24);
    }

    #[test]
    fn small_instances() {
        let plus = PrimaryForm::standard(3, 1, 2).unwrap();
        assert!(enumerate_metabolizers(&plus).unwrap().is_empty());
        let alt = PrimaryForm::alternating(3, 1, 2).unwrap();
        let ids: Vec<String> = enumerate_metabolizers(&alt)
            .unwrap()
            .iter()
            .map(|m| m.id())
            .collect();
        assert_eq!(ids, vec!["1,1", "1,2"]);
    }

    #[test]
    fn budget_gate() {
        let big = PrimaryForm::alternating(3, 5, 8).unwrap();
        assert!(matches!(
            enumerate_metabolizers(&big),
            Err(LabError::BudgetExceeded { .. })
        ));
        let odd = PrimaryForm::alternating(3, 1, 3).unwrap();
        assert!(matches!(
            enumerate_metabolizers(&odd),
            Err(LabError::InvalidForm(_))
        ));
    }
}
