//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::Rng;

use concord_core::{IntMatrix, SeifertMatrix};

pub type Element = Vec<u64>;
pub type Subgroup = BTreeSet<Element>;

/// Subgroup of `(Z_m)^d` generated by `gens`, by breadth-first closure.
pub fn closure(m: u64, d: usize, gens: &[Element]) -> Subgroup {
    let mut seen: Subgroup = BTreeSet::new();
    let zero = vec![0u64; d];
    seen.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Element = x.iter().zip(g).map(|(a, b)| (a + b) % m).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn pair(m: u64, eps: &[u64], x: &[u64], y: &[u64]) -> u64 {
    eps.iter()
        .zip(x)
        .zip(y)
        .fold(0, |acc, ((e, a), b)| (acc + e * a % m * b) % m)
}

/// All isotropic subgroups of order `p^{nd/2}` in `(Z_{p^n})^d`, found by
/// growing isotropic subgroups one generator at a time.
pub fn raw_metabolizers(p: u64, n: u32, eps: &[i64]) -> BTreeSet<Subgroup> {
    let m = p.pow(n);
    let d = eps.len();
    let eps: Vec<u64> = eps.iter().map(|e| e.rem_euclid(m as i64) as u64).collect();
    let target = (p as u128).pow(n * d as u32);
    let all: Vec<Element> = (0..m.pow(d as u32))
        .map(|mut code| {
            (0..d)
                .map(|_| {
                    let v = code % m;
                    code /= m;
                    v
                })
                .collect()
        })
        .collect();
    let isotropic_vectors: Vec<Element> = all
        .into_iter()
        .filter(|x| pair(m, &eps, x, x) == 0)
        .collect();
    let mut found = BTreeSet::new();
    let mut visited: BTreeSet<Subgroup> = BTreeSet::new();
    let start = closure(m, d, &[]);
    let mut stack = vec![start.clone()];
    visited.insert(start);
    while let Some(h) = stack.pop() {
        if (h.len() as u128).pow(2) == target {
            found.insert(h.clone());
        }
        for x in &isotropic_vectors {
            if h.contains(x) || !h.iter().all(|y| pair(m, &eps, x, y) == 0) {
                continue;
            }
            let mut gens: Vec<Element> = h.iter().cloned().collect();
            gens.push(x.clone());
            let bigger = closure(m, d, &gens);
            if visited.insert(bigger.clone()) {
                stack.push(bigger);
            }
        }
    }
    found
}

/// Invariant factors of `Z^3 / M Z^3` for nonsingular `M`.
///
/// `x ↦ adj(M) x mod N` with `N = |det M|` has kernel exactly `M Z^3`, so
/// the cokernel is the subgroup of `(Z_N)^3` spanned by the columns of the
/// adjugate. Its invariant factors are read off the element-order counts.
pub fn cokernel_oracle(m: [[i64; 3]; 3]) -> Vec<BigInt> {
    let det = det3(m);
    let n = det.unsigned_abs();
    assert!(n > 0);
    let adj = adjugate(m);
    let gens: Vec<Element> = (0..3)
        .map(|j| {
            (0..3)
                .map(|i| adj[i][j].rem_euclid(n as i64) as u64)
                .collect()
        })
        .collect();
    let group = closure(n, 3, &gens);
    assert_eq!(group.len() as u64, n);
    let counts = |k: u64| {
        group
            .iter()
            .filter(|x| x.iter().all(|v| (v * k).is_multiple_of(n)))
            .count() as u64
    };
    let divisors: Vec<u64> = (1..=n).filter(|k| n.is_multiple_of(*k)).collect();
    let observed: Vec<u64> = divisors.iter().map(|&k| counts(k)).collect();
    let mut matches = Vec::new();
    for a in &divisors {
        for b in divisors.iter().filter(|b| *b % a == 0) {
            for c in divisors.iter().filter(|c| *c % b == 0) {
                if a * b * c != n {
                    continue;
                }
                let expected: Vec<u64> = divisors
                    .iter()
                    .map(|&k| gcd(k, *a) * gcd(k, *b) * gcd(k, *c))
                    .collect();
                if expected == observed {
                    matches.push([*a, *b, *c]);
                }
            }
        }
    }
    assert_eq!(matches.len(), 1, "element counts determine the group");
    matches[0]
        .iter()
        .filter(|&&x| x > 1)
        .map(|&x| BigInt::from(x))
        .collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn adjugate(m: [[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut adj = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]]
                - m[rows[0]][cols[1]] * m[rows[1]][cols[0]];
            adj[i][j] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    adj
}

/// Random 3×3 matrix with entries in `[−9, 9]` and `1 ≤ |det| ≤ 200`.
pub fn random_nonsingular(rng: &mut StdRng) -> [[i64; 3]; 3] {
    loop {
        let mut m = [[0i64; 3]; 3];
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = rng.gen_range(-9..=9);
            }
        }
        let d = det3(m).abs();
        if (1..=200).contains(&d) {
            return m;
        }
    }
}

/// Random Seifert matrix `Q T Qᵀ + B` of genus `g`: `T` is block diagonal
/// `[[0, 1], [0, 0]]`, `Q` unimodular and `B` symmetric, so `V − Vᵀ` is
/// congruent to the standard symplectic form.
pub fn random_seifert(rng: &mut StdRng, g: usize, spread: i64) -> SeifertMatrix {
    let n = 2 * g;
    let mut t = vec![vec![0i64; n]; n];
    for b in 0..g {
        t[2 * b][2 * b + 1] = 1;
    }
    let mut q: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let f = rng.gen_range(-2..=2);
            for c in 0..n {
                q[i][c] += f * q[j][c];
            }
        }
    }
    let qm = IntMatrix::from_rows(q).unwrap();
    let tm = IntMatrix::from_rows(t).unwrap();
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-spread..=spread);
            b[i][j] = v;
            b[j][i] = v;
        }
    }
    let bm = IntMatrix::from_rows(b).unwrap();
    let v = &(&(&qm * &tm) * &qm.transpose()) + &bm;
    SeifertMatrix::new(v).expect("congruent to a standard Seifert form")
}
