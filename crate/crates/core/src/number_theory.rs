//! Factorization and unit-group utilities over machine integers.
//!
//! Inputs are homology orders and moduli of desk-scale knots, so everything
//! here works below 2⁶⁴ with 128-bit intermediates. Arbitrary-precision
//! values are narrowed through [`to_u64`] before entering this module.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberTheoryError {
    #[error("input must be positive")]
    NonPositive,
    #[error("{0} does not fit below 2^64")]
    TooLarge(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    #[error("{base} does not generate the units modulo {modulus}")]
    NotAGenerator { base: u64, modulus: u64 },
    #[error("{p}^{m} overflows 64 bits")]
    ModulusOverflow { p: u64, m: u32 },
}

/// Prime factorization as `(prime, exponent)` pairs, primes ascending.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| *q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::from(1u32), |acc, &(p, e)| {
                acc * BigUint::from(p).pow(e)
            })
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Primes `p ≡ 3 (mod 4)` appearing with odd exponent.
    pub fn odd_exponent_primes_3_mod_4(&self) -> Vec<(u64, u32)> {
        self.factors
            .iter()
            .copied()
            .filter(|&(p, e)| p % 4 == 3 && e % 2 == 1)
            .collect()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, e)| {
                if e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

pub fn to_u64(n: &BigInt) -> Result<u64, NumberTheoryError> {
    n.to_u64().ok_or_else(|| {
        if n.sign() == num_bigint::Sign::Minus || n.is_zero() {
            NumberTheoryError::NonPositive
        } else {
            NumberTheoryError::TooLarge(n.to_string())
        }
    })
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn checked_pow(p: u64, m: u32) -> Result<u64, NumberTheoryError> {
    p.checked_pow(m)
        .ok_or(NumberTheoryError::ModulusOverflow { p, m })
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin; the first twelve prime bases are exact below 2⁶⁴.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard rho; `n` must be odd and composite.
fn pollard_rho(n: u64) -> u64 {
    for c in 1.. {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut x, mut ys);
        let mut g;
        loop {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            loop {
                ys = y;
                for _ in 0..r.saturating_sub(k).min(128) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 128;
                if k >= r || g != 1 {
                    break;
                }
            }
            r *= 2;
            if g != 1 {
                break;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Exact factorization: trial division by small primes, then Pollard rho
/// on the cofactor with Miller–Rabin certification of every prime.
pub fn factorize(n: u64) -> Result<Factorization, NumberTheoryError> {
    if n == 0 {
        return Err(NumberTheoryError::NonPositive);
    }
    let mut rest = n;
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p < 1000 && p * p <= rest {
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    split_into(rest, &mut primes);
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match factors.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    Ok(Factorization { factors })
}

pub fn factorize_big(n: &BigInt) -> Result<Factorization, NumberTheoryError> {
    factorize(to_u64(n)?)
}

pub fn is_perfect_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &(&r * &r) == n
}

/// Order of the unit group of `Z/p^m`, namely `p^(m−1)(p−1)`.
pub fn unit_group_order(p: u64, m: u32) -> Result<u64, NumberTheoryError> {
    require_odd_prime(p)?;
    if m == 0 {
        return Ok(1);
    }
    let base = checked_pow(p, m - 1)?;
    base.checked_mul(p - 1)
        .ok_or(NumberTheoryError::ModulusOverflow { p, m })
}

fn require_odd_prime(p: u64) -> Result<(), NumberTheoryError> {
    if p % 2 == 1 && is_prime(p) {
        Ok(())
    } else {
        Err(NumberTheoryError::NotOddPrime(p))
    }
}

fn generates(g: u64, modulus: u64, order: u64, order_primes: &Factorization) -> bool {
    gcd(g, modulus) == 1
        && order_primes
            .primes()
            .all(|r| pow_mod(g, order / r, modulus) != 1)
}

/// Smallest positive generator of the (cyclic) unit group of `Z/p^m`.
pub fn primitive_root(p: u64, m: u32) -> Result<u64, NumberTheoryError> {
    require_odd_prime(p)?;
    if m == 0 {
        return Err(NumberTheoryError::NonPositive);
    }
    let modulus = checked_pow(p, m)?;
    let order = unit_group_order(p, m)?;
    let order_primes = factorize(order)?;
    (2..modulus)
        .find(|&g| generates(g, modulus, order, &order_primes))
        .ok_or(NumberTheoryError::NotAGenerator { base: 0, modulus })
}

/// Least `α ≥ 0` with `g^α ≡ u (mod p^m)`, by linear scan.
pub fn discrete_log(g: u64, u: u64, p: u64, m: u32) -> Result<u64, NumberTheoryError> {
    require_odd_prime(p)?;
    let modulus = checked_pow(p, m)?;
    let u = u % modulus;
    if u.is_multiple_of(p) {
        return Err(NumberTheoryError::NotAUnit { value: u, modulus });
    }
    let order = unit_group_order(p, m)?;
    let mut acc = 1 % modulus;
    for alpha in 0..order {
        if acc == u {
            return Ok(alpha);
        }
        acc = mul_mod(acc, g, modulus);
    }
    Err(NumberTheoryError::NotAGenerator { base: g, modulus })
}

/// p-adic valuation of a nonzero `x`.
pub fn valuation(mut x: u64, p: u64) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Inverse of a unit modulo `m`.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_units(p: u64, m: u32) -> u64 {
        let modulus = p.pow(m);
        (1..modulus).filter(|&x| gcd(x, modulus) == 1).count() as u64
    }

    fn brute_order(g: u64, modulus: u64) -> u64 {
        let mut x = g % modulus;
        let mut k = 1;
        while x != 1 {
            x = mul_mod(x, g, modulus);
            k += 1;
        }
        k
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(9261).unwrap().factors(), &[(3, 3), (7, 3)]);
        assert!(factorize(1).unwrap().is_empty());
        assert_eq!(factorize(21).unwrap().factors(), &[(3, 1), (7, 1)]);
        assert_eq!(factorize(0), Err(NumberTheoryError::NonPositive));
    }

    #[test]
    fn factorize_large_semiprime() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let q = 4_294_967_279u64;
        let f = factorize(p * q).unwrap();
        assert_eq!(f.factors(), &[(q, 1), (p, 1)]);
        let f = factorize(u64::MAX).unwrap();
        assert_eq!(f.product(), BigUint::from(u64::MAX));
    }

    #[test]
    fn factorize_round_trip_small() {
        for n in 1..=100_000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.product(), BigUint::from(n));
            assert!(f.primes().all(is_prime));
        }
    }

    #[test]
    fn perfect_squares() {
        assert!(is_perfect_square(&BigUint::from(9u32)));
        assert!(!is_perfect_square(&BigUint::from(5u32)));
        assert!(is_perfect_square(&BigUint::from(121u32)));
        assert!(is_perfect_square(&BigUint::from(0u32)));
    }

    #[test]
    fn unit_group_orders() {
        assert_eq!(unit_group_order(7, 1).unwrap(), 6);
        assert_eq!(unit_group_order(3, 3).unwrap(), 18);
        for p in [3, 7, 11] {
            for m in 1..=3 {
                assert_eq!(unit_group_order(p, m).unwrap(), brute_units(p, m));
            }
        }
        assert_eq!(
            unit_group_order(9, 1),
            Err(NumberTheoryError::NotOddPrime(9))
        );
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(7, 1).unwrap(), 3);
        assert_eq!(primitive_root(3, 1).unwrap(), 2);
        assert_eq!(primitive_root(3, 2).unwrap(), 2);
        for p in [3u64, 5, 7, 11, 13, 19, 23] {
            for m in 1..=3 {
                let g = primitive_root(p, m).unwrap();
                let modulus = p.pow(m);
                assert_eq!(brute_order(g, modulus), unit_group_order(p, m).unwrap());
                // smallest: nothing below g generates
                for h in 2..g {
                    if gcd(h, modulus) == 1 {
                        assert!(brute_order(h, modulus) < unit_group_order(p, m).unwrap());
                    }
                }
                assert_eq!(pow_mod(g, (p - 1) / 2, p), p - 1, "g^((p-1)/2) = -1 mod p");
            }
        }
    }

    #[test]
    fn discrete_logs() {
        assert_eq!(discrete_log(3, 1, 7, 1).unwrap(), 0);
        assert_eq!(discrete_log(3, 6, 7, 1).unwrap(), 3);
        assert_eq!(discrete_log(2, 4, 3, 2).unwrap(), 2);
        assert_eq!(discrete_log(3, 5, 7, 1).unwrap(), 5);
        assert_eq!(
            discrete_log(3, 14, 7, 1),
            Err(NumberTheoryError::NotAUnit {
                value: 0,
                modulus: 7
            })
        );
        assert_eq!(
            discrete_log(2, 3, 7, 1),
            Err(NumberTheoryError::NotAGenerator {
                base: 2,
                modulus: 7
            })
        );
    }

    #[test]
    fn inverses() {
        assert_eq!(inverse_mod(2, 9), Some(5));
        assert_eq!(inverse_mod(3, 9), None);
        assert_eq!(valuation(54, 3), 3);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn dlog_inverts_power(p in prop::sample::select(vec![3u64, 7, 11, 19]), m in 1u32..=3, alpha in 0u64..10_000) {
                let g = primitive_root(p, m).unwrap();
                let order = unit_group_order(p, m).unwrap();
                let u = pow_mod(g, alpha, p.pow(m));
                prop_assert_eq!(discrete_log(g, u, p, m).unwrap(), alpha % order);
            }
        }
    }
}
