use std::collections::BTreeSet;

use concord_core::metabolizer::{
    enumerate_metabolizers, enumerate_with, EnumerationOptions, PrimaryForm,
};
use concord_core::number_theory::{discrete_log, primitive_root};
use concord_core::replay::{
    coprime_certificate, group_ring_order, level_vector, relation_of, replay, GroupRingElement,
    ReplayError,
};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Multisets of size `k` from `0..q`, as nondecreasing sequences.
fn multisets(q: u64, k: usize) -> Vec<Vec<u64>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in multisets(q, k - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for a in lo..q {
            let mut v = rest.clone();
            v.push(a);
            out.push(v);
        }
    }
    out
}

#[test]
fn nonvanishing_sweep() {
    for q in [1u64, 3, 5, 7, 9] {
        for c in 1..=4i64 {
            for k in 0..=c as usize {
                for exps in multisets(q, k) {
                    let f = GroupRingElement::from_exponents(q as usize, c, &exps);
                    assert!(coprime_certificate(&f).is_some(), "q={q} f={f}");
                }
            }
        }
    }
    let f = GroupRingElement::from_exponents(2, 1, &[1]);
    assert_eq!(coprime_certificate(&f), None);
}

#[test]
fn replay_every_metabolizer() {
    for (p, n, d) in [(3, 1, 4), (7, 1, 4), (3, 3, 4), (11, 1, 4), (3, 1, 8)] {
        let form = PrimaryForm::alternating(p, n, d).unwrap();
        let ms = enumerate_metabolizers(&form).unwrap();
        assert!(!ms.is_empty(), "({p},{n},{d})");
        for l in &ms {
            let cert = replay(&form, l).unwrap();
            assert!(cert.is_valid(), "{cert:?}");
            assert_eq!(cert.metabolizer_id, l.id());
        }
    }
}

#[test]
fn three_level_chain() {
    let form = PrimaryForm::alternating(3, 3, 4).unwrap();
    let opts = EnumerationOptions {
        symmetric_profiles_only: true,
        ..Default::default()
    };
    let ms = enumerate_with(&form, &opts).unwrap().metabolizers;
    for l in &ms {
        let cert = replay(&form, l).unwrap();
        let levels: Vec<u32> = cert.levels.iter().map(|r| r.level).collect();
        assert_eq!(levels, vec![2, 1]);
        assert_eq!(cert.levels[0].q, 1);
        assert_eq!(cert.levels[1].q, 3);
        assert_eq!(cert.levels[1].resolved_before, vec![2]);
        assert_eq!(cert.character_order_exponent, 2);
        for r in &cert.levels {
            assert!(l.contains(&r.vector));
            let order = l.column_order();
            let pl = 3u64.pow(r.level);
            assert!(order[..r.partial_sum].iter().all(|&c| r.vector[c] == pl));
            assert!(r.vector.iter().all(|x| x % pl == 0));
        }
    }
}

#[test]
fn certificates_serialize() {
    let form = PrimaryForm::alternating(7, 1, 4).unwrap();
    let l = &enumerate_metabolizers(&form).unwrap()[0];
    let cert = replay(&form, l).unwrap();
    let json = serde_json::to_string(&cert).unwrap();
    assert_eq!(
        serde_json::from_str::<concord_core::Certificate>(&json).unwrap(),
        cert
    );
}

#[test]
fn replay_refuses_bad_instances() {
    let form = PrimaryForm::alternating(3, 2, 4).unwrap();
    let l = &enumerate_metabolizers(&form).unwrap()[0];
    assert!(matches!(
        replay(&form, l),
        Err(ReplayError::Precondition(_))
    ));
    let form = PrimaryForm::alternating(3, 1, 2).unwrap();
    let l = &enumerate_metabolizers(&form).unwrap()[0];
    assert!(matches!(
        replay(&form, l),
        Err(ReplayError::Precondition(_))
    ));
}

#[test]
fn group_ring_orders() {
    assert_eq!(group_ring_order(3, 3, 2).unwrap(), 1);
    assert_eq!(group_ring_order(3, 3, 1).unwrap(), 3);
    assert_eq!(group_ring_order(3, 3, 0).unwrap(), 9);
    for p in [3u64, 7, 11, 19, 23] {
        for n in [1u32, 3, 5] {
            for l in 0..n {
                assert_eq!(group_ring_order(p, n, l).unwrap() % 2, 1);
            }
        }
    }
}

fn vectors() -> impl Strategy<Value = (u64, u32, u32, Vec<u64>, u64)> {
    (prop::sample::select(vec![(3u64, 1u32), (7, 1), (11, 1), (3, 3), (7, 3), (3, 2)]))
        .prop_flat_map(|(p, n)| (Just(p), Just(n), 0..n))
        .prop_flat_map(|(p, n, l)| {
            let span = p.pow(n - l);
            let pl = p.pow(l);
            (
                Just(p),
                Just(n),
                Just(l),
                prop::collection::vec((0..span).prop_map(move |c| c * pl), 1..8),
                (1..span).prop_filter("unit", move |a| a % p != 0),
            )
        })
}

proptest! {
    #[test]
    fn multiplication_covariance((p, n, l, x, a) in vectors()) {
        let m = p.pow(n);
        let g = primitive_root(p, n - l).unwrap();
        let resolved: BTreeSet<u32> = (l + 1..n).collect();
        let f = relation_of(&x, l, p, n, g, &resolved).unwrap();
        let ax: Vec<u64> = x.iter().map(|v| v * a % m).collect();
        let fa = relation_of(&ax, l, p, n, g, &resolved).unwrap();
        let alpha = discrete_log(g, a % p.pow(n - l), p, n - l).unwrap();
        prop_assert_eq!(fa, f.shift(alpha));
    }

    #[test]
    fn resultant_matches_cyclotomic_products(c in 1i64..5, exps in prop::collection::vec(0u64..7, 0..5)) {
        // for q prime, Res(f, t^q − 1) = f(1) · Res(f, Φ_q) and f(1) = augmentation
        let f = GroupRingElement::from_exponents(7, c, &exps);
        let r = coprime_certificate(&f).unwrap();
        prop_assert_eq!(&r % f.augmentation(), BigInt::from(0));
    }
}

#[test]
fn level_vector_rejects_levels_out_of_range() {
    let form = PrimaryForm::alternating(3, 1, 4).unwrap();
    let l = &enumerate_metabolizers(&form).unwrap()[0];
    assert!(level_vector(l, 0).is_ok());
    assert!(level_vector(l, 1).is_err());
}
