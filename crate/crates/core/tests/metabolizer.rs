mod common;

use std::collections::BTreeSet;

use common::{closure, raw_metabolizers, Subgroup};
use concord_core::metabolizer::{
    enumerate_metabolizers, enumerate_with, normal_form, verify_structure, EnumerationOptions,
    LabError, MetabolizerNormalForm, PrimaryForm,
};
use proptest::prelude::*;

fn span(l: &MetabolizerNormalForm) -> Subgroup {
    closure(l.modulus(), l.d(), l.rows())
}

fn enumerated_spans(p: u64, n: u32, eps: &[i64]) -> BTreeSet<Subgroup> {
    let form = PrimaryForm::new(p, n, eps).unwrap();
    let ms = enumerate_metabolizers(&form).unwrap();
    let spans: BTreeSet<Subgroup> = ms.iter().map(span).collect();
    assert_eq!(
        spans.len(),
        ms.len(),
        "duplicate metabolizers for p={p} n={n} eps={eps:?}"
    );
    spans
}

#[test]
fn enumeration_matches_raw_subgroup_search() {
    let cases: &[(u64, u32, &[i64])] = &[
        (3, 1, &[1, 1]),
        (3, 1, &[1, -1]),
        (5, 1, &[1, 1]),
        (5, 1, &[1, 2]),
        (7, 1, &[1, -1]),
        (3, 1, &[1, 1, 1, 1]),
        (3, 1, &[1, -1, 1, -1]),
        (3, 1, &[1, 1, 1, -1]),
        (3, 2, &[1, 1]),
        (3, 2, &[1, -1]),
        (3, 2, &[1, 1, 1]),
        (3, 2, &[1, -1, 1]),
        (5, 2, &[1, 1]),
        (3, 3, &[1, -1]),
        (3, 4, &[1]),
    ];
    for &(p, n, eps) in cases {
        let raw = raw_metabolizers(p, n, eps);
        let ours = enumerated_spans(p, n, eps);
        assert_eq!(ours, raw, "p={p} n={n} eps={eps:?}");
    }
}

#[test]
fn known_small_answers() {
    assert!(
        enumerate_metabolizers(&PrimaryForm::standard(3, 1, 2).unwrap())
            .unwrap()
            .is_empty()
    );
    let alt = enumerate_metabolizers(&PrimaryForm::alternating(3, 1, 2).unwrap()).unwrap();
    let rows: Vec<_> = alt.iter().map(|m| m.rows().to_vec()).collect();
    assert_eq!(rows, vec![vec![vec![1, 1]], vec![vec![1, 2]]]);
    let four = enumerate_metabolizers(&PrimaryForm::standard(3, 1, 4).unwrap()).unwrap();
    let target = normal_form(3, 1, 4, &[vec![1, 1, 1, 0], vec![1, 2, 0, 1]]).unwrap();
    assert!(four.contains(&target));
}

#[test]
fn enumeration_is_sorted_and_canonical() {
    let form = PrimaryForm::alternating(3, 2, 2).unwrap();
    let ms = enumerate_metabolizers(&form).unwrap();
    assert!(ms.windows(2).all(|w| w[0].rows() < w[1].rows()));
    for l in &ms {
        assert!(l.is_canonical());
        assert_eq!(&normal_form(3, 2, 2, l.rows()).unwrap(), l);
    }
}

#[test]
fn structure_holds_for_every_metabolizer() {
    for (p, n, d) in [
        (3, 1, 4),
        (3, 2, 2),
        (3, 3, 2),
        (5, 2, 2),
        (3, 3, 4),
        (3, 2, 4),
    ] {
        let form = PrimaryForm::alternating(p, n, d).unwrap();
        for l in enumerate_metabolizers(&form).unwrap() {
            let report = verify_structure(&l, &form).unwrap();
            assert!(report.passes(), "{report:?}");
        }
    }
}

#[test]
fn profile_restriction_and_partial_runs() {
    let form = PrimaryForm::alternating(3, 3, 4).unwrap();
    let all = enumerate_metabolizers(&form).unwrap();
    let restricted = enumerate_with(
        &form,
        &EnumerationOptions {
            symmetric_profiles_only: true,
            ..Default::default()
        },
    )
    .unwrap();
    assert!(restricted.complete);
    assert_eq!(restricted.metabolizers, all);
    let one = enumerate_with(
        &form,
        &EnumerationOptions {
            profile: Some(vec![1, 1, 1]),
            ..Default::default()
        },
    )
    .unwrap();
    assert!(one
        .metabolizers
        .iter()
        .all(|m| m.profile() == vec![1, 1, 1]));
    assert!(!one.metabolizers.is_empty());
}

#[test]
fn example_profile_shape() {
    // one level-0 row and three rows each at levels 1 and 2 in (Z_27)^8
    let k = [1usize, 3, 3];
    let d = 8;
    let top = d - k.iter().sum::<usize>();
    assert_eq!(k[1], k[2]);
    assert_eq!(top, k[0]);
    assert_eq!(k[0] + k[1], 2 * (d / 4));
    let weight: usize = k.iter().enumerate().map(|(i, ki)| (3 - i) * ki).sum();
    assert_eq!(weight, 3 * d / 2);
    assert!(concord_core::metabolizer::candidate_profiles(3, 8).contains(&k.to_vec()));
}

#[test]
fn budget_override() {
    let big = PrimaryForm::alternating(3, 5, 8).unwrap();
    assert!(matches!(
        enumerate_metabolizers(&big),
        Err(LabError::BudgetExceeded { .. })
    ));
    let opts = EnumerationOptions {
        budget_override: true,
        profile: Some(vec![0, 0, 0, 0, 0]),
        ..Default::default()
    };
    // a profile with no rows cannot reach the required order, so nothing is searched
    assert!(enumerate_with(&big, &opts).unwrap().metabolizers.is_empty());
}

fn small_group() -> impl Strategy<Value = (u64, u32, usize, Vec<Vec<u64>>)> {
    (
        prop::sample::select(vec![(3u64, 1u32), (3, 2), (5, 1), (3, 3), (5, 2), (7, 1)]),
        1usize..=3,
    )
        .prop_flat_map(|((p, n), d)| {
            let m = p.pow(n);
            (
                Just(p),
                Just(n),
                Just(d),
                prop::collection::vec(prop::collection::vec(0..m, d), 0..4),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_preserves_span((p, n, d, gens) in small_group()) {
        let nf = normal_form(p, n, d, &gens).unwrap();
        let m = p.pow(n);
        prop_assert!(nf.is_canonical());
        prop_assert_eq!(span(&nf), closure(m, d, &gens));
        prop_assert_eq!(u64::pow(p, nf.order_exponent() as u32), closure(m, d, &gens).len() as u64);
        for g in &gens {
            prop_assert!(nf.contains(g));
        }
    }

    #[test]
    fn normal_form_is_idempotent((p, n, d, gens) in small_group()) {
        let nf = normal_form(p, n, d, &gens).unwrap();
        prop_assert_eq!(&normal_form(p, n, d, nf.rows()).unwrap(), &nf);
    }

    #[test]
    fn normal_form_ignores_generating_set((p, n, d, gens) in small_group(), seed in any::<u64>()) {
        // a different generating set of the same subgroup: random combinations plus the originals shuffled
        let m = p.pow(n);
        let nf = normal_form(p, n, d, &gens).unwrap();
        let mut other: Vec<Vec<u64>> = gens.iter().rev().cloned().collect();
        let mut s = seed;
        for g in &gens {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (s >> 33) % m;
            let combo: Vec<u64> = other[0].iter().zip(g).map(|(x, y)| (x * a + y) % m).collect();
            other.push(combo);
        }
        prop_assert_eq!(normal_form(p, n, d, &other).unwrap(), nf);
    }
}
