mod common;

use common::*;
use proptest::prelude::*;
use upq_core::lambda_map::{compute_lambda_a, compute_lambda_u, is_unitarily_small, project_dominant};
use upq_core::oracle::oracle_project;
use upq_core::weights::{rho, two_rho_k};
use upq_core::{HalfRational, KTypeWeight, Vector};

fn rational_vec(max_len: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec((-12i64..=12, 1i64..=6), 1..=max_len)
        .prop_map(|v| v.into_iter().map(|(a, b)| HalfRational::new(a, b)).collect())
}

fn dominant_mu(max_n: usize) -> impl Strategy<Value = KTypeWeight> {
    (0..=max_n, 1..=max_n).prop_flat_map(|(p, n)| {
        let p = p.min(n);
        (prop::collection::vec(-4i64..=4, p), prop::collection::vec(-4i64..=4, n - p)).prop_map(|(mut l, mut r)| {
            l.sort_unstable_by(|a, b| b.cmp(a));
            r.sort_unstable_by(|a, b| b.cmp(a));
            KTypeWeight::new(l, r).unwrap()
        })
    })
}

#[test]
fn projection_pools_only_violators() {
    let res = project_dominant(&Vector::from_ints(&[3, 2, 1, 1, 1, 0, -1, 0, -1, 0, -2]));
    assert_eq!(res.value, halves(&[6, 4, 2, 2, 2, 0, -1, -1, -1, -1, -4]));
    assert_eq!(res.level_sets, vec![0..1, 1..2, 2..5, 5..6, 6..10, 10..11]);
}

#[test]
fn lambda_a_keeps_aligned_order() {
    let m = mu("0,0,-1,-1,-1,-1|2,2,1");
    let res = compute_lambda_a(&m, sig(6, 3)).unwrap();
    assert_eq!(res.lambda_a, Vector::from_ints(&[1, 1, 0, 0, -1, -2, 1, 1, 0]));
    assert_eq!(res.merged_sorted, Vector::from_ints(&[1, 1, 1, 1, 0, 0, 0, -1, -2]));
}

#[test]
fn lambda_u_of_a_small_weight_is_central() {
    let m = mu("0,0,0,0,0|2,1,0,-1");
    assert_eq!(compute_lambda_u(&m, sig(5, 4)).unwrap(), Vector::constant(HalfRational::new(2, 9), 9));
    assert!(is_unitarily_small(&m, sig(5, 4)).unwrap());
    assert!(!is_unitarily_small(&mu("9|-9"), sig(1, 1)).unwrap());
}

#[test]
fn signature_mismatch_is_rejected() {
    assert!(compute_lambda_a(&mu("1,0|0"), sig(1, 2)).is_err());
}

proptest! {
    #[test]
    fn projection_matches_oracle(d in rational_vec(6)) {
        prop_assert_eq!(project_dominant(&d).value, oracle_project(&d).unwrap());
    }

    #[test]
    fn projection_is_dominant_idempotent_and_sum_preserving(d in rational_vec(10)) {
        let p = project_dominant(&d).value;
        prop_assert!(p.is_weakly_decreasing());
        prop_assert_eq!(p.sum(), d.sum());
        prop_assert_eq!(project_dominant(&p).value, p);
    }

    #[test]
    fn level_sets_tile_and_are_constant(d in rational_vec(10)) {
        let res = project_dominant(&d);
        let mut next = 0;
        for r in &res.level_sets {
            prop_assert_eq!(r.start, next);
            next = r.end;
            prop_assert!(Vector(res.value.entries()[r.clone()].to_vec()).is_constant());
        }
        prop_assert_eq!(next, d.len());
    }

    #[test]
    fn lambda_a_sums_to_mu_plus_two_rho_k(m in dominant_mu(7)) {
        let s = m.signature().unwrap();
        let res = compute_lambda_a(&m, s).unwrap();
        let total = m.aligned().add(&two_rho_k(s)).unwrap().sum() - rho(s.n()).sum();
        prop_assert_eq!(res.lambda_a.sum(), total);
        prop_assert!(res.merged_sorted.is_weakly_decreasing());
    }

    #[test]
    fn lambda_u_is_dominant(m in dominant_mu(7)) {
        let lu = compute_lambda_u(&m, m.signature().unwrap()).unwrap();
        prop_assert!(lu.is_weakly_decreasing());
    }
}
