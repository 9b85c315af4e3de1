use linkinv_core::angle::{simplest_between, Angle};
use linkinv_core::catalog::{brieskorn_spectrum_oracle, one_var_seifert, thom_sebastiani, BrieskornExponents};
use linkinv_core::hvs::hvs_from_seifert;
use linkinv_core::linalg::Rat;
use linkinv_core::signatures::{signature_profile_with, CirclePoint, PencilEvaluator, ProfileOptions};
use linkinv_core::spectrum::mod2_reduce;
use linkinv_core::{alexander, n0, SeifertMatrix};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

fn seifert_strategy(max_mu: usize) -> impl Strategy<Value = SeifertMatrix> {
    (1u32..=4, 1..=max_mu).prop_flat_map(|(n, mu)| {
        proptest::collection::vec(-3i64..=3, mu * mu).prop_map(move |e| SeifertMatrix::from_flat(n, mu, e))
    })
}

fn all_points(s: &SeifertMatrix) -> Vec<Rat> {
    let opts = ProfileOptions { evaluate_jumps: true, ..Default::default() };
    let p = signature_profile_with(s, &opts).unwrap();
    let mut pts: Vec<Rat> = p.intervals.iter().map(|iv| iv.sample.clone()).collect();
    pts.extend(p.jumps.iter().filter_map(|j| j.angle.exact().cloned()));
    pts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn padding_is_invisible_except_for_nullity(s in seifert_strategy(5), k in 1usize..=3) {
        let padded = s.padded(k);
        prop_assert_eq!(alexander(&padded), alexander(&s));
        prop_assert_eq!(n0(&padded), n0(&s) + k);
        let (a, b) = (PencilEvaluator::new(&s), PencilEvaluator::new(&padded));
        for alpha in all_points(&s) {
            let p = CirclePoint::rational(alpha).unwrap();
            let (sa, na) = a.evaluate(&p).unwrap();
            let (sb, nb) = b.evaluate(&p).unwrap();
            prop_assert_eq!(sa, sb);
            prop_assert_eq!(nb, na + k);
        }
    }

    #[test]
    fn structure_axioms_on_random_forms(s in seifert_strategy(6)) {
        if let Ok(x) = hvs_from_seifert(&s) {
            prop_assert!(x.axioms().all());
        }
    }

    #[test]
    fn folding_preserves_total(values in proptest::collection::vec((1i64..60, 1i64..13), 0..25), n in 1u32..=6) {
        let top = n as i64 + 1;
        let rats: Vec<Rat> = values
            .iter()
            .map(|&(p, q)| Rat::new(p.into(), q.into()))
            .filter(|v| *v < Rat::from_integer(top.into()))
            .collect();
        let folded = mod2_reduce(&rats, n).unwrap();
        prop_assert_eq!(folded.total(), rats.len());
        for e in folded.entries() {
            prop_assert!(e.angle.is_above(&Rat::from_integer(0.into())));
            prop_assert!(!e.angle.is_above(&Rat::from_integer(2.into())));
        }
    }

    #[test]
    fn simplest_rational_lies_inside(a in 0i64..1000, w in 1i64..1000, d in 1i64..1000) {
        let lo = Rat::new(a.into(), d.into());
        let hi = &lo + Rat::new(w.into(), d.into());
        let x = simplest_between(&lo, &hi);
        prop_assert!(x > lo && x < hi);
    }
}

#[test]
fn join_is_associative() {
    for (a, b, c) in [(2, 3, 4), (3, 3, 2), (2, 2, 5), (4, 3, 3)] {
        let (a, b, c) = (one_var_seifert(a).unwrap(), one_var_seifert(b).unwrap(), one_var_seifert(c).unwrap());
        let left = thom_sebastiani(&thom_sebastiani(&a, &b), &c);
        let right = thom_sebastiani(&a, &thom_sebastiani(&b, &c));
        assert_eq!(left, right);
    }
}

#[test]
fn oracle_of_join_is_minkowski_sum() {
    let ex = |v: &[i64]| BrieskornExponents::new(v.to_vec()).unwrap();
    for (x, y) in [(&[2, 3][..], &[4][..]), (&[3][..], &[3, 5][..]), (&[2, 2][..], &[2, 3][..])] {
        let joined: Vec<i64> = x.iter().chain(y).copied().collect();
        let mut sum: Vec<Rat> = brieskorn_spectrum_oracle(&ex(x))
            .iter()
            .flat_map(|u| brieskorn_spectrum_oracle(&ex(y)).into_iter().map(move |v| u + v))
            .collect();
        sum.sort();
        assert_eq!(brieskorn_spectrum_oracle(&ex(&joined)), sum);
    }
}

#[test]
fn folding_examples() {
    let r = |p: i64, q: i64| Rat::new(BigInt::from(p), BigInt::from(q));
    let e = BrieskornExponents::new(vec![2, 2, 2, 2, 3]).unwrap();
    let folded = mod2_reduce(&brieskorn_spectrum_oracle(&e), 4).unwrap();
    let values: Vec<Angle> = folded.entries().iter().map(|x| x.angle.clone()).collect();
    assert_eq!(values, [Angle::Exact(r(1, 3)), Angle::Exact(r(2, 3))]);
    assert!(mod2_reduce(&[Rat::one() * BigInt::from(5)], 4).is_err());
}
