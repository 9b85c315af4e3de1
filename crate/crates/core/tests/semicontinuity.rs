use linkinv_core::catalog::{adjacency_examples, lookup};
use linkinv_core::linalg::Rat;
use linkinv_core::semicontinuity::{
    check_local, check_local_with, local_global_bound, mk_bound, CheckOptions, CobordismBettiData, Verdict,
};
use linkinv_core::signatures::{CirclePoint, PencilEvaluator};

#[test]
fn curated_adjacencies_hold() {
    for inst in adjacency_examples() {
        let rep = check_local(&inst.central, &inst.locals).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds, "{}", inst.label);
        assert!(inst.expect_holds);
    }
}

#[test]
fn reversed_adjacencies_fail() {
    for inst in adjacency_examples() {
        if inst.locals.len() != 1 || inst.locals[0] == inst.central || inst.local_exponents[0] == inst.central_exponents {
            continue;
        }
        let rep = check_local(&inst.locals[0], std::slice::from_ref(&inst.central)).unwrap();
        assert_eq!(rep.verdict, Verdict::Fails, "reversed {}", inst.label);
    }
}

#[test]
fn self_deformation_has_zero_slack() {
    for name in ["A1", "A4", "D4", "A3@2", "A2@3", "brieskorn:3,4"] {
        let s = lookup(name).unwrap();
        let rep = check_local(&s, std::slice::from_ref(&s)).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
        assert!(rep.records.iter().all(|r| r.slack_inside == 0 && r.slack_outside == 0), "{name}");
    }
}

/// Away from all eigenvalue angles, the inside inequality is the bound with
/// `b_n = 2μ₀` rewritten through `|Sp ∩ (α, α+1)| = (μ − σ)/2`.
#[test]
fn derivation_chain_closes() {
    let mut closed = 0;
    for inst in adjacency_examples() {
        let rep = check_local(&inst.central, &inst.locals).unwrap();
        let mu0 = inst.central.mu() as i64;
        for rec in &rep.records {
            let p = CirclePoint::rational(rec.alpha.clone()).unwrap();
            let (s0, n0) = PencilEvaluator::new(&inst.central).evaluate(&p).unwrap();
            assert_eq!(n0, 0);
            assert_eq!(2 * rec.lhs_inside, mu0 - s0, "{} at {}", inst.label, rec.alpha);
            assert_eq!(2 * rec.lhs_outside, mu0 + s0);
            let local: Vec<(i64, usize)> = inst.locals.iter().map(|l| PencilEvaluator::new(l).evaluate(&p).unwrap()).collect();
            if local.iter().any(|&(_, n)| n > 0) {
                continue;
            }
            let rhs: i64 = inst.locals.iter().zip(&local).map(|(l, &(s, _))| l.mu() as i64 - s).sum();
            assert_eq!(2 * rec.rhs_inside, rhs);
            let bound = local_global_bound(&inst.central, &inst.locals, &p, 2 * mu0 as u64).unwrap();
            assert!(bound.holds, "{}", inst.label);
            // dropping the absolute value: 2·slack = rhs − (σ₀ − Σσ_j) ≥ rhs − lhs ≥ 0
            let sigma_sum: i64 = local.iter().map(|&(s, _)| s).sum();
            assert_eq!(2 * rec.slack_inside, bound.rhs - (s0 - sigma_sum));
            assert!(rec.slack_inside >= 0);
            closed += 1;
        }
    }
    assert!(closed > 100);
}

#[test]
fn two_bounds_agree() {
    let half = CirclePoint::from_ratio(1, 2).unwrap();
    for inst in adjacency_examples().into_iter().take(40) {
        let mu0 = inst.central.mu() as u64;
        let a = local_global_bound(&inst.central, &inst.locals, &half, 2 * mu0).unwrap();
        let (s0, n0) = PencilEvaluator::new(&inst.central).evaluate(&half).unwrap();
        let (mut s1, mut n1, mut mu1) = (0, 0, 0);
        for l in &inst.locals {
            let (s, n) = PencilEvaluator::new(l).evaluate(&half).unwrap();
            s1 += s;
            n1 += n as i64;
            mu1 += l.mu() as u64;
        }
        let betti = CobordismBettiData { b_n_total: 2 * mu0, b_n_sigma0: mu0, b_n_sigma1: mu1 };
        assert_eq!(mk_bound(s0, s1, n0 as i64, n1, betti), a);
    }
}

#[test]
fn a3_to_a2_is_tight_at_minus_one() {
    let (a3, a2) = (lookup("A3").unwrap(), lookup("A2").unwrap());
    let rec = local_global_bound(&a3, &[a2], &CirclePoint::from_ratio(1, 2).unwrap(), 6).unwrap();
    assert_eq!((rec.lhs, rec.rhs, rec.holds), (1, 1, true));
}

#[test]
fn strict_curve_inequality_on_curated_curves() {
    let opts = CheckOptions { strict: true, ..Default::default() };
    for inst in adjacency_examples().into_iter().filter(|i| i.central.n() == 1) {
        let rep = check_local_with(&inst.central, &inst.locals, &opts).unwrap();
        assert!(rep.strict.iter().all(|r| r.bound.holds), "{}: {:?}", inst.label, rep.strict);
        assert_eq!(rep.verdict, Verdict::Holds);
    }
}

#[test]
fn records_are_sorted_by_alpha() {
    let rep = check_local(&lookup("A6").unwrap(), &[lookup("A2").unwrap()]).unwrap();
    let alphas: Vec<&Rat> = rep.records.iter().map(|r| &r.alpha).collect();
    assert!(alphas.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(alphas.len(), 7);
}
