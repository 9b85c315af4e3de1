//! Cross-checks against oracles written from scratch here: a fraction-free
//! determinant with Lagrange interpolation, and symmetric Gaussian
//! elimination for signatures of real forms.

use linkinv_core::catalog::{adjacency_examples, lookup};
use linkinv_core::hvs::hvs_from_seifert;
use linkinv_core::linalg::{Rat, RatMatrix, RatPoly};
use linkinv_core::signatures::{lt_nullity, lt_signature, CirclePoint};
use linkinv_core::{alexander, SeifertMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 { BigInt::one() } else { sign * &m[n - 1][n - 1] }
}

/// Interpolates `det(t·A + B)` from its values at `t = 0..=n`.
fn pencil_oracle(a: &[Vec<i64>], b: &[Vec<i64>]) -> RatPoly {
    let n = a.len();
    let points: Vec<(Rat, Rat)> = (0..=n as i64)
        .map(|t| {
            let m = (0..n).map(|i| (0..n).map(|j| BigInt::from(t * a[i][j] + b[i][j])).collect()).collect();
            (Rat::from_integer(t.into()), Rat::from_integer(bareiss_det(m)))
        })
        .collect();
    let mut out = RatPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = RatPoly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                let factor = RatPoly::new(vec![-xj.clone(), Rat::one()]);
                basis = &basis * &factor;
                basis = basis.scale(&(Rat::one() / (xi - xj)));
            }
        }
        out = &out + &basis;
    }
    out
}

fn proportional(p: &RatPoly, q: &RatPoly) -> bool {
    match (p.leading(), q.leading()) {
        (Some(a), Some(b)) => p.scale(&(Rat::one() / a)) == q.scale(&(Rat::one() / b)),
        _ => p.is_zero() && q.is_zero(),
    }
}

/// Signature of a rational symmetric matrix by congruence diagonalization.
fn symmetric_signature(mut m: Vec<Vec<Rat>>) -> (i64, usize) {
    let n = m.len();
    let mut sig = 0;
    let mut rank = 0;
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !m[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j))).find(|&(i, j)| !m[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                // row_i += row_j, col_i += col_j makes m[i][i] = 2 m[i][j]
                for k in 0..n {
                    let v = m[j][k].clone();
                    m[i][k] += v;
                }
                for k in 0..n {
                    let v = m[k][j].clone();
                    m[k][i] += v;
                }
                i
            }
        };
        let d = m[p][p].clone();
        sig += if d.is_positive() { 1 } else { -1 };
        rank += 1;
        active.retain(|&i| i != p);
        for &i in &active {
            let f = &m[i][p] / &d;
            for &j in &active {
                let v = &f * &m[p][j];
                m[i][j] -= v;
            }
        }
        for &i in &active {
            m[i][p] = Rat::zero();
            m[p][i] = Rat::zero();
        }
    }
    (sig, n - rank)
}

fn random_seifert(rng: &mut ChaCha8Rng, n: u32, max_mu: usize) -> SeifertMatrix {
    let mu = rng.gen_range(1..=max_mu);
    let rows = (0..mu).map(|_| (0..mu).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    SeifertMatrix::new(n, rows).unwrap()
}

#[test]
fn alexander_matches_interpolated_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.gen_range(1..=4);
        let s = random_seifert(&mut rng, n, 7);
        let eps = s.epsilon();
        let st: Vec<Vec<i64>> = s.transpose().rows().into_iter().map(|r| r.into_iter().map(|x| eps * x).collect()).collect();
        let oracle = pencil_oracle(&s.rows(), &st);
        if oracle.is_zero() {
            continue;
        }
        assert!(proportional(&alexander(&s).poly(), &oracle.strip_t_power()), "{:?}", s.rows());
    }
}

#[test]
fn characteristic_polynomial_of_monodromy() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checked = 0;
    while checked < 40 {
        let n = rng.gen_range(1..=4);
        let s = random_seifert(&mut rng, n, 6);
        let Ok(x) = hvs_from_seifert(&s) else { continue };
        // det(h − t) from a fresh interpolation over the rational h
        let mu = s.mu();
        let d = x.h.denominator_lcm();
        let scaled: Vec<Vec<i64>> = (0..mu)
            .map(|i| (0..mu).map(|j| i64::try_from((x.h.get(i, j) * Rat::from_integer(d.clone())).to_integer()).unwrap()).collect())
            .collect();
        let minus_id: Vec<Vec<i64>> = (0..mu).map(|i| (0..mu).map(|j| if i == j { -1 } else { 0 }).collect()).collect();
        // det(D·h − D·t) as a polynomial in u = D·t has the same roots up to scaling
        let in_u = pencil_oracle(&minus_id, &scaled);
        let d = Rat::from_integer(d);
        let in_t = RatPoly::new(in_u.coeffs().iter().enumerate().map(|(k, c)| c * num_traits::pow(d.clone(), k)).collect());
        assert!(proportional(&in_t, &alexander(&s).poly()), "{:?}", s.rows());
        checked += 1;
    }
}

fn signature_at_minus_one_oracle(s: &SeifertMatrix) -> (i64, usize) {
    // n odd: H(−1) = 2(S + S^T)
    let mu = s.mu();
    let m = (0..mu).map(|i| (0..mu).map(|j| Rat::from_integer((s.get(i, j) + s.get(j, i)).into())).collect()).collect();
    symmetric_signature(m)
}

#[test]
fn signature_at_minus_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let half = CirclePoint::from_ratio(1, 2).unwrap();
    for _ in 0..80 {
        let n = [1, 3, 5][rng.gen_range(0..3)];
        let s = random_seifert(&mut rng, n, 8);
        let (sigma, nullity) = signature_at_minus_one_oracle(&s);
        assert_eq!(lt_nullity(&s, &half).unwrap(), nullity, "{:?}", s.rows());
        assert_eq!(lt_signature(&s, &half).unwrap(), sigma, "{:?}", s.rows());
    }
    for inst in adjacency_examples().iter().filter(|i| i.central.n() % 2 == 1) {
        assert_eq!(lt_signature(&inst.central, &half).unwrap(), signature_at_minus_one_oracle(&inst.central).0);
    }
}

#[test]
fn torus_knot_signatures() {
    let half = CirclePoint::from_ratio(1, 2).unwrap();
    // T(2, k+1): σ(−1) = −k
    for k in 1..=8 {
        let s = lookup(&format!("A{k}")).unwrap();
        assert_eq!(lt_signature(&s, &half).unwrap(), -(k as i64));
    }
}

#[test]
fn symmetric_oracle_sanity() {
    let r = |x: i64| Rat::from_integer(x.into());
    assert_eq!(symmetric_signature(vec![vec![r(0), r(1)], vec![r(1), r(0)]]), (0, 0));
    assert_eq!(symmetric_signature(vec![vec![r(2), r(1)], vec![r(1), r(2)]]), (2, 0));
    assert_eq!(symmetric_signature(vec![vec![r(1), r(1)], vec![r(1), r(1)]]), (1, 1));
    let m = RatMatrix::identity(3);
    let rows = (0..3).map(|i| (0..3).map(|j| -m.get(i, j).clone()).collect()).collect();
    assert_eq!(symmetric_signature(rows), (-3, 0));
}
