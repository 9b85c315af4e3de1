//! Cyclotomic polynomials and roots of rational polynomials on the unit circle.
//!
//! Cyclotomic factors are split off by trial division and yield exact
//! rational angles. What remains is reduced to its reciprocal part, mapped
//! through `x = t + 1/t` and its real roots in `(-2, 2)` are isolated; those
//! give certified enclosures of the remaining angles.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::poly::rat_to_f64;
use super::realroot::isolate_real_roots;
use super::{Rat, RatPoly};
use crate::angle::{Angle, AngleRecord};

/// Default width of the `x = t + 1/t` isolating intervals, as a power of two.
pub const DEFAULT_PRECISION_BITS: u32 = 64;

pub fn euler_phi(mut m: u64) -> u64 {
    let mut out = m;
    let mut f = 2;
    while f * f <= m {
        if m % f == 0 {
            while m % f == 0 {
                m /= f;
            }
            out -= out / f;
        }
        f += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

fn mobius(mut m: u64) -> i8 {
    let mut sign = 1;
    let mut f = 2;
    while f * f <= m {
        if m % f == 0 {
            m /= f;
            if m % f == 0 {
                return 0;
            }
            sign = -sign;
        }
        f += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// The `m`-th cyclotomic polynomial, from `Φ_m = Π_{d | m} (t^d − 1)^{μ(m/d)}`.
pub fn cyclotomic_polynomial(m: u64) -> RatPoly {
    assert!(m >= 1);
    let divisors: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    // multiply first so every division below is exact
    for &d in &divisors {
        if mobius(m / d) == 1 {
            let d = d as usize;
            let mut next = vec![BigInt::zero(); c.len() + d];
            for (k, a) in c.iter().enumerate() {
                next[k + d] += a;
                next[k] -= a;
            }
            c = next;
        }
    }
    for &d in &divisors {
        if mobius(m / d) == -1 {
            // q·(t^d − 1) = c, so q_k = q_{k−d} − c_k
            let d = d as usize;
            let len = c.len() - d;
            let mut q: Vec<BigInt> = Vec::with_capacity(len);
            for k in 0..len {
                let prev = if k >= d { q[k - d].clone() } else { BigInt::zero() };
                q.push(prev - &c[k]);
            }
            c = q;
        }
    }
    RatPoly::from_bigints(&c)
}

/// Orders `m` with `φ(m) <= deg`, increasing.
fn candidate_orders(deg: usize) -> Vec<u64> {
    // φ(m) >= sqrt(m / 2)
    let top = 2 * (deg as u64) * (deg as u64) + 2;
    (1..=top).filter(|&m| euler_phi(m) as usize <= deg).collect()
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Roots of a polynomial located on the unit circle, and what is left over.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleRoots {
    /// Sorted by angle, angles in `(0, 1]`.
    pub roots: Vec<AngleRecord>,
    /// Number of roots (with multiplicity) off the unit circle, including zero.
    pub off_circle: usize,
}

/// All roots of `p` on the unit circle as angles in `(0, 1]` with
/// multiplicity. Panics on the zero polynomial.
pub fn unit_circle_roots(p: &RatPoly) -> Vec<AngleRecord> {
    circle_roots(p, DEFAULT_PRECISION_BITS).roots
}

pub fn unit_circle_roots_with_precision(p: &RatPoly, bits: u32) -> Vec<AngleRecord> {
    circle_roots(p, bits).roots
}

/// Splits off all cyclotomic factors: returns `(m, multiplicity)` pairs in
/// increasing `m` and the cofactor. `p` must be nonzero with `p(0) != 0`.
pub fn cyclotomic_factorization(p: &RatPoly) -> (Vec<(u64, usize)>, RatPoly) {
    let mut rest = p.clone();
    let mut found = Vec::new();
    for m in candidate_orders(rest.degree().unwrap_or(0)) {
        let d = euler_phi(m) as usize;
        if rest.degree().unwrap_or(0) < d || !may_vanish_at_root_of_unity(&rest, m) {
            continue;
        }
        let phi = cyclotomic_polynomial(m);
        let mut mult = 0;
        while let Some(q) = rest.exact_div(&phi) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            found.push((m, mult));
        }
    }
    (found, rest)
}

/// Primitive `m`-th roots of unity as angles `k/m`, `gcd(k, m) = 1`, `1 <= k <= m`.
pub fn primitive_angles(m: u64) -> Vec<Angle> {
    (1..=m).filter(|&k| gcd_u64(k, m) == 1).map(|k| Angle::from_ratio(k as i64, m as i64)).collect()
}

/// Splits the roots of `p` into on-circle angles and an off-circle count.
pub fn circle_roots(p: &RatPoly, bits: u32) -> CircleRoots {
    let deg = p.degree().expect("unit_circle_roots of the zero polynomial");
    let (cyclo, rest) = cyclotomic_factorization(&p.strip_t_power());
    let mut roots = Vec::new();
    let mut on_circle = 0;
    for (m, mult) in cyclo {
        on_circle += mult * euler_phi(m) as usize;
        roots.extend(primitive_angles(m).into_iter().map(|a| AngleRecord::new(a, mult)));
    }
    if rest.degree().unwrap_or(0) > 0 {
        for (factor, mult) in rest.squarefree_decomposition() {
            for angle in non_cyclotomic_angles(&factor, bits) {
                on_circle += mult;
                roots.push(AngleRecord::new(angle, mult));
            }
        }
    }
    roots.sort();
    CircleRoots { roots, off_circle: deg - on_circle }
}

/// Cheap floating-point filter: false only if `p(e^{2πi/m}) != 0` for sure.
fn may_vanish_at_root_of_unity(p: &RatPoly, m: u64) -> bool {
    let theta = 2.0 * core::f64::consts::PI / m as f64;
    let z = Complex64::new(libm::cos(theta), libm::sin(theta));
    let scale: f64 = p.coeffs().iter().map(|c| rat_to_f64(c).abs()).sum();
    p.eval_complex(z).norm() <= 1e-6 * scale.max(1.0)
}

/// Unit-circle roots of a square-free `f` with no cyclotomic factor, as
/// enclosures, both `α` and `1 − α` for each root pair.
fn non_cyclotomic_angles(f: &RatPoly, bits: u32) -> Vec<Angle> {
    let g = f.gcd(&f.reversed());
    let Some(deg) = g.degree() else {
        return Vec::new();
    };
    if deg == 0 || deg % 2 == 1 {
        // odd reciprocal parts have a root at ±1, already split off
        return Vec::new();
    }
    let half = deg / 2;
    let c = g.coeffs();
    // t^{-d} g(t) = c_d + Σ_{j≥1} c_{d+j} (t^j + t^{-j}); t^j + t^{-j} = D_j(x)
    let x = RatPoly::t();
    let two = RatPoly::from_i64(&[2]);
    let mut d_prev = two;
    let mut d_cur = x.clone();
    let mut big_g = RatPoly::constant(c[half].clone());
    for j in 1..=half {
        big_g = &big_g + &d_cur.scale(&c[half + j]);
        let next = &(&x * &d_cur) - &d_prev;
        d_prev = d_cur;
        d_cur = next;
    }
    let lo = Rat::from_integer((-2).into());
    let hi = Rat::from_integer(2.into());
    let mut out = Vec::new();
    for (xa, xb) in isolate_real_roots(&big_g, &lo, &hi, bits) {
        let (a_lo, a_hi) = acos_turns_enclosure(&xb, &xa);
        let angle = Angle::Enclosure { lo: a_lo, hi: a_hi };
        out.push(angle.reflected());
        out.push(angle);
    }
    out
}

/// Encloses `acos(x/2) / 2π` for `x` in `[x_lo, x_hi]` (note the map is
/// decreasing), rounding outward beyond the floating-point error.
fn acos_turns_enclosure(x_hi: &Rat, x_lo: &Rat) -> (Rat, Rat) {
    let turns = |x: &Rat| {
        let v = (rat_to_f64(x) / 2.0).clamp(-1.0, 1.0);
        libm::acos(v) / (2.0 * core::f64::consts::PI)
    };
    // error in x/2 of one ulp is amplified by 1/sqrt(1 - v^2) near ±1
    let slack = |x: &Rat| {
        let v = (rat_to_f64(x) / 2.0).clamp(-1.0, 1.0);
        let gap = (1.0 - v * v).max(1e-300);
        1e-14 + 4.0 * f64::EPSILON / libm::sqrt(gap)
    };
    let lo = turns(x_hi) - slack(x_hi);
    let hi = turns(x_lo) + slack(x_lo);
    let lo = Rat::from_float(lo.max(0.0)).unwrap_or_else(Rat::zero);
    let hi = Rat::from_float(hi.min(0.5)).unwrap_or_else(|| Rat::new(1.into(), 2.into()));
    (lo, hi)
}

/// Approximate roots of `p` (Aberth iteration), for diagnostics only.
pub fn approximate_roots(p: &RatPoly) -> Vec<Complex64> {
    let Some(n) = p.degree() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let lead = rat_to_f64(p.leading().unwrap());
    let c: Vec<Complex64> = p.coeffs().iter().map(|a| Complex64::new(rat_to_f64(a) / lead, 0.0)).collect();
    let eval = |z: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for a in c.iter().rev() {
            d = d * z + v;
            v = v * z + a;
        }
        (v, d)
    };
    let radius = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius.min(2.0), 2.0 * core::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let repulse: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulse);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm());
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Off-circle roots of `p`, approximately, most distant from the circle
/// first. `count` comes from an exact [`circle_roots`] call.
pub fn off_circle_roots(p: &RatPoly, count: usize) -> Vec<Complex64> {
    let mut z = approximate_roots(p);
    z.sort_by(|a, b| (b.norm() - 1.0).abs().total_cmp(&(a.norm() - 1.0).abs()));
    z.truncate(count);
    z
}
