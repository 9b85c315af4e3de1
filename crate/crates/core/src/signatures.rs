//! Levine–Tristram signatures and nullities.
//!
//! At `ξ = e^{2πiα}` the pencil is `H(ξ) = (1−ξ)S + (−1)^{n+1}(1−ξ̄)S^T`.
//! For odd `n` it is hermitian; for even `n` it is skew-hermitian and we use
//! `i·H(ξ)`. Signatures are read off numerically. Nullities at rational `α`
//! are exact. `H(ξ)` is a nonzero multiple of `ξS + (−1)^n S^T`, whose
//! nullity at a primitive `q`-th root of unity is `z + #{i : Φ_q | f_i}` for
//! the nonzero invariant factors `f_i` of the pencil and `z` the number of
//! zero ones. This is bracketed by the multiplicity of `Φ_q` in `Δ = Π f_i`
//! and by the rank modulo a prime `ℓ ≡ 1 (mod q)`; only when those leave a
//! gap is the rank computed over `Q(ζ_q)`.

use alloc::vec::Vec;
use core::cell::OnceCell;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::angle::{gap_representatives, Angle, AngleRecord};
use crate::error::{Error, Result};
use crate::linalg::cycfield::{self, CyclotomicField};
use crate::linalg::cyclotomic::{cyclotomic_factorization, unit_circle_roots_with_precision, DEFAULT_PRECISION_BITS};
use crate::linalg::inertia::{signature_with_tolerance, SIGN_SEPARATION_TOL};
use crate::linalg::modular::{self, primes_congruent_one, primitive_root_of_unity};
use crate::linalg::poly::rat_to_f64;
use crate::linalg::{hermitian_inertia, ComplexMatrix, Rat, RatMatrix, RatPoly};
use crate::seifert::{alexander, n0, SeifertMatrix};

/// A point `ξ = e^{2πiα}` of the unit circle, `0 < α < 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum CirclePoint {
    Rational(Rat),
    /// Floating-point angle; nullities are then decided numerically.
    Real(f64),
}

impl CirclePoint {
    pub fn rational(alpha: Rat) -> Result<Self> {
        if alpha <= Rat::zero() || alpha >= Rat::one() {
            return Err(Error::AngleOutOfRange(alloc::format!("{alpha}")));
        }
        Ok(Self::Rational(alpha))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::AngleOutOfRange(alloc::format!("{num}/0")));
        }
        Self::rational(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn real(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::AngleOutOfRange(alloc::format!("{alpha}")));
        }
        Ok(Self::Real(alpha))
    }

    pub fn alpha(&self) -> f64 {
        match self {
            Self::Rational(a) => rat_to_f64(a),
            Self::Real(a) => *a,
        }
    }

    pub fn xi(&self) -> Complex64 {
        let theta = 2.0 * core::f64::consts::PI * self.alpha();
        Complex64::new(libm::cos(theta), libm::sin(theta))
    }
}

/// `H(ξ)` for odd `n`, `i·H(ξ)` for even `n`.
pub fn hermitian_pencil(s: &SeifertMatrix, p: &CirclePoint) -> ComplexMatrix {
    let xi = p.xi();
    let one = Complex64::new(1.0, 0.0);
    let a = one - xi;
    // (−1)^{n+1} = −ε
    let b = (one - xi.conj()) * (-s.epsilon() as f64);
    let rot = if s.n() % 2 == 0 { Complex64::new(0.0, 1.0) } else { one };
    ComplexMatrix::from_fn(s.mu(), |i, j| (a * s.get(i, j) as f64 + b * s.get(j, i) as f64) * rot)
}

/// Evaluates signatures and nullities of one Seifert matrix, caching `n₀`.
pub struct PencilEvaluator<'a> {
    s: &'a SeifertMatrix,
    n0: OnceCell<usize>,
    generic: OnceCell<GenericNullity>,
    tol: f64,
}

/// Zero invariant factors of the pencil, and the cyclotomic part of `Δ`.
struct GenericNullity {
    zero_factors: usize,
    cyclotomic: Vec<(u64, usize)>,
}

impl<'a> PencilEvaluator<'a> {
    pub fn new(s: &'a SeifertMatrix) -> Self {
        Self { s, n0: OnceCell::new(), generic: OnceCell::new(), tol: SIGN_SEPARATION_TOL }
    }

    /// Relative eigenvalue size below which a sign decision is refused.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn n0(&self) -> usize {
        *self.n0.get_or_init(|| n0(self.s))
    }

    pub fn nullity(&self, p: &CirclePoint) -> Result<usize> {
        if self.s.mu() == 0 {
            return Ok(0);
        }
        match p {
            CirclePoint::Rational(a) => Ok(self.exact_nullity(a)),
            CirclePoint::Real(_) => Ok(hermitian_inertia(&hermitian_pencil(self.s, p), None)?.n_zero),
        }
    }

    pub fn signature(&self, p: &CirclePoint) -> Result<i64> {
        Ok(self.evaluate(p)?.0)
    }

    /// `(σ, nullity)` at `p`.
    pub fn evaluate(&self, p: &CirclePoint) -> Result<(i64, usize)> {
        if self.s.mu() == 0 {
            return Ok((0, 0));
        }
        let h = hermitian_pencil(self.s, p);
        match p {
            CirclePoint::Rational(a) => {
                let nullity = self.exact_nullity(a);
                Ok((signature_with_tolerance(&h, nullity, self.tol)?, nullity))
            }
            CirclePoint::Real(_) => {
                let inertia = hermitian_inertia(&h, Some(self.tol * h.frobenius_norm()))?;
                Ok((inertia.signature(), inertia.n_zero))
            }
        }
    }

    fn generic(&self) -> &GenericNullity {
        self.generic.get_or_init(|| {
            let delta = alexander(self.s).poly();
            let zero_factors = if self.s.is_nondegenerate() { 0 } else { self.generic_corank(&delta) };
            GenericNullity { zero_factors, cyclotomic: cyclotomic_factorization(&delta).0 }
        })
    }

    /// `μ` minus the rank of the pencil over `Q(t)`, read off at an integer
    /// `t` where `Δ(t) != 0`: there the pencil has its generic rank.
    fn generic_corank(&self, delta: &RatPoly) -> usize {
        let mu = self.s.mu();
        let eps = self.s.epsilon();
        let t = (2i64..).find(|&t| !delta.eval(&Rat::from_integer(t.into())).is_zero()).expect("finitely many roots");
        let m = RatMatrix::from_fn(mu, mu, |i, j| Rat::from_integer((t * self.s.get(i, j) + eps * self.s.get(j, i)).into()));
        mu - m.rank()
    }

    fn exact_nullity(&self, alpha: &Rat) -> usize {
        let (num, q) = (alpha.numer(), alpha.denom());
        let small = q.to_u64().filter(|&q| q < 1 << 40);
        let upper = small.map(|q64| self.modular_nullity(num.to_u64().expect("0 < alpha < 1"), q64));
        if upper == Some(0) || upper == Some(self.n0()) {
            return upper.unwrap_or_default();
        }
        let g = self.generic();
        let mult = small.and_then(|q64| g.cyclotomic.iter().find(|&&(m, _)| m == q64)).map_or(0, |&(_, k)| k);
        let lower = g.zero_factors + usize::from(mult > 0);
        if mult <= 1 || upper == Some(lower) {
            return lower;
        }
        self.nullity_over_field(alpha)
    }

    /// Nullity modulo a prime `ℓ ≡ 1 (mod q)`, an upper bound.
    fn modular_nullity(&self, num: u64, q: u64) -> usize {
        let mu = self.s.mu();
        let ell = primes_congruent_one(q).next().expect("a prime exists");
        let z = modular::pow_mod(primitive_root_of_unity(q, ell), num, ell);
        let eps_mod = if self.s.epsilon() == 1 { 1 } else { ell - 1 };
        let m: Vec<u64> = (0..mu * mu)
            .map(|k| {
                let (i, j) = (k / mu, k % mu);
                let a = self.s.get(i, j).rem_euclid(ell as i64) as u64;
                let b = self.s.get(j, i).rem_euclid(ell as i64) as u64;
                modular::add_mod(modular::mul_mod(z, a, ell), modular::mul_mod(eps_mod, b, ell), ell)
            })
            .collect();
        mu - modular::rank_mod(m, mu, mu, ell)
    }

    /// Exact nullity of `ζ^a S + (−1)^n S^T` over `Q(ζ_q)`.
    fn nullity_over_field(&self, alpha: &Rat) -> usize {
        let mu = self.s.mu();
        let q = alpha.denom().to_u64().expect("denominator too large for exact evaluation");
        let a = alpha.numer().to_i64().unwrap();
        let field = CyclotomicField::new(q);
        let z = field.zeta_pow(a);
        let eps = Rat::from_integer(self.s.epsilon().into());
        let m = (0..mu * mu)
            .map(|k| {
                let (i, j) = (k / mu, k % mu);
                let sij = Rat::from_integer(self.s.get(i, j).into());
                let sji = Rat::from_integer(self.s.get(j, i).into());
                &z.scale(&sij) + &cycfield::constant(&(&eps * &sji))
            })
            .collect();
        mu - field.rank(m, mu, mu)
    }
}

pub fn lt_signature(s: &SeifertMatrix, p: &CirclePoint) -> Result<i64> {
    PencilEvaluator::new(s).signature(p)
}

pub fn lt_nullity(s: &SeifertMatrix, p: &CirclePoint) -> Result<usize> {
    PencilEvaluator::new(s).nullity(p)
}

/// Values on one open arc between consecutive jumps.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileInterval {
    /// `None` stands for the virtual boundary 0.
    pub lower: Option<Angle>,
    /// `None` stands for the virtual boundary 1.
    pub upper: Option<Angle>,
    /// The exact point where the values were computed.
    pub sample: Rat,
    pub sigma: i64,
    pub nullity: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointValue {
    pub sigma: i64,
    pub nullity: usize,
}

/// Piecewise-constant signature and nullity over `α ∈ (0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignatureProfile {
    pub mu: usize,
    pub n0: usize,
    /// Unit-circle roots of the Alexander polynomial inside `(0, 1)`.
    pub jumps: Vec<AngleRecord>,
    /// `jumps.len() + 1` arcs in increasing order.
    pub intervals: Vec<ProfileInterval>,
    /// Values at the jumps, when requested; `None` entries for irrational angles.
    pub at_jumps: Option<Vec<Option<PointValue>>>,
}

impl SignatureProfile {
    /// Index of the arc containing `alpha`, or `None` if `alpha` may be a jump.
    pub fn interval_index(&self, alpha: &Rat) -> Option<usize> {
        let mut idx = 0;
        for j in &self.jumps {
            if j.angle.may_equal(alpha) {
                return None;
            }
            if j.angle.is_below(alpha) {
                idx += 1;
            }
        }
        Some(idx)
    }

    /// `f(α) = (μ − σ)/2` on each arc.
    pub fn half_defects(&self) -> Vec<i64> {
        self.intervals.iter().map(|iv| (self.mu as i64 - iv.sigma) / 2).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileOptions {
    pub evaluate_jumps: bool,
    /// Bits of precision for irrational jump enclosures.
    pub precision_bits: u32,
    /// See [`PencilEvaluator::with_tolerance`].
    pub tolerance: f64,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        Self { evaluate_jumps: false, precision_bits: DEFAULT_PRECISION_BITS, tolerance: SIGN_SEPARATION_TOL }
    }
}

pub fn signature_profile(s: &SeifertMatrix) -> Result<SignatureProfile> {
    signature_profile_with(s, &ProfileOptions::default())
}

pub fn signature_profile_with(s: &SeifertMatrix, opts: &ProfileOptions) -> Result<SignatureProfile> {
    let delta = alexander(s).poly();
    let jumps: Vec<AngleRecord> = unit_circle_roots_with_precision(&delta, opts.precision_bits)
        .into_iter()
        .filter(|r| r.angle.exact().is_none_or(|a| a < &Rat::one()))
        .collect();
    profile_for_jumps(s, jumps, opts)
}

/// Profile with known jump angles (sorted, inside `(0, 1)`).
pub(crate) fn profile_for_jumps(s: &SeifertMatrix, jumps: Vec<AngleRecord>, opts: &ProfileOptions) -> Result<SignatureProfile> {
    let ev = PencilEvaluator::new(s).with_tolerance(opts.tolerance);
    let cuts: Vec<Angle> = jumps.iter().map(|r| r.angle.clone()).collect();
    let mut intervals = Vec::with_capacity(cuts.len() + 1);
    for (k, sample) in gap_representatives(&cuts).into_iter().enumerate() {
        let (sigma, nullity) = ev.evaluate(&CirclePoint::rational(sample.clone())?)?;
        intervals.push(ProfileInterval {
            lower: k.checked_sub(1).map(|i| cuts[i].clone()),
            upper: cuts.get(k).cloned(),
            sample,
            sigma,
            nullity,
        });
    }
    let at_jumps = if opts.evaluate_jumps {
        let mut vals = Vec::with_capacity(cuts.len());
        for c in &cuts {
            vals.push(match c.exact() {
                Some(a) => {
                    let (sigma, nullity) = ev.evaluate(&CirclePoint::rational(a.clone())?)?;
                    Some(PointValue { sigma, nullity })
                }
                None => None,
            });
        }
        Some(vals)
    } else {
        None
    };
    Ok(SignatureProfile { mu: s.mu(), n0: ev.n0(), jumps, intervals, at_jumps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn trefoil() -> SeifertMatrix {
        SeifertMatrix::new(1, vec![vec![-1, 1], vec![0, -1]]).unwrap()
    }

    fn at(a: i64, b: i64) -> CirclePoint {
        CirclePoint::from_ratio(a, b).unwrap()
    }

    #[test]
    fn rejects_boundary_angles() {
        assert!(CirclePoint::from_ratio(0, 1).is_err());
        assert!(CirclePoint::from_ratio(1, 1).is_err());
        assert!(CirclePoint::real(1.5).is_err());
    }

    #[test]
    fn pencil_at_minus_one() {
        let h = hermitian_pencil(&trefoil(), &at(1, 2));
        let want = [[-4.0, 2.0], [2.0, -4.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((h.get(i, j) - Complex64::new(want[i][j], 0.0)).norm() < 1e-12);
            }
        }
        assert_eq!(hermitian_pencil(&SeifertMatrix::empty(1), &at(1, 3)).size(), 0);
    }

    #[test]
    fn trefoil_values() {
        let s = trefoil();
        assert_eq!(lt_signature(&s, &at(1, 2)).unwrap(), -2);
        assert_eq!(lt_signature(&s, &at(1, 12)).unwrap(), 0);
        assert_eq!(lt_nullity(&s, &at(1, 2)).unwrap(), 0);
        assert_eq!(lt_nullity(&s, &at(1, 6)).unwrap(), 1);
        assert_eq!(lt_nullity(&s.padded(2), &at(1, 2)).unwrap(), 2);
    }

    #[test]
    fn exact_and_field_nullity_agree() {
        let s = trefoil().padded(1);
        let ev = PencilEvaluator::new(&s);
        for (a, b) in [(1, 6), (5, 6), (1, 2), (1, 3)] {
            let alpha = Rat::new(a.into(), b.into());
            assert_eq!(ev.exact_nullity(&alpha), ev.nullity_over_field(&alpha));
        }
    }

    #[test]
    fn trefoil_profile() {
        let p = signature_profile_with(&trefoil(), &ProfileOptions { evaluate_jumps: true, ..Default::default() }).unwrap();
        let jumps: Vec<Angle> = p.jumps.iter().map(|r| r.angle.clone()).collect();
        assert_eq!(jumps, [Angle::from_ratio(1, 6), Angle::from_ratio(5, 6)]);
        let sig: Vec<i64> = p.intervals.iter().map(|iv| iv.sigma).collect();
        assert_eq!(sig, [0, -2, 0]);
        assert!(p.intervals.iter().all(|iv| iv.nullity == 0));
        let at = p.at_jumps.unwrap();
        assert_eq!(at[0], Some(PointValue { sigma: -1, nullity: 1 }));
    }

    #[test]
    fn empty_profile() {
        let p = signature_profile(&SeifertMatrix::empty(3)).unwrap();
        assert!(p.jumps.is_empty());
        assert_eq!(p.intervals.len(), 1);
        assert_eq!((p.intervals[0].sigma, p.intervals[0].nullity), (0, 0));
        assert_eq!(p.intervals[0].sample, Rat::new(1.into(), 2.into()));
    }

    #[test]
    fn nullity_bracket_paths() {
        let t = trefoil();
        // huge dyadic denominator: no modular bound, Φ_q does not divide Δ
        let alpha = Rat::new(BigInt::from(3) * BigInt::from(1u64 << 50) + 1, BigInt::from(1u64 << 52));
        let p = CirclePoint::rational(alpha).unwrap();
        assert_eq!(PencilEvaluator::new(&t.padded(2)).nullity(&p).unwrap(), 2);
        // a repeated cyclotomic factor
        let double = t.direct_sum(&t).unwrap().padded(1);
        assert_eq!(PencilEvaluator::new(&double).nullity(&at(1, 6)).unwrap(), 3);
        assert_eq!(PencilEvaluator::new(&double).nullity(&at(1, 3)).unwrap(), 1);
    }

    #[test]
    fn bracket_agrees_with_field_rank() {
        // deterministic pseudo-random small forms, every exact jump checked
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 5) as i64 - 2
        };
        for round in 0..60 {
            let mu = 1 + round % 5;
            let rows = (0..mu).map(|_| (0..mu).map(|_| next()).collect()).collect();
            let s = SeifertMatrix::new(1 + (round % 3) as u32, rows).unwrap();
            let ev = PencilEvaluator::new(&s);
            let delta = alexander(&s).poly();
            for r in unit_circle_roots_with_precision(&delta, 64) {
                if let Some(a) = r.angle.exact().filter(|a| *a < &Rat::one()) {
                    assert_eq!(ev.exact_nullity(a), ev.nullity_over_field(a), "{:?} at {a}", s.rows());
                }
            }
        }
    }
}
