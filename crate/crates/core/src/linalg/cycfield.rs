//! Exact arithmetic in the cyclotomic field `Q(ζ_q) = Q[x]/Φ_q(x)`.
//!
//! Only what exact rank computation needs: ring operations, inverses by the
//! extended Euclidean algorithm, and Gaussian elimination.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::cyclotomic::cyclotomic_polynomial;
use super::{Rat, RatPoly};

/// The field `Q(ζ_q)`, carrying its defining polynomial.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    q: u64,
    modulus: RatPoly,
}

impl CyclotomicField {
    pub fn new(q: u64) -> Self {
        Self { q, modulus: cyclotomic_polynomial(q) }
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn reduce(&self, p: &RatPoly) -> RatPoly {
        p.rem(&self.modulus)
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> RatPoly {
        let e = k.rem_euclid(self.q as i64) as usize;
        self.reduce(&RatPoly::monomial(Rat::one(), e))
    }

    pub fn mul(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        self.reduce(&(a * b))
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: &RatPoly) -> RatPoly {
        assert!(!a.is_zero(), "inverse of zero in a cyclotomic field");
        // s·a ≡ g (mod Φ_q) with g a nonzero constant, since Φ_q is irreducible
        let (mut r0, mut r1) = (self.modulus.clone(), a.clone());
        let (mut s0, mut s1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (quot, rem) = r0.div_rem(&r1);
            let s2 = &s0 - &(&quot * &s1);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        debug_assert_eq!(r0.degree(), Some(0));
        self.reduce(&s0.scale(&r0.coeff(0).recip()))
    }

    /// Rank of a row-major `rows × cols` matrix with entries in the field.
    pub fn rank(&self, mut m: Vec<RatPoly>, rows: usize, cols: usize) -> usize {
        assert_eq!(m.len(), rows * cols);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            // prefer the pivot of smallest degree; cheaper inverse
            let piv = (rank..rows)
                .filter(|&i| !m[i * cols + c].is_zero())
                .min_by_key(|&i| m[i * cols + c].degree());
            let Some(piv) = piv else { continue };
            if piv != rank {
                for j in 0..cols {
                    m.swap(piv * cols + j, rank * cols + j);
                }
            }
            let inv = self.inv(&m[rank * cols + c]);
            for j in c..cols {
                let v = self.mul(&m[rank * cols + j], &inv);
                m[rank * cols + j] = v;
            }
            for i in rank + 1..rows {
                let f = m[i * cols + c].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let sub = self.mul(&f, &m[rank * cols + j]);
                    let v = &m[i * cols + j] - &sub;
                    m[i * cols + j] = v;
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Embeds a rational into the field.
pub fn constant(x: &Rat) -> RatPoly {
    if x.is_zero() {
        RatPoly::zero()
    } else {
        RatPoly::constant(x.clone())
    }
}
