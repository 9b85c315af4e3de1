//! Real root isolation for rational polynomials via Sturm sequences.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rat, RatPoly};

/// Rescales by a positive rational so the coefficients are coprime integers.
/// Unlike [`RatPoly::integer_primitive`] the sign is preserved.
fn positive_primitive(p: &RatPoly) -> RatPoly {
    if p.is_zero() {
        return RatPoly::zero();
    }
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    RatPoly::from_bigints(&ints.into_iter().map(|c| c / &content).collect::<Vec<_>>())
}

/// Sturm chain of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(p: &RatPoly) -> Self {
        let mut chain = alloc::vec![positive_primitive(p)];
        let d = positive_primitive(&p.derivative());
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(positive_primitive(&-&r));
        }
        Self { chain }
    }

    pub fn poly(&self) -> &RatPoly {
        &self.chain[0]
    }

    fn variations(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let v = p.eval(x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rat, b: &Rat) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// A non-root point of `p` strictly inside `(a, b)`: the midpoint unless
/// that is a root, then `a + (b - a)·j/k` for increasing `k`.
fn split_point(p: &RatPoly, a: &Rat, b: &Rat) -> Rat {
    for k in 2i64.. {
        for j in 1..k {
            let x = a + (b - a) * Rat::new(BigInt::from(j), BigInt::from(k));
            if !p.eval(&x).is_zero() {
                return x;
            }
        }
    }
    unreachable!()
}

/// Disjoint closed intervals with rational endpoints, each containing
/// exactly one real root of the square-free `p` in `(lo, hi)`, refined to
/// width at most `2^-bits`. Endpoints are never roots.
///
/// `lo` and `hi` must not be roots of `p`.
pub fn isolate_real_roots(p: &RatPoly, lo: &Rat, hi: &Rat, bits: u32) -> Vec<(Rat, Rat)> {
    let sturm = SturmChain::new(p);
    let p = sturm.poly().clone();
    let mut out = Vec::new();
    let mut stack = alloc::vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        match sturm.count(&a, &b) {
            0 => {}
            1 => out.push(refine(&p, a, b, bits)),
            _ => {
                let m = split_point(&p, &a, &b);
                stack.push((m.clone(), b));
                stack.push((a, m));
            }
        }
    }
    out.sort();
    out
}

/// Bisects an isolating interval of a simple root until it is narrower than `2^-bits`.
fn refine(p: &RatPoly, mut a: Rat, mut b: Rat, bits: u32) -> (Rat, Rat) {
    let target = Rat::new(BigInt::one(), BigInt::one() << bits);
    let mut sa = p.eval(&a).is_positive();
    while &b - &a > target {
        let m = split_point(p, &a, &b);
        let sm = p.eval(&m).is_positive();
        if sm == sa {
            a = m;
            sa = sm;
        } else {
            b = m;
        }
    }
    (a, b)
}
