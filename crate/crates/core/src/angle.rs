//! Real numbers known exactly or through a certified rational enclosure.
//!
//! Angles on the unit circle are measured in turns: `α` stands for
//! `e^{2πiα}`. Spectral numbers share the representation.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::poly::rat_to_f64;
use crate::linalg::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Angle {
    Exact(Rat),
    /// The true value lies in the closed interval `[lo, hi]`, `lo < hi`.
    Enclosure { lo: Rat, hi: Rat },
}

impl Angle {
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::Exact(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            Self::Exact(x) => Some(x),
            Self::Enclosure { .. } => None,
        }
    }

    pub fn lower(&self) -> &Rat {
        match self {
            Self::Exact(x) => x,
            Self::Enclosure { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> &Rat {
        match self {
            Self::Exact(x) => x,
            Self::Enclosure { hi, .. } => hi,
        }
    }

    /// Midpoint of the enclosure (the value itself when exact).
    pub fn midpoint(&self) -> Rat {
        match self {
            Self::Exact(x) => x.clone(),
            Self::Enclosure { lo, hi } => (lo + hi) / Rat::from_integer(2.into()),
        }
    }

    pub fn approx(&self) -> f64 {
        rat_to_f64(&self.midpoint())
    }

    pub fn width(&self) -> Rat {
        self.upper() - self.lower()
    }

    /// `self + k`.
    pub fn shifted(&self, k: &Rat) -> Self {
        match self {
            Self::Exact(x) => Self::Exact(x + k),
            Self::Enclosure { lo, hi } => Self::Enclosure { lo: lo + k, hi: hi + k },
        }
    }

    /// `1 - self`.
    pub fn reflected(&self) -> Self {
        let one = Rat::one();
        match self {
            Self::Exact(x) => Self::Exact(&one - x),
            Self::Enclosure { lo, hi } => Self::Enclosure { lo: &one - hi, hi: &one - lo },
        }
    }

    /// True when `x` may coincide with the value.
    pub fn may_equal(&self, x: &Rat) -> bool {
        self.lower() <= x && x <= self.upper()
    }

    /// True when the value is certainly `< x`.
    pub fn is_below(&self, x: &Rat) -> bool {
        self.upper() < x
    }

    /// True when the value is certainly `> x`.
    pub fn is_above(&self, x: &Rat) -> bool {
        self.lower() > x
    }

    /// The `(numerator, denominator)` of an exact angle when both fit in `u64`.
    pub fn small_ratio(&self) -> Option<(u64, u64)> {
        use num_traits::ToPrimitive;
        let x = self.exact()?;
        Some((x.numer().to_u64()?, x.denom().to_u64()?))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by lower endpoint, then upper endpoint. For disjoint enclosures
/// this is the order of the underlying values.
impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lower().cmp(other.lower()).then_with(|| self.upper().cmp(other.upper()))
    }
}

/// Formats a rational as `p/q` (always with an explicit denominator).
pub fn format_ratio(x: &Rat) -> alloc::string::String {
    alloc::format!("{}/{}", x.numer(), x.denom())
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(x) => write!(f, "{}/{}", x.numer(), x.denom()),
            Self::Enclosure { .. } => write!(f, "{:.15}", self.approx()),
        }
    }
}

/// An angle together with a multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AngleRecord {
    pub angle: Angle,
    pub multiplicity: usize,
}

impl AngleRecord {
    pub fn new(angle: Angle, multiplicity: usize) -> Self {
        Self { angle, multiplicity }
    }
}

/// Rational with the smallest denominator in the open interval `(a, b)`,
/// `a < b`, by continued-fraction descent.
pub fn simplest_between(a: &Rat, b: &Rat) -> Rat {
    assert!(a < b);
    let one = Rat::one();
    let fl = a.floor();
    if &(&fl + &one) < b {
        // an integer lies strictly inside; take the one nearest zero
        return if a < &Rat::zero() && b > &Rat::zero() {
            Rat::zero()
        } else if a >= &Rat::zero() {
            fl + one
        } else {
            b.ceil() - one
        };
    }
    let (fa, fb) = (a - &fl, b - &fl);
    if fa.is_zero() {
        return fl + (fb.recip().floor() + one).recip();
    }
    fl + simplest_between(&fb.recip(), &fa.recip()).recip()
}

/// One representative per open gap of `(0, 1)` cut at the sorted, disjoint
/// `cuts` (0 and 1 act as outer cuts). Between two exact cuts this is the
/// midpoint; next to an enclosure it is the simplest rational in the middle
/// half of the gap between the enclosures.
pub fn gap_representatives(cuts: &[Angle]) -> Vec<Rat> {
    let zero = Angle::Exact(Rat::zero());
    let one = Angle::Exact(Rat::one());
    let mut bounds: Vec<&Angle> = Vec::with_capacity(cuts.len() + 2);
    bounds.push(&zero);
    bounds.extend(cuts);
    bounds.push(&one);
    bounds
        .windows(2)
        .map(|w| {
            let (lo, hi) = (w[0].upper(), w[1].lower());
            match (w[0], w[1]) {
                (Angle::Exact(_), Angle::Exact(_)) => (lo + hi) / Rat::from_integer(2.into()),
                _ => {
                    let quarter = (hi - lo) / Rat::from_integer(4.into());
                    simplest_between(&(lo + &quarter), &(hi - &quarter))
                }
            }
        })
        .collect()
}
