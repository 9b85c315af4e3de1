//! The mod-2 spectrum: a multiset of numbers in `(0, 2]`.
//!
//! Two routes lead to it. [`extract_spectrum`] reads it off the signature
//! profile, since `|Sp ∩ (α, α+1)| = (μ − σ(α))/2` away from eigenvalue
//! angles: each jump of the profile at an eigenvalue angle `θ` splits the
//! multiplicity of `θ` between the values `θ` and `θ + 1`.
//! [`spectrum_from_decomposition`] evaluates the block formula on explicit
//! decomposition data.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::angle::{Angle, AngleRecord};
use crate::error::{Error, Result};
use crate::linalg::cyclotomic::{circle_roots, off_circle_roots, CircleRoots};
use crate::linalg::{Rat, RatPoly};
use crate::seifert::SeifertMatrix;
use crate::signatures::{profile_for_jumps, ProfileOptions};

fn two() -> Rat {
    Rat::from_integer(BigInt::from(2))
}

/// Sorted multiset of spectral numbers in `(0, 2]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Spectrum {
    entries: Vec<AngleRecord>,
}

impl Spectrum {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts, merges equal values and drops zero multiplicities.
    pub fn new(entries: Vec<AngleRecord>) -> Result<Self> {
        for e in &entries {
            if !e.angle.is_above(&Rat::zero()) || e.angle.is_above(&two()) {
                return Err(Error::OutOfRange(format!("spectral value {} not in (0, 2]", e.angle)));
            }
        }
        let mut entries: Vec<AngleRecord> = entries.into_iter().filter(|e| e.multiplicity > 0).collect();
        entries.sort();
        let mut merged: Vec<AngleRecord> = Vec::with_capacity(entries.len());
        for e in entries {
            match merged.last_mut() {
                Some(last) if last.angle == e.angle => last.multiplicity += e.multiplicity,
                _ => merged.push(e),
            }
        }
        Ok(Self { entries: merged })
    }

    pub fn from_rationals(values: &[Rat]) -> Result<Self> {
        Self::new(values.iter().map(|v| AngleRecord::new(Angle::Exact(v.clone()), 1)).collect())
    }

    pub fn entries(&self) -> &[AngleRecord] {
        &self.entries
    }

    /// Total multiplicity.
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Values reduced mod 1 into `(0, 1]`, i.e. the monodromy eigenvalue angles.
    pub fn angles_mod_one(&self) -> Vec<AngleRecord> {
        let one = Rat::one();
        let shifted = self
            .entries
            .iter()
            .map(|e| {
                let a = if e.angle.is_above(&one) { e.angle.shifted(&-&one) } else { e.angle.clone() };
                AngleRecord::new(a, e.multiplicity)
            })
            .collect();
        Self::new(shifted).map(|s| s.entries).unwrap_or_default()
    }

    /// Multiset sum.
    pub fn union(&self, other: &Self) -> Self {
        let mut all = self.entries.clone();
        all.extend(other.entries.iter().cloned());
        Self::new(all).expect("both inputs valid")
    }
}

/// `(|Sp ∩ (α, α+1)|, |Sp ∖ [α, α+1]|)` for `α ∈ [0, 1]`. Enclosed values
/// are placed by their midpoint; they never straddle a rational `α` chosen
/// away from them.
pub fn interval_count(sp: &Spectrum, alpha: &Rat) -> (usize, usize) {
    let hi = alpha + Rat::one();
    let (mut inside, mut outside) = (0, 0);
    for e in sp.entries() {
        let v = e.angle.midpoint();
        if &v > alpha && v < hi {
            inside += e.multiplicity;
        } else if &v < alpha || v > hi {
            outside += e.multiplicity;
        }
    }
    (inside, outside)
}

/// Folds values in `(0, n + 1)` into `(0, 2]` by subtracting even integers.
pub fn mod2_reduce(values: &[Rat], n: u32) -> Result<Spectrum> {
    let top = Rat::from_integer(BigInt::from(n + 1));
    let mut folded = Vec::with_capacity(values.len());
    for v in values {
        if v <= &Rat::zero() || v >= &top {
            return Err(Error::OutOfRange(format!("{v} not in (0, {})", n + 1)));
        }
        // v − 2k with k = ⌈v/2⌉ − 1
        let k = (v / two()).ceil() - Rat::one();
        folded.push(v - k * two());
    }
    Spectrum::from_rationals(&folded)
}

/// Eigenvalue angles of the monodromy of a nonsingular `S`, as roots of
/// `det(t·S + (−1)^n S^T)`, with the off-circle count.
pub fn monodromy_angles(s: &SeifertMatrix, bits: u32) -> Result<(CircleRoots, RatPoly)> {
    let det = s.pencil_determinant();
    if det[s.mu()].is_zero() {
        return Err(Error::Singular);
    }
    let char_poly = RatPoly::from_bigints(&det);
    Ok((circle_roots(&char_poly, bits), char_poly))
}

pub fn extract_spectrum(s: &SeifertMatrix) -> Result<Spectrum> {
    extract_spectrum_with(s, &ProfileOptions::default())
}

pub fn extract_spectrum_with(s: &SeifertMatrix, opts: &ProfileOptions) -> Result<Spectrum> {
    let bits = opts.precision_bits;
    let mu = s.mu();
    if mu == 0 {
        return Ok(Spectrum::empty());
    }
    let (roots, char_poly) = monodromy_angles(s, bits)?;
    if roots.off_circle > 0 {
        let example = off_circle_roots(&char_poly, roots.off_circle).first().map(|z| (z.re, z.im));
        return Err(Error::OffCircle { count: roots.off_circle, example });
    }
    let one = Rat::one();
    let (jumps, at_one): (Vec<AngleRecord>, Vec<AngleRecord>) =
        roots.roots.into_iter().partition(|r| r.angle.exact() != Some(&one));
    let mu_one = at_one.first().map_or(0, |r| r.multiplicity) as i64;
    let opts = ProfileOptions { evaluate_jumps: false, ..*opts };
    let profile = profile_for_jumps(s, jumps, &opts)?;

    let mut f = Vec::with_capacity(profile.intervals.len());
    for iv in &profile.intervals {
        let defect = mu as i64 - iv.sigma;
        if defect % 2 != 0 || iv.nullity != 0 {
            return Err(Error::Calibration(format!(
                "sigma {} and nullity {} at alpha = {} are inconsistent with mu = {mu}",
                iv.sigma, iv.nullity, iv.sample
            )));
        }
        f.push(defect / 2);
    }

    let split = |total: i64, diff: i64, what: &dyn core::fmt::Display| -> Result<(usize, usize)> {
        // lo − hi = diff, lo + hi = total
        if (total + diff) % 2 != 0 || total + diff < 0 || total - diff < 0 {
            return Err(Error::Calibration(format!("multiplicities at {what} from total {total}, difference {diff}")));
        }
        Ok((((total + diff) / 2) as usize, ((total - diff) / 2) as usize))
    };

    let mut entries = Vec::new();
    for (i, jump) in profile.jumps.iter().enumerate() {
        // m(θ) − m(θ+1) = −J
        let jump_size = f[i + 1] - f[i];
        let (low, high) = split(jump.multiplicity as i64, -jump_size, &jump.angle)?;
        entries.push(AngleRecord::new(jump.angle.clone(), low));
        entries.push(AngleRecord::new(jump.angle.shifted(&one), high));
    }
    // value 1 is counted by both f(0+) and f(1−), value 2 by neither
    let seam = f[0] + f[f.len() - 1] - mu as i64;
    let (at_1, at_2) = split(mu_one, seam, &"1")?;
    entries.push(AngleRecord::new(Angle::Exact(one), at_1));
    entries.push(AngleRecord::new(Angle::Exact(two()), at_2));
    Spectrum::new(entries)
}

/// `p^k_λ(u)` data: `count` copies of `W^k_λ(u)`, `λ = e^{2πi·angle}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitBlock {
    /// In `(0, 1]`.
    pub angle: Angle,
    pub size: usize,
    pub u: i8,
    pub count: usize,
}

/// `q^k_λ` data: `count` copies of `V^{2k}_λ`, `0 < |λ| < 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct OffCircleBlock {
    pub modulus: f64,
    /// `arg λ / 2π` in `(0, 1]`.
    pub angle: Angle,
    pub size: usize,
    pub count: usize,
}

/// One entry `z = α + iβ` of the imaginary part of the extended spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct IspEntry {
    pub re: Angle,
    pub im: f64,
    pub multiplicity: usize,
}

fn check_angle(a: &Angle) -> Result<()> {
    if !a.is_above(&Rat::zero()) || a.is_above(&Rat::one()) {
        return Err(Error::MalformedBlocks(format!("eigenvalue angle {a} not in (0, 1]")));
    }
    Ok(())
}

/// Multiplicity that one copy of `W^k_λ(u)` contributes at `α`, where
/// `⌊α⌋` is passed as `floor`.
fn block_weight(size: usize, u: i8, floor: i64) -> usize {
    if size % 2 == 1 {
        let sign = if floor % 2 == 0 { 1 } else { -1 };
        ((size as i64 - u as i64 * sign) / 2) as usize
    } else {
        size / 2
    }
}

pub fn spectrum_from_decomposition(p: &[UnitBlock], q: &[OffCircleBlock]) -> Result<(Spectrum, Vec<IspEntry>)> {
    let one = Rat::one();
    let mut entries = Vec::new();
    for b in p {
        check_angle(&b.angle)?;
        if b.size == 0 || (b.u != 1 && b.u != -1) {
            return Err(Error::MalformedBlocks(format!("block size {} with sign {}", b.size, b.u)));
        }
        let floor = if b.angle.exact() == Some(&one) { 1 } else { 0 };
        entries.push(AngleRecord::new(b.angle.clone(), b.count * block_weight(b.size, b.u, floor)));
        entries.push(AngleRecord::new(b.angle.shifted(&one), b.count * block_weight(b.size, b.u, floor + 1)));
    }
    let mut isp: Vec<IspEntry> = Vec::new();
    for b in q {
        check_angle(&b.angle)?;
        if !(b.modulus > 0.0 && b.modulus < 1.0) || b.size == 0 {
            return Err(Error::MalformedBlocks(format!("|lambda| = {} with block size {}", b.modulus, b.size)));
        }
        let beta = -libm::log(b.modulus) / (2.0 * core::f64::consts::PI);
        let m = b.size * b.count;
        for (re, im) in [(b.angle.clone(), beta), (b.angle.shifted(&one), -beta)] {
            match isp.iter_mut().find(|e| e.re == re && e.im == im) {
                Some(e) => e.multiplicity += m,
                None => isp.push(IspEntry { re, im, multiplicity: m }),
            }
        }
    }
    isp.sort_by(|a, b| a.re.cmp(&b.re).then(b.im.total_cmp(&a.im)));
    Ok((Spectrum::new(entries)?, isp))
}
