//! Signature bounds for cobordant links and semicontinuity of the mod-2 spectrum.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::angle::{gap_representatives, Angle, AngleRecord};
use crate::error::{Error, Result};
use crate::linalg::Rat;
use crate::seifert::SeifertMatrix;
use crate::signatures::{CirclePoint, PencilEvaluator, ProfileOptions};
use crate::spectrum::{extract_spectrum_with, interval_count, Spectrum};

/// Middle Betti numbers of a cobordism `Y` capped by Seifert surfaces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CobordismBettiData {
    /// `b_n(Σ₀ ∪ Y ∪ Σ₁)`.
    pub b_n_total: u64,
    pub b_n_sigma0: u64,
    pub b_n_sigma1: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundRecord {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl BoundRecord {
    fn new(lhs: i64, rhs: i64) -> Self {
        Self { lhs, rhs, holds: lhs <= rhs }
    }
}

/// `|σ₀ − σ₁| ≤ b_n(total) − b_n(Σ₀) − b_n(Σ₁) + n₀ + n₁`.
pub fn mk_bound(sigma0: i64, sigma1: i64, null0: i64, null1: i64, betti: CobordismBettiData) -> BoundRecord {
    let rhs = betti.b_n_total as i64 - betti.b_n_sigma0 as i64 - betti.b_n_sigma1 as i64 + null0 + null1;
    BoundRecord::new((sigma0 - sigma1).abs(), rhs)
}

fn same_dimension(central: &SeifertMatrix, locals: &[SeifertMatrix]) -> Result<()> {
    match locals.iter().find(|l| l.n() != central.n()) {
        Some(l) => Err(Error::DimensionMismatch { expected: central.n(), found: l.n() }),
        None => Ok(()),
    }
}

/// Signatures, nullities and Milnor numbers: central first, then the sum over locals.
struct Evaluated {
    sigma: (i64, i64),
    nullity: (i64, i64),
    mu: (i64, i64),
}

fn evaluate(central: &SeifertMatrix, locals: &[SeifertMatrix], p: &CirclePoint) -> Result<Evaluated> {
    same_dimension(central, locals)?;
    let (s0, n0) = PencilEvaluator::new(central).evaluate(p)?;
    let (mut s1, mut n1, mut mu1) = (0, 0, 0);
    for l in locals {
        let (s, n) = PencilEvaluator::new(l).evaluate(p)?;
        s1 += s;
        n1 += n as i64;
        mu1 += l.mu() as i64;
    }
    Ok(Evaluated { sigma: (s0, s1), nullity: (n0 as i64, n1), mu: (central.mu() as i64, mu1) })
}

/// The bound for the cobordism between the link of a central singularity and
/// those of nearby singular points, where the smoothing capped by a Seifert
/// surface has middle Betti number `smoothing_betti`.
pub fn local_global_bound(
    central: &SeifertMatrix,
    locals: &[SeifertMatrix],
    p: &CirclePoint,
    smoothing_betti: u64,
) -> Result<BoundRecord> {
    let e = evaluate(central, locals, p)?;
    let betti = CobordismBettiData { b_n_total: smoothing_betti, b_n_sigma0: e.mu.0 as u64, b_n_sigma1: e.mu.1 as u64 };
    Ok(mk_bound(e.sigma.0, e.sigma.1, e.nullity.0, e.nullity.1, betti))
}

/// `b₁(Y, M₀)` for the curve cobordism of a deformation with `k >= 1`
/// singular points: `μ₀ − Σ μ_j + k − 1`.
pub fn default_relative_betti(central: &SeifertMatrix, locals: &[SeifertMatrix]) -> i64 {
    central.mu() as i64 - locals.iter().map(|l| l.mu() as i64).sum::<i64>() + locals.len() as i64 - 1
}

/// The classical curve inequality `|σ₀ − Σσ_j| + |n₀ − Σn_j| ≤ b₁(Y, M₀)`.
/// Only defined for `n = 1`.
pub fn strict_bound(
    central: &SeifertMatrix,
    locals: &[SeifertMatrix],
    p: &CirclePoint,
    relative_betti: Option<i64>,
) -> Result<BoundRecord> {
    if central.n() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: central.n() });
    }
    let e = evaluate(central, locals, p)?;
    let rhs = relative_betti.unwrap_or_else(|| default_relative_betti(central, locals));
    Ok(BoundRecord::new((e.sigma.0 - e.sigma.1).abs() + (e.nullity.0 - e.nullity.1).abs(), rhs))
}

/// Exact sample points of `(0, 1)` avoiding every forbidden angle (taken mod 1).
pub fn admissible_alphas(forbidden: &[AngleRecord]) -> Vec<Rat> {
    let one = Rat::one();
    let mut cuts: Vec<Angle> = forbidden
        .iter()
        .map(|r| if r.angle.is_above(&one) { r.angle.shifted(&-&one) } else { r.angle.clone() })
        .filter(|a| a.is_above(&Rat::zero()) && a.is_below(&one))
        .collect();
    cuts.sort();
    cuts.dedup();
    gap_representatives(&cuts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Local,
    Infinity,
    LocalToGlobal,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Local => "local",
            Mode::Infinity => "infinity",
            Mode::LocalToGlobal => "local_to_global",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Mode::Local, Mode::Infinity, Mode::LocalToGlobal].into_iter().find(|m| m.as_str() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    /// No right-hand side to compare against.
    Vacuous,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Vacuous => "vacuous",
        }
    }
}

/// Interval counts at one `α`: the left side belongs to the central (or
/// general-fiber) spectrum, the right side sums the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub alpha: Rat,
    pub lhs_inside: i64,
    pub rhs_inside: i64,
    pub lhs_outside: i64,
    pub rhs_outside: i64,
    pub slack_inside: i64,
    pub slack_outside: i64,
    pub admissible: bool,
}

/// The classical curve inequality evaluated at one `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictRecord {
    pub alpha: Rat,
    pub bound: BoundRecord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemicontinuityReport {
    pub mode: Mode,
    pub records: Vec<Record>,
    pub strict: Vec<StrictRecord>,
    pub verdict: Verdict,
}

impl SemicontinuityReport {
    fn assemble(mode: Mode, records: Vec<Record>, strict: Vec<StrictRecord>, vacuous: bool) -> Self {
        let ok = records.iter().filter(|r| r.admissible).all(|r| r.slack_inside >= 0 && r.slack_outside >= 0)
            && strict.iter().all(|r| r.bound.holds);
        let verdict = match (vacuous, ok) {
            (true, _) => Verdict::Vacuous,
            (false, true) => Verdict::Holds,
            (false, false) => Verdict::Fails,
        };
        Self { mode, records, strict, verdict }
    }
}

fn compare(lhs: &Spectrum, rhs: &[Spectrum], alphas: &[Rat]) -> Vec<Record> {
    alphas
        .iter()
        .map(|alpha| {
            let (li, lo) = interval_count(lhs, alpha);
            let (mut ri, mut ro) = (0, 0);
            for sp in rhs {
                let (i, o) = interval_count(sp, alpha);
                ri += i;
                ro += o;
            }
            let (li, lo, ri, ro) = (li as i64, lo as i64, ri as i64, ro as i64);
            Record {
                alpha: alpha.clone(),
                lhs_inside: li,
                rhs_inside: ri,
                lhs_outside: lo,
                rhs_outside: ro,
                slack_inside: li - ri,
                slack_outside: lo - ro,
                admissible: true,
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CheckOptions {
    /// Precision and tolerance for spectrum extraction.
    pub profile: ProfileOptions,
    /// Also evaluate [`strict_bound`] at every admissible `α` (curves only).
    pub strict: bool,
    /// Overrides [`default_relative_betti`] in strict mode.
    pub relative_betti: Option<i64>,
}

pub fn check_local(central: &SeifertMatrix, locals: &[SeifertMatrix]) -> Result<SemicontinuityReport> {
    check_local_with(central, locals, &CheckOptions::default())
}

/// Both interval inequalities between the spectrum of `central` and the
/// spectra of `locals`, at every `α` avoiding the central eigenvalue angles.
pub fn check_local_with(
    central: &SeifertMatrix,
    locals: &[SeifertMatrix],
    opts: &CheckOptions,
) -> Result<SemicontinuityReport> {
    same_dimension(central, locals)?;
    if opts.strict && central.n() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: central.n() });
    }
    let sp0 = extract_spectrum_with(central, &opts.profile)?;
    let sps = locals.iter().map(|l| extract_spectrum_with(l, &opts.profile)).collect::<Result<Vec<_>>>()?;
    let alphas = admissible_alphas(&sp0.angles_mod_one());
    let records = compare(&sp0, &sps, &alphas);
    let mut strict = Vec::new();
    if opts.strict && !locals.is_empty() {
        for alpha in &alphas {
            let bound = strict_bound(central, locals, &CirclePoint::rational(alpha.clone())?, opts.relative_betti)?;
            strict.push(StrictRecord { alpha: alpha.clone(), bound });
        }
    }
    Ok(SemicontinuityReport::assemble(Mode::Local, records, strict, locals.is_empty()))
}

/// Spectrum of a general fiber against a special fiber of a tame family.
pub fn check_infinity(sp_t: &Spectrum, sp_0: &Spectrum, forbidden: &[AngleRecord]) -> SemicontinuityReport {
    let records = compare(sp_t, core::slice::from_ref(sp_0), &admissible_alphas(forbidden));
    SemicontinuityReport::assemble(Mode::Infinity, records, Vec::new(), false)
}

/// Spectrum at infinity against the local spectra of the singular points.
pub fn check_local_to_global(sp_inf: &Spectrum, locals: &[Spectrum], forbidden: &[AngleRecord]) -> SemicontinuityReport {
    let records = compare(sp_inf, locals, &admissible_alphas(forbidden));
    SemicontinuityReport::assemble(Mode::LocalToGlobal, records, Vec::new(), locals.is_empty())
}
