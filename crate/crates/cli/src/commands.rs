//! The four subcommands, each producing output text and an exit code.

use std::collections::BTreeMap;

use linkinv_core::angle::{Angle, AngleRecord};
use linkinv_core::linalg::cyclotomic::circle_roots;
use linkinv_core::linalg::Rat;
use linkinv_core::semicontinuity::{
    check_infinity, check_local_to_global, check_local_with, local_global_bound, CheckOptions, Mode, SemicontinuityReport,
    Verdict,
};
use linkinv_core::signatures::{signature_profile_with, CirclePoint, PencilEvaluator, ProfileOptions};
use linkinv_core::spectrum::{extract_spectrum_with, Spectrum};
use linkinv_core::{alexander, keef_reduce, n0, SeifertMatrix};
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::error::{exit, CliError, Result};
use crate::input::{Entry, Scenario};
use crate::output::{angle_records, big_number, record_json, rat_string, render_json, strict_json};

/// Text to emit and the exit code of a successful run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: exit::HOLDS }
    }
}

/// μ, n, ε, n₀, the Alexander polynomial, its unit-circle roots and the
/// degeneracy warning.
pub fn invariants(s: &SeifertMatrix, opts: &ProfileOptions) -> Result<Outcome> {
    let delta = alexander(s);
    let roots = circle_roots(&delta.poly(), opts.precision_bits);
    let mut m = Map::new();
    m.insert("alexander".into(), Value::Array(delta.coeffs().iter().map(big_number).collect()));
    m.insert("eigenvalue_angles".into(), angle_records(&roots.roots));
    m.insert("epsilon".into(), s.epsilon().into());
    m.insert("keef_warning".into(), keef_reduce(s).warning.into());
    m.insert("mu".into(), s.mu().into());
    m.insert("n".into(), s.n().into());
    m.insert("n0".into(), n0(s).into());
    if let Some(name) = s.name() {
        m.insert("name".into(), name.into());
    }
    m.insert("off_circle_roots".into(), roots.off_circle.into());
    Ok(Outcome::ok(render_json(&Value::Object(m))))
}

struct Row {
    sigma: i64,
    nullity: usize,
    is_jump: bool,
}

/// CSV `alpha,sigma,nullity,is_jump` over arc samples, exact jumps and `grid`.
pub fn profile(s: &SeifertMatrix, grid: &[Rat], opts: &ProfileOptions) -> Result<Outcome> {
    for a in grid {
        if *a <= Rat::zero() || *a >= Rat::one() {
            return Err(CliError::Usage(format!("grid point {} outside the open interval (0, 1)", rat_string(a))));
        }
    }
    let prof = signature_profile_with(s, &ProfileOptions { evaluate_jumps: true, ..*opts })?;
    let mut rows: BTreeMap<Rat, Row> = BTreeMap::new();
    for iv in &prof.intervals {
        rows.insert(iv.sample.clone(), Row { sigma: iv.sigma, nullity: iv.nullity, is_jump: false });
    }
    let at_jumps = prof.at_jumps.as_deref().unwrap_or_default();
    for (j, v) in prof.jumps.iter().zip(at_jumps) {
        if let (Angle::Exact(a), Some(v)) = (&j.angle, v) {
            rows.insert(a.clone(), Row { sigma: v.sigma, nullity: v.nullity, is_jump: true });
        }
    }
    let ev = PencilEvaluator::new(s).with_tolerance(opts.tolerance);
    for a in grid {
        if !rows.contains_key(a) {
            let (sigma, nullity) = ev.evaluate(&CirclePoint::rational(a.clone())?)?;
            rows.insert(a.clone(), Row { sigma, nullity, is_jump: false });
        }
    }
    let mut text = String::from("alpha,sigma,nullity,is_jump\n");
    for (a, r) in &rows {
        text.push_str(&format!("{},{},{},{}\n", rat_string(a), r.sigma, r.nullity, r.is_jump));
    }
    Ok(Outcome::ok(text))
}

pub fn spectrum(s: &SeifertMatrix, opts: &ProfileOptions) -> Result<Outcome> {
    let sp = extract_spectrum_with(s, opts)?;
    Ok(Outcome::ok(render_json(&angle_records(sp.entries()))))
}

pub fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Holds => exit::HOLDS,
        Verdict::Fails => exit::FAILS,
        Verdict::Vacuous => exit::VACUOUS,
    }
}

fn entry_spectrum(e: &Entry, opts: &ProfileOptions) -> Result<Spectrum> {
    match e {
        Entry::Matrix(s) => Ok(extract_spectrum_with(s, opts)?),
        Entry::Spectrum(sp) => Ok(sp.clone()),
    }
}

fn matrix(e: &Entry) -> &SeifertMatrix {
    match e {
        Entry::Matrix(s) => s,
        Entry::Spectrum(_) => unreachable!("local scenarios hold matrices only"),
    }
}

/// Runs a scenario. In local mode every record also carries the signature
/// bound at its `α`; that bound is reported but does not enter the verdict.
pub fn check(sc: &Scenario, opts: &ProfileOptions, strict: bool) -> Result<Outcome> {
    if strict && sc.mode != Mode::Local {
        return Err(CliError::Usage("--strict applies to local mode only".into()));
    }
    let mut bounds = Vec::new();
    let report: SemicontinuityReport = match sc.mode {
        Mode::Local => {
            let central = matrix(&sc.central);
            let locals: Vec<SeifertMatrix> = sc.locals.iter().map(|l| matrix(l).clone()).collect();
            let copts = CheckOptions { profile: *opts, strict, relative_betti: sc.betti_relative };
            let rep = check_local_with(central, &locals, &copts)?;
            let total = sc.betti_total.unwrap_or(2 * central.mu() as u64);
            for r in &rep.records {
                bounds.push(local_global_bound(central, &locals, &CirclePoint::rational(r.alpha.clone())?, total)?);
            }
            rep
        }
        Mode::Infinity | Mode::LocalToGlobal => {
            let lhs = entry_spectrum(&sc.central, opts)?;
            let rhs = sc.locals.iter().map(|l| entry_spectrum(l, opts)).collect::<Result<Vec<_>>>()?;
            let forbidden = match &sc.forbidden {
                Some(f) => f.iter().map(|a| AngleRecord::new(Angle::Exact(a.clone()), 1)).collect(),
                None => lhs.angles_mod_one(),
            };
            match (sc.mode, rhs.as_slice()) {
                (Mode::Infinity, [sp0]) => check_infinity(&lhs, sp0, &forbidden),
                _ => {
                    let mut rep = check_local_to_global(&lhs, &rhs, &forbidden);
                    rep.mode = sc.mode;
                    rep
                }
            }
        }
    };
    let mut m = Map::new();
    m.insert("mode".into(), report.mode.as_str().into());
    let records = report.records.iter().enumerate().map(|(i, r)| record_json(r, bounds.get(i))).collect();
    m.insert("records".into(), Value::Array(records));
    if strict {
        m.insert("strict".into(), Value::Array(report.strict.iter().map(strict_json).collect()));
    }
    m.insert("verdict".into(), report.verdict.as_str().into());
    Ok(Outcome { text: render_json(&Value::Object(m)), code: verdict_code(report.verdict) })
}
