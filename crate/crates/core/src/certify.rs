//! Reduction certificates: data model, canonical JSON, and a verifier.
//!
//! The verifier trusts nothing in the certificate. It re-derives every claim
//! from the relation ring and the recorded ideals using only the staircase
//! primitives of [`crate::truncmono`]; it does not call into the engine.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extcalc::AnnihilatorStep;
use crate::truncmono::{annihilator_of_x, Pair, RelationRing, StaircaseIdeal, TruncatedRingParams};

/// Extension for certificate files.
pub const CERTIFICATE_EXTENSION: &str = ".redcert.json";

/// Witness that `R/(x,y)` is built from `R/I` by extensions, as a chain of
/// annihilator steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionCertificate {
    pub ring: RelationRing,
    pub initial_ideal: Vec<Pair>,
    pub steps: Vec<AnnihilatorStep>,
    pub final_ideal: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("malformed certificate at line {line}, column {column}: {message}")]
    Malformed { line: usize, column: usize, message: String },
    #[error("malformed certificate at {path}: {message}")]
    MalformedField { path: String, message: String },
}

impl ReductionCertificate {
    /// Canonical JSON: fixed key order, one step per line, trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"ring\": {},\n", compact(&self.ring)));
        out.push_str(&format!("  \"initial_ideal\": {},\n", compact(&self.initial_ideal)));
        if self.steps.is_empty() {
            out.push_str("  \"steps\": [],\n");
        } else {
            out.push_str("  \"steps\": [\n");
            for (i, step) in self.steps.iter().enumerate() {
                let sep = if i + 1 < self.steps.len() { "," } else { "" };
                out.push_str(&format!("    {}{sep}\n", compact(step)));
            }
            out.push_str("  ],\n");
        }
        out.push_str(&format!("  \"final_ideal\": {}\n", compact(&self.final_ideal)));
        out.push_str("}\n");
        out
    }

    pub fn serialize(&self) -> Vec<u8> {
        self.to_json().into_bytes()
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        let cert: ReductionCertificate =
            serde_json::from_str(text).map_err(|e| CertificateError::Malformed {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
        cert.check_structure()?;
        Ok(cert)
    }

    pub fn deserialize(bytes: &[u8]) -> Result<Self, CertificateError> {
        let text = std::str::from_utf8(bytes).map_err(|e| CertificateError::Malformed {
            line: 0,
            column: 0,
            message: format!("not UTF-8: {e}"),
        })?;
        Self::from_json(text)
    }

    /// Schema-level checks beyond what the JSON types enforce. Semantic
    /// validity is left to [`verify`].
    fn check_structure(&self) -> Result<(), CertificateError> {
        let nonempty = |path: String, pairs: &[Pair]| {
            if pairs.is_empty() {
                Err(CertificateError::MalformedField {
                    path,
                    message: "ideal has no generators".into(),
                })
            } else {
                Ok(())
            }
        };
        nonempty("initial_ideal".into(), &self.initial_ideal)?;
        nonempty("final_ideal".into(), &self.final_ideal)?;
        for (i, step) in self.steps.iter().enumerate() {
            nonempty(format!("steps[{i}].ideal_before"), &step.ideal_before)?;
            nonempty(format!("steps[{i}].divided_ideal"), &step.divided_ideal)?;
            nonempty(format!("steps[{i}].ideal_after"), &step.ideal_after)?;
        }
        Ok(())
    }
}

fn compact<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("certificate values always serialize")
}

/// Which check a failure belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    /// Ring parameters and the primary form of the initial ideal.
    Initial,
    /// (i) each ideal of the step is a staircase in normal form.
    Invariants,
    /// (ii) `ideal_before = axis·divided_ideal + (pure power)`.
    Decomposition,
    /// (iii) the annihilator of the axis lies in `ideal_before` in the quotient.
    Annihilator,
    /// (iv) `ideal_after = divided_ideal + (pure power)`.
    IdealAfter,
    /// (v) each step starts where the previous one ended.
    Chain,
    /// (vi) the chain ends at `(x, y)`.
    Final,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Initial => "initial",
            CheckKind::Invariants => "invariants",
            CheckKind::Decomposition => "decomposition",
            CheckKind::Annihilator => "annihilator",
            CheckKind::IdealAfter => "ideal-after",
            CheckKind::Chain => "chain",
            CheckKind::Final => "final",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailure {
    pub step: Option<usize>,
    pub kind: CheckKind,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepVerdict {
    pub invariants: bool,
    pub decomposition: bool,
    pub annihilator: bool,
    pub ideal_after: bool,
    pub chain: bool,
}

impl StepVerdict {
    pub fn passed(&self) -> bool {
        self.invariants && self.decomposition && self.annihilator && self.ideal_after && self.chain
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub initial: bool,
    pub steps: Vec<StepVerdict>,
    pub final_check: bool,
    pub failures: Vec<CheckFailure>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.initial && self.final_check && self.steps.iter().all(StepVerdict::passed)
    }

    pub fn failed(&self, kind: CheckKind) -> bool {
        self.failures.iter().any(|f| f.kind == kind)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
        writeln!(f, "initial ideal: {}", mark(self.initial))?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(
                f,
                "step {i}: invariants {} decomposition {} annihilator {} ideal-after {} chain {}",
                mark(s.invariants),
                mark(s.decomposition),
                mark(s.annihilator),
                mark(s.ideal_after),
                mark(s.chain)
            )?;
        }
        writeln!(f, "final ideal: {}", mark(self.final_check))?;
        for failure in &self.failures {
            match failure.step {
                Some(i) => writeln!(f, "  step {i} [{}]: {}", failure.kind, failure.detail)?,
                None => writeln!(f, "  [{}]: {}", failure.kind, failure.detail)?,
            }
        }
        write!(f, "verdict: {}", if self.is_valid() { "VALID" } else { "INVALID" })
    }
}

struct Recorder {
    failures: Vec<CheckFailure>,
}

impl Recorder {
    fn check(&mut self, ok: bool, step: Option<usize>, kind: CheckKind, detail: impl FnOnce() -> String) -> bool {
        if !ok {
            self.failures.push(CheckFailure {
                step,
                kind,
                detail: detail(),
            });
        }
        ok
    }
}

/// Parses `pairs` as an ideal of `ring` and requires that it is already in
/// normal staircase form.
fn normal_form(ring: TruncatedRingParams, pairs: &[Pair]) -> Result<StaircaseIdeal, String> {
    let ideal = StaircaseIdeal::normalize(ring, pairs).map_err(|e| e.to_string())?;
    if ideal.pairs() != pairs {
        return Err(format!("{pairs:?} is not in normal staircase form (expected {:?})", ideal.pairs()));
    }
    Ok(ideal)
}

fn with_pure(ring: TruncatedRingParams, pairs: &[Pair], pure: Pair) -> Result<StaircaseIdeal, String> {
    let mut all = pairs.to_vec();
    all.push(pure);
    StaircaseIdeal::normalize(ring, &all).map_err(|e| e.to_string())
}

/// Re-checks every claim of `cert`. Never panics on malformed input; all
/// problems are reported as failures.
pub fn verify(cert: &ReductionCertificate) -> VerificationReport {
    let mut rec = Recorder { failures: Vec::new() };
    let n_steps = cert.steps.len();

    let ring: TruncatedRingParams = cert.ring.into();
    let ring_ok = rec.check(cert.ring.validate().is_ok(), None, CheckKind::Initial, || {
        format!("invalid relation ring a={}, b={}", cert.ring.a, cert.ring.b)
    });
    if !ring_ok {
        return VerificationReport {
            initial: false,
            steps: vec![
                StepVerdict {
                    invariants: false,
                    decomposition: false,
                    annihilator: false,
                    ideal_after: false,
                    chain: false,
                };
                n_steps
            ],
            final_check: false,
            failures: rec.failures,
        };
    }

    let initial = match normal_form(ring, &cert.initial_ideal) {
        Ok(i) => rec.check(i.is_primary_form(), None, CheckKind::Initial, || {
            format!("initial ideal {i} needs a pure x power, a pure y power and two generators")
        }),
        Err(e) => rec.check(false, None, CheckKind::Initial, || e),
    };

    let mut verdicts = Vec::with_capacity(n_steps);
    let mut previous: &[Pair] = &cert.initial_ideal;
    for (k, step) in cert.steps.iter().enumerate() {
        verdicts.push(verify_step(&mut rec, k, cert.ring, step, previous));
        previous = &step.ideal_after;
    }

    let final_check = {
        let end_matches = rec.check(cert.final_ideal.as_slice() == previous, None, CheckKind::Final, || {
            format!("final ideal {:?} differs from the last ideal of the chain {previous:?}", cert.final_ideal)
        });
        let is_max = rec.check(cert.final_ideal == [(1, 0), (0, 1)], None, CheckKind::Final, || {
            format!("final ideal {:?} is not (x, y)", cert.final_ideal)
        });
        end_matches && is_max
    };

    VerificationReport {
        initial,
        steps: verdicts,
        final_check,
        failures: rec.failures,
    }
}

fn verify_step(rec: &mut Recorder, k: usize, ring: RelationRing, step: &AnnihilatorStep, previous: &[Pair]) -> StepVerdict {
    let at = Some(k);
    let rel: TruncatedRingParams = ring.into();
    let axis = step.axis;
    let m = step.quotient_exponent;
    let pure = axis.orient((0, m));

    // (i)
    let before = normal_form(rel, &step.ideal_before);
    let divided = normal_form(rel, &step.divided_ideal);
    let after = normal_form(rel, &step.ideal_after);
    let mut invariants = true;
    for (name, res) in [("ideal_before", &before), ("divided_ideal", &divided), ("ideal_after", &after)] {
        if let Err(e) = res {
            invariants &= rec.check(false, at, CheckKind::Invariants, || format!("{name}: {e}"));
        }
    }

    // (ii)
    let decomposition = match (&before, &divided) {
        (Ok(before), Ok(divided)) => {
            let in_range = m >= 1 && m < ring.bound(axis.other());
            let has_pure = before.pairs().contains(&pure);
            let below_m = divided.pairs().iter().all(|&p| axis.orient(p).1 < m);
            let rebuilt = divided
                .multiply_by_axis(axis)
                .map_err(|e| e.to_string())
                .and_then(|xj| with_pure(rel, xj.pairs(), pure));
            let ok = in_range && has_pure && below_m && rebuilt.as_ref() == Ok(before);
            rec.check(ok, at, CheckKind::Decomposition, || {
                format!(
                    "{before} != {axis}·({divided}) + {axis_other}^{m} (rebuilt {rebuilt:?}, pure power present: {has_pure}, exponent in range: {in_range}, divided below m: {below_m})",
                    axis_other = axis.other()
                )
            })
        }
        _ => rec.check(false, at, CheckKind::Decomposition, || "ideals are not staircases".into()),
    };

    // (iii)
    let annihilator = {
        let ring_matches = step.ring.a == ring.bound(axis) && step.ring.m == m;
        let contained = step
            .ring
            .oriented()
            .map_err(|e| e.to_string())
            .and_then(|quotient| {
                let ann = annihilator_of_x(quotient).map_err(|e| e.to_string())?;
                let ann_gen = axis.orient(ann.pairs()[0]);
                if ann_gen != step.ann_generator {
                    return Err(format!(
                        "recorded annihilator generator {:?}, recomputed {ann_gen:?}",
                        step.ann_generator
                    ));
                }
                let oriented: Vec<Pair> = step.ideal_before.iter().map(|&p| axis.orient(p)).collect();
                let image = StaircaseIdeal::normalize(quotient, &oriented).map_err(|e| e.to_string())?;
                image.contains_ideal(&ann).map_err(|e| e.to_string())
            });
        rec.check(ring_matches && contained == Ok(true), at, CheckKind::Annihilator, || {
            format!(
                "quotient ring {:?} (expected a={}, m={m}), containment: {contained:?}",
                step.ring,
                ring.bound(axis)
            )
        })
    };

    // (iv)
    let ideal_after = match (&divided, &after) {
        (Ok(divided), Ok(after)) => {
            let recomputed = with_pure(rel, divided.pairs(), pure);
            rec.check(recomputed.as_ref() == Ok(after), at, CheckKind::IdealAfter, || {
                format!("recorded {after}, recomputed {recomputed:?}")
            })
        }
        _ => rec.check(false, at, CheckKind::IdealAfter, || "ideals are not staircases".into()),
    };

    // (v)
    let chain = rec.check(step.ideal_before.as_slice() == previous, at, CheckKind::Chain, || {
        format!("starts at {:?} but the previous ideal is {previous:?}", step.ideal_before)
    });

    StepVerdict {
        invariants,
        decomposition,
        annihilator,
        ideal_after,
        chain,
    }
}
