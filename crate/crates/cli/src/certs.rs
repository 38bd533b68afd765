//! Certificate workflows: reduce a staircase, fuzz the engine, verify a file.

use std::fs;
use std::path::Path;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use staircase_kit::certify::CERTIFICATE_EXTENSION;
use staircase_kit::extcalc::step_bound;
use staircase_kit::{reduce_to_maximal, verify, Pair, ReductionCertificate, Sign, StaircaseIdeal, TruncatedRingParams};

use crate::output::{Format, Record};
use crate::CliError;

pub fn reduce(ring: &str, ideal: &str, out: Option<&Path>) -> Result<String, CliError> {
    let ring: TruncatedRingParams = ring.parse().map_err(|e| CliError::usage(format!("--ring: {e}")))?;
    if ring.relation_ring().is_none() {
        return Err(CliError::usage("reduce needs a relation ring a=..,b=..,sign=.."));
    }
    let pairs = staircase_kit::truncmono::parse_pairs(ideal).map_err(|e| CliError::usage(format!("--ideal: {e}")))?;
    let ideal = StaircaseIdeal::normalize(ring, &pairs).map_err(|e| CliError::usage(format!("--ideal: {e}")))?;
    let cert = reduce_to_maximal(&ideal).map_err(|e| CliError::usage(format!("cannot reduce {ideal}: {e}")))?;
    let text = cert.to_json();
    match out {
        Some(path) => {
            if !path.to_string_lossy().ends_with(CERTIFICATE_EXTENSION) {
                return Err(CliError::usage(format!(
                    "certificate path {} must end in {CERTIFICATE_EXTENSION}",
                    path.display()
                )));
            }
            fs::write(path, &text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(format!("{} steps; certificate written to {}\n", cert.steps.len(), path.display()))
        }
        None => Ok(text),
    }
}

pub fn verify_file(path: &Path, format: Format) -> Result<String, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let cert = ReductionCertificate::deserialize(&bytes).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let report = verify(&cert);
    let text = match format {
        Format::Json => {
            let failures: Vec<_> = report
                .failures
                .iter()
                .map(|f| json!({"step": f.step, "check": f.kind.to_string(), "detail": f.detail}))
                .collect();
            let value = json!({"valid": report.is_valid(), "steps": cert.steps.len(), "failures": failures});
            format!("{}\n", serde_json::to_string_pretty(&value).expect("json values serialize"))
        }
        Format::Table | Format::Csv => format!("{report}\n"),
    };
    if report.is_valid() {
        Ok(text)
    } else {
        Err(CliError::Failed { output: text, message: format!("{} is not a valid certificate", path.display()) })
    }
}

#[derive(Debug, Serialize)]
pub struct FuzzRow {
    pub index: usize,
    pub ring: String,
    pub ideal: String,
    pub steps: Option<usize>,
    pub bound: usize,
    pub valid: bool,
}

impl Record for FuzzRow {
    const HEADERS: &'static [&'static str] = &["index", "ring", "ideal", "steps", "bound", "valid"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            self.ring.clone(),
            self.ideal.clone(),
            crate::output::opt(self.steps),
            self.bound.to_string(),
            self.valid.to_string(),
        ]
    }
}

/// Random primary staircase of `k[x,y]/(x^a ± y^b)` with `a, b <= max` and at
/// most `max_gens` generators.
pub fn random_staircase(rng: &mut ChaCha8Rng, max: u32, max_gens: usize) -> StaircaseIdeal {
    let a = rng.gen_range(2..=max);
    let b = rng.gen_range(2..=max);
    let n = rng.gen_range(2..=max_gens.min(a as usize).min(b as usize));
    let mut xs: Vec<u32> = sample(rng, (a - 1) as usize, n - 1).into_iter().map(|i| i as u32 + 1).collect();
    xs.sort_unstable_by(|p, q| q.cmp(p));
    xs.push(0);
    let mut ys: Vec<u32> = sample(rng, (b - 1) as usize, n - 1).into_iter().map(|i| i as u32 + 1).collect();
    ys.sort_unstable();
    ys.insert(0, 0);
    let pairs: Vec<Pair> = xs.into_iter().zip(ys).collect();
    let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    let ring = TruncatedRingParams::relation(a, b, sign).expect("a, b >= 2");
    StaircaseIdeal::normalize(ring, &pairs).expect("strict staircase within bounds")
}

/// Reduces and verifies `count` random staircases drawn from `seed`.
pub fn fuzz(count: usize, seed: u64, max: u32) -> Vec<FuzzRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ideals: Vec<StaircaseIdeal> = (0..count).map(|_| random_staircase(&mut rng, max, 6)).collect();
    ideals
        .into_par_iter()
        .enumerate()
        .map(|(index, ideal)| {
            let bound = step_bound(&ideal);
            let cert = reduce_to_maximal(&ideal).ok();
            let valid = cert
                .as_ref()
                .is_some_and(|c| c.steps.len() <= bound && verify(c).is_valid());
            FuzzRow {
                index,
                ring: ideal.ring().to_string(),
                ideal: ideal.to_string(),
                steps: cert.map(|c| c.steps.len()),
                bound,
                valid,
            }
        })
        .collect()
}
