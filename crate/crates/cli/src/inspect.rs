//! One-shot queries: semigroup facts, ideal arithmetic, conductor staircases.

use std::sync::Arc;

use serde::Serialize;
use staircase_kit::truncmono::pair_value;
use staircase_kit::{staircase_of_conductor, NumericalSemigroup, SemigroupIdeal, SemigroupError, StaircaseError};

use crate::output::{list, opt, Record};
use crate::CliError;

#[derive(Debug, Serialize)]
pub struct SemigroupInfo {
    pub generators: Vec<u64>,
    pub multiplicity: u64,
    pub embedding_dimension: usize,
    pub conductor: u64,
    pub frobenius: i64,
    pub genus: usize,
    pub gaps: Vec<u64>,
    pub apery: Vec<u64>,
}

impl Record for SemigroupInfo {
    const HEADERS: &'static [&'static str] = &[
        "generators",
        "multiplicity",
        "embedding_dimension",
        "conductor",
        "frobenius",
        "genus",
        "gaps",
        "apery",
    ];

    fn cells(&self) -> Vec<String> {
        vec![
            list(&self.generators),
            self.multiplicity.to_string(),
            self.embedding_dimension.to_string(),
            self.conductor.to_string(),
            self.frobenius.to_string(),
            self.genus.to_string(),
            list(&self.gaps),
            list(&self.apery),
        ]
    }
}

pub fn semigroup_info(gens: &str) -> Result<SemigroupInfo, CliError> {
    let h: NumericalSemigroup = gens.parse().map_err(|e: SemigroupError| CliError::usage(e.to_string()))?;
    let m = h.multiplicity();
    Ok(SemigroupInfo {
        generators: h.generators().to_vec(),
        multiplicity: m,
        embedding_dimension: h.embedding_dimension(),
        conductor: h.conductor(),
        frobenius: h.frobenius(),
        genus: h.genus(),
        gaps: h.gaps(),
        apery: h.apery_set(m).map_err(|e| CliError::usage(e.to_string()))?,
    })
}

#[derive(Debug, Serialize)]
pub struct IdealReport {
    pub semigroup: String,
    pub normal_form: String,
    pub threshold: u64,
    pub sporadic: Vec<u64>,
    pub minimal_generators: Vec<u64>,
    pub integral: bool,
}

impl IdealReport {
    fn new(ideal: &SemigroupIdeal) -> Self {
        Self {
            semigroup: ideal.ambient().to_string(),
            normal_form: ideal.to_string(),
            threshold: ideal.threshold(),
            sporadic: ideal.sporadic().to_vec(),
            minimal_generators: ideal.minimal_generators().to_vec(),
            integral: ideal.is_integral(),
        }
    }
}

impl Record for IdealReport {
    const HEADERS: &'static [&'static str] =
        &["semigroup", "normal_form", "threshold", "sporadic", "minimal_generators", "integral"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.semigroup.clone(),
            self.normal_form.clone(),
            self.threshold.to_string(),
            list(&self.sporadic),
            list(&self.minimal_generators),
            self.integral.to_string(),
        ]
    }
}

fn parse_ideal(text: &str) -> Result<SemigroupIdeal, CliError> {
    text.parse().map_err(|e: staircase_kit::IdealError| CliError::usage(format!("{text:?}: {e}")))
}

pub fn ideal_power(ideal: &str, n: u64) -> Result<IdealReport, CliError> {
    Ok(IdealReport::new(&parse_ideal(ideal)?.pow(n)))
}

pub fn ideal_colon(ideal: &str, divisor: &str) -> Result<IdealReport, CliError> {
    let i = parse_ideal(ideal)?;
    let j = parse_ideal(divisor)?;
    let colon = i.colon(&j).map_err(|e| CliError::usage(e.to_string()))?;
    Ok(IdealReport::new(&colon))
}

#[derive(Debug, Serialize)]
pub struct StabilityReport {
    pub normal_form: String,
    pub stable: bool,
    pub generator_value: Option<u64>,
}

impl Record for StabilityReport {
    const HEADERS: &'static [&'static str] = &["normal_form", "stable", "generator_value"];

    fn cells(&self) -> Vec<String> {
        vec![self.normal_form.clone(), self.stable.to_string(), opt(self.generator_value)]
    }
}

pub fn ideal_stable(ideal: &str) -> Result<StabilityReport, CliError> {
    let i = parse_ideal(ideal)?;
    let value = i.is_stable_under_normalization();
    Ok(StabilityReport {
        normal_form: i.to_string(),
        stable: value.is_some(),
        generator_value: value,
    })
}

#[derive(Debug, Serialize)]
pub struct StaircaseReport {
    pub ring: String,
    pub conductor: u64,
    pub staircase: String,
    pub values: Vec<u64>,
}

impl Record for StaircaseReport {
    const HEADERS: &'static [&'static str] = &["ring", "conductor", "staircase", "values"];

    fn cells(&self) -> Vec<String> {
        vec![self.ring.clone(), self.conductor.to_string(), self.staircase.clone(), list(&self.values)]
    }
}

pub fn conductor_staircase(a: u64, b: u64) -> Result<StaircaseReport, CliError> {
    let stair = staircase_of_conductor(a, b).map_err(|e: StaircaseError| CliError::usage(e.to_string()))?;
    let h = Arc::new(NumericalSemigroup::from_generators(&[b, a]).map_err(|e| CliError::usage(e.to_string()))?);
    Ok(StaircaseReport {
        ring: stair.ring().to_string(),
        conductor: h.conductor(),
        staircase: stair.to_string(),
        values: stair.pairs().iter().map(|&p| pair_value(a, b, p)).collect(),
    })
}
