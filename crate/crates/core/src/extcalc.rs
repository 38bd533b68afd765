//! Reduction of a primary staircase ideal of `A[x,y]/(x^a ± y^b)` to the
//! maximal ideal `(x, y)` by single annihilator steps.
//!
//! One step along axis `x` starts from
//! `I = (x^{a₁}, x^{a₂}y^{b₂}, …, x^{a_{n-1}}y^{b_{n-1}}, y^{bₙ})` and writes
//! `I = xJ + (y^{bₙ})` with `J` obtained by lowering every positive
//! `x`-exponent by one. In `R/(y^{bₙ}) ≅ A[x,y]/(x^a, y^{bₙ})` the annihilator
//! of `x` is `(x^{a-1})`, which lies in `I` because `a - 1 >= a₁`. The exact
//! sequence `0 → R/xJ → R/J ⊕ R/x²J → R/xJ → 0` then puts
//! `R/(J + (y^{bₙ}))` in the extension closure of `R/I`.
//!
//! The schedule lowers `x`-exponents until only two generators remain and the
//! pure `x`-power is `x`, then does the same along `y`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::ReductionCertificate;
use crate::truncmono::{
    annihilator_of_x, Axis, Pair, RelationRing, StaircaseError, StaircaseIdeal, TruncatedRingParams,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("ideal must live in a relation ring x^a ± y^b, got {0}")]
    NotRelationRing(TruncatedRingParams),
    #[error("ideal {0} lacks a pure power of x or of y")]
    NotPrimaryForm(String),
    #[error("ideal {0} has fewer than two generators")]
    TooFewGenerators(String),
    #[error("dividing {ideal} by {axis} would give the unit ideal")]
    DegenerateStep { ideal: String, axis: Axis },
    #[error("annihilator of {axis} is not contained in {ideal} modulo the pure power")]
    HypothesisViolated { ideal: String, axis: Axis },
    #[error("reduction did not finish within {0} steps")]
    NonTermination(usize),
    #[error(transparent)]
    Staircase(#[from] StaircaseError),
}

/// Quotient ring of one step, `A[u,v]/(u^a, v^m)`, where `u` is the step's
/// axis variable and `v` the other one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientRing {
    /// Truncation exponent of the axis variable.
    pub a: u32,
    /// Exponent of the pure power of the other variable that is killed.
    pub m: u32,
}

impl QuotientRing {
    /// The ring in axis-first coordinates.
    pub fn oriented(&self) -> Result<TruncatedRingParams, StaircaseError> {
        TruncatedRingParams::truncated(self.a, self.m)
    }
}

/// One certified application of the annihilator lemma.
///
/// All ideals and `ann_generator` are written in the original `(x, y)`
/// coordinates of the relation ring; only `ring` is axis-first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnihilatorStep {
    pub axis: Axis,
    pub quotient_exponent: u32,
    pub ring: QuotientRing,
    /// `I = axis·J + (pure power)`.
    pub ideal_before: Vec<Pair>,
    /// `J`.
    pub divided_ideal: Vec<Pair>,
    /// `J + (pure power)`.
    pub ideal_after: Vec<Pair>,
    /// Generator of the annihilator of the axis variable in the quotient ring.
    pub ann_generator: Pair,
}

fn relation_of(ideal: &StaircaseIdeal) -> Result<RelationRing, ReductionError> {
    ideal
        .ring()
        .relation_ring()
        .ok_or(ReductionError::NotRelationRing(ideal.ring()))
}

fn check_primary(ideal: &StaircaseIdeal) -> Result<RelationRing, ReductionError> {
    let ring = relation_of(ideal)?;
    if ideal.len() < 2 {
        return Err(ReductionError::TooFewGenerators(ideal.to_string()));
    }
    if !ideal.is_primary_form() {
        return Err(ReductionError::NotPrimaryForm(ideal.to_string()));
    }
    Ok(ring)
}

/// Performs one step along `axis` on a primary staircase ideal.
pub fn annihilator_step(ideal: &StaircaseIdeal, axis: Axis) -> Result<AnnihilatorStep, ReductionError> {
    let ring = check_primary(ideal)?;

    // In axis-first coordinates (u, v) the pure power of the other variable is (0, m).
    let oriented: Vec<Pair> = ideal.pairs().iter().map(|&p| axis.orient(p)).collect();
    let (_, m) = *oriented
        .iter()
        .find(|&&(u, _)| u == 0)
        .expect("primary form has a pure power of each variable");
    let divided_oriented: Vec<Pair> = oriented
        .iter()
        .filter(|&&(u, _)| u > 0)
        .map(|&(u, v)| (u - 1, v))
        .collect();
    if divided_oriented.contains(&(0, 0)) {
        return Err(ReductionError::DegenerateStep {
            ideal: ideal.to_string(),
            axis,
        });
    }

    let quotient = QuotientRing {
        a: ring.bound(axis),
        m,
    };
    let step_ring = quotient.oriented()?;
    let ann = annihilator_of_x(step_ring)?;
    let image = StaircaseIdeal::normalize(step_ring, &oriented)?;
    if !image.contains_ideal(&ann)? {
        return Err(ReductionError::HypothesisViolated {
            ideal: ideal.to_string(),
            axis,
        });
    }

    let pure = axis.orient((0, m));
    let divided_pairs: Vec<Pair> = divided_oriented.iter().map(|&p| axis.orient(p)).collect();
    let divided = StaircaseIdeal::normalize(ideal.ring(), &divided_pairs)?;
    let mut after_pairs = divided.pairs().to_vec();
    after_pairs.push(pure);
    let after = StaircaseIdeal::normalize(ideal.ring(), &after_pairs)?;

    Ok(AnnihilatorStep {
        axis,
        quotient_exponent: m,
        ring: quotient,
        ideal_before: ideal.pairs().to_vec(),
        divided_ideal: divided.pairs().to_vec(),
        ideal_after: after.pairs().to_vec(),
        ann_generator: axis.orient(ann.pairs()[0]),
    })
}

/// Which step, if any, comes next.
fn next_axis(ideal: &StaircaseIdeal) -> Option<Axis> {
    let pairs = ideal.pairs();
    if pairs.len() >= 3 {
        return Some(Axis::X);
    }
    let (x_power, _) = pairs[0];
    let (_, y_power) = pairs[pairs.len() - 1];
    if x_power > 1 {
        Some(Axis::X)
    } else if y_power > 1 {
        Some(Axis::Y)
    } else {
        None
    }
}

/// Upper bound `a₁ + bₙ + n` on the number of steps.
pub fn step_bound(ideal: &StaircaseIdeal) -> usize {
    let pairs = ideal.pairs();
    pairs[0].0 as usize + pairs[pairs.len() - 1].1 as usize + pairs.len()
}

/// Reduces `ideal` to `(x, y)`, recording every step.
pub fn reduce_to_maximal(ideal: &StaircaseIdeal) -> Result<ReductionCertificate, ReductionError> {
    let ring = check_primary(ideal)?;
    let bound = step_bound(ideal);
    let mut steps = Vec::new();
    let mut current = ideal.clone();
    while let Some(axis) = next_axis(&current) {
        if steps.len() >= bound {
            return Err(ReductionError::NonTermination(bound));
        }
        let step = annihilator_step(&current, axis)?;
        current = StaircaseIdeal::normalize(current.ring(), &step.ideal_after)?;
        steps.push(step);
    }
    Ok(ReductionCertificate {
        ring,
        initial_ideal: ideal.pairs().to_vec(),
        steps,
        final_ideal: current.pairs().to_vec(),
    })
}
