//! Monomial ideals of a numerical semigroup ring `k[[H]]`, represented by
//! their value sets.
//!
//! A value set `E` satisfies `E + H ⊆ E`. Its normal form is the pair
//! `(threshold, sporadic)`: every integer `>= threshold` lies in `E`,
//! `threshold - 1` does not, and `sporadic` lists the members below the
//! threshold. Two ideals over the same semigroup are equal iff their normal
//! forms are equal.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::numsgp::{parse_generator_list, write_list, NumericalSemigroup, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ideals live over different semigroups")]
    AmbientMismatch,
    #[error("an ideal needs at least one generating value")]
    EmptyValues,
    #[error("semigroup {0} is not of the form ⟨a, a+1, …, a+r⟩")]
    NotArithmeticFamily(String),
    #[error("t^{value} generates no reduction of the maximal ideal up to exponent {bound}")]
    NoReductionFound { value: u64, bound: u64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("cannot parse ideal: {0}")]
    Parse(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// A monomial ideal of `k[[H]]` given by its value set.
#[derive(Clone)]
pub struct SemigroupIdeal {
    ambient: Arc<NumericalSemigroup>,
    threshold: u64,
    sporadic: Vec<u64>,
    minimal_generators: Vec<u64>,
    // membership below the threshold
    below: Vec<bool>,
    integral: bool,
}

impl SemigroupIdeal {
    /// The ideal with value set `vals + H`.
    pub fn from_values(ambient: &Arc<NumericalSemigroup>, vals: &[u64]) -> Result<Self, IdealError> {
        let least = *vals.iter().min().ok_or(IdealError::EmptyValues)?;
        let bound = least
            .checked_add(ambient.conductor())
            .ok_or(IdealError::Overflow("value set bound"))?;
        let table = (0..bound)
            .map(|n| vals.iter().any(|&v| n >= v && ambient.contains_value(n - v)))
            .collect();
        Ok(Self::from_table(ambient.clone(), bound, table))
    }

    /// Normalizes a value set given as a membership table on `[0, bound)`,
    /// with every integer `>= bound` a member. The table must already be
    /// closed under adding members of the semigroup.
    fn from_table(ambient: Arc<NumericalSemigroup>, bound: u64, mut table: Vec<bool>) -> Self {
        debug_assert_eq!(table.len() as u64, bound);
        let threshold = table.iter().rposition(|&m| !m).map_or(0, |i| i + 1);
        table.truncate(threshold);
        let threshold = threshold as u64;
        let sporadic: Vec<u64> = (0..threshold).filter(|&n| table[n as usize]).collect();

        let contains = |n: u64| n >= threshold || table[n as usize];
        let gens = ambient.generators();
        let scan_to = threshold + ambient.multiplicity();
        let minimal_generators = (0..scan_to)
            .filter(|&e| contains(e) && gens.iter().all(|&g| e < g || !contains(e - g)))
            .collect();

        let integral = sporadic.iter().all(|&n| ambient.contains_value(n))
            && (threshold..ambient.conductor()).all(|n| ambient.contains_value(n));

        SemigroupIdeal {
            ambient,
            threshold,
            sporadic,
            minimal_generators,
            below: table,
            integral,
        }
    }

    /// The whole ring, value set `H`.
    pub fn unit(ambient: &Arc<NumericalSemigroup>) -> Self {
        Self::from_values(ambient, &[0]).expect("nonempty")
    }

    /// The maximal ideal, generated by `t^g` for the minimal generators `g`.
    pub fn maximal(ambient: &Arc<NumericalSemigroup>) -> Self {
        Self::from_values(ambient, ambient.generators()).expect("nonempty")
    }

    /// The principal ideal `t^v R`.
    pub fn principal(ambient: &Arc<NumericalSemigroup>, v: u64) -> Result<Self, IdealError> {
        Self::from_values(ambient, &[v])
    }

    /// The `S`-ideal `t^a S`, value set `{n >= a}`. It is an ideal of `R`
    /// only when `a >= conductor`.
    pub fn tail(ambient: &Arc<NumericalSemigroup>, a: u64) -> Self {
        Self::from_table(ambient.clone(), a, vec![false; a as usize])
    }

    pub fn ambient(&self) -> &Arc<NumericalSemigroup> {
        &self.ambient
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn sporadic(&self) -> &[u64] {
        &self.sporadic
    }

    pub fn minimal_generators(&self) -> &[u64] {
        &self.minimal_generators
    }

    /// Whether the value set lies inside `H`, i.e. this is an ideal of `R`.
    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.threshold || self.below[n as usize]
    }

    /// Smallest value.
    pub fn order(&self) -> u64 {
        self.sporadic.first().copied().unwrap_or(self.threshold)
    }

    /// Number of monomials of `R` missing from the ideal, i.e. the length of
    /// `R/I` for integral ideals.
    pub fn colength(&self) -> u64 {
        (0..self.threshold.max(self.ambient.conductor()))
            .filter(|&n| self.ambient.contains_value(n) && !self.contains(n))
            .count() as u64
    }

    /// Value-set inclusion `other ⊆ self`.
    pub fn contains_ideal(&self, other: &SemigroupIdeal) -> Result<bool, IdealError> {
        self.check_ambient(other)?;
        Ok(other.minimal_generators.iter().all(|&g| self.contains(g)))
    }

    fn check_ambient(&self, other: &SemigroupIdeal) -> Result<(), IdealError> {
        if Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient {
            Ok(())
        } else {
            Err(IdealError::AmbientMismatch)
        }
    }

    /// Product ideal: value set `gens(I) + gens(J) + H`.
    pub fn multiply(&self, other: &SemigroupIdeal) -> Result<SemigroupIdeal, IdealError> {
        self.check_ambient(other)?;
        let mut sums = Vec::with_capacity(self.minimal_generators.len() * other.minimal_generators.len());
        for &i in &self.minimal_generators {
            for &j in &other.minimal_generators {
                sums.push(i.checked_add(j).ok_or(IdealError::Overflow("product values"))?);
            }
        }
        Self::from_values(&self.ambient, &sums)
    }

    /// Integral colon `I : J = {h ∈ H : h + gens(J) ⊆ E(I)}`.
    pub fn colon(&self, other: &SemigroupIdeal) -> Result<SemigroupIdeal, IdealError> {
        self.check_ambient(other)?;
        let h = &self.ambient;
        let bound = self.threshold.max(h.conductor());
        let table = (0..bound)
            .map(|n| {
                h.contains_value(n)
                    && (n >= self.threshold
                        || other.minimal_generators.iter().all(|&g| self.contains(n + g)))
            })
            .collect();
        Ok(Self::from_table(h.clone(), bound, table))
    }

    /// `Some(a)` iff the value set is exactly `{n >= a}`, i.e. `IS = I` for
    /// the normalization `S = k[[t]]`.
    pub fn is_stable_under_normalization(&self) -> Option<u64> {
        self.sporadic.is_empty().then_some(self.threshold)
    }

    /// `n`-th power, by repeated multiplication.
    pub fn pow(&self, n: u64) -> SemigroupIdeal {
        let mut acc = SemigroupIdeal::unit(&self.ambient);
        for _ in 0..n {
            acc = acc.multiply(self).expect("same ambient");
        }
        acc
    }
}

impl PartialEq for SemigroupIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.threshold == other.threshold
            && self.sporadic == other.sporadic
            && self.ambient.generators() == other.ambient.generators()
    }
}

impl Eq for SemigroupIdeal {}

impl fmt::Debug for SemigroupIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SemigroupIdeal({self} over {})", self.ambient)
    }
}

/// Prints the normal form, e.g. `{15,16,17,18} ∪ [20,∞)`.
impl fmt::Display for SemigroupIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        write_list(f, &self.sporadic)?;
        write!(f, "}} ∪ [{},∞)", self.threshold)
    }
}

/// Parses `"gens=e1,e2,... @ sgp=g1,g2,..."`.
impl FromStr for SemigroupIdeal {
    type Err = IdealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lhs, rhs) = s
            .split_once('@')
            .ok_or_else(|| IdealError::Parse(format!("missing '@' in {s:?}")))?;
        let field = |part: &str, key: &str| -> Result<Vec<u64>, IdealError> {
            let body = part
                .trim()
                .strip_prefix(key)
                .and_then(|rest| rest.trim_start().strip_prefix('='))
                .ok_or_else(|| IdealError::Parse(format!("expected {key}=... in {:?}", part.trim())))?;
            Ok(parse_generator_list(body)?)
        };
        let vals = field(lhs, "gens")?;
        let gens = field(rhs, "sgp")?;
        let ambient = Arc::new(NumericalSemigroup::from_generators(&gens)?);
        Self::from_values(&ambient, &vals)
    }
}

/// `𝔪^n`, computed by iterated multiplication with normalization at each step.
pub fn max_ideal_power(ambient: &Arc<NumericalSemigroup>, n: u64) -> SemigroupIdeal {
    SemigroupIdeal::maximal(ambient).pow(n)
}

/// The conductor ideal, value set `{n >= c}`.
pub fn conductor_ideal(ambient: &Arc<NumericalSemigroup>) -> SemigroupIdeal {
    SemigroupIdeal::tail(ambient, ambient.conductor())
}

/// Least `n >= 1` with `𝔪^n` stable under normalization, searching up to
/// `limit`. Outside well-behaved families such as `⟨a, …, a+r⟩` this may not
/// exist (for `⟨3,5⟩` the value `3n+1` never lies in `𝔪^n`).
pub fn stable_power_index(ambient: &Arc<NumericalSemigroup>, limit: u64) -> Option<u64> {
    let m = SemigroupIdeal::maximal(ambient);
    let mut power = m.clone();
    for n in 1..=limit {
        if power.is_stable_under_normalization().is_some() {
            return Some(n);
        }
        power = power.multiply(&m).expect("same ambient");
    }
    None
}

/// Least `n` with `𝔪^n` stable under normalization, for `⟨a, a+1, …, a+r⟩`.
pub fn stable_power_threshold(ambient: &Arc<NumericalSemigroup>) -> Result<u64, IdealError> {
    let (a, _) = ambient
        .arithmetic_params()
        .ok_or_else(|| IdealError::NotArithmeticFamily(ambient.to_string()))?;
    // m^(a-1) = t^((a-1)a) S always holds in this family.
    Ok(stable_power_index(ambient, a.max(1)).expect("arithmetic family stabilizes by a - 1"))
}

/// Least `n >= 1` with `𝔪^{n+1} = t^x 𝔪^n`, searched up to the conductor.
pub fn reduction_exponent(ambient: &Arc<NumericalSemigroup>, x_value: u64) -> Result<u64, IdealError> {
    if x_value == 0 || !ambient.contains_value(x_value) {
        return Err(SemigroupError::NotAMember(x_value).into());
    }
    let bound = ambient.conductor().max(1);
    let m = SemigroupIdeal::maximal(ambient);
    let x = SemigroupIdeal::principal(ambient, x_value)?;
    let mut power = m.clone();
    for n in 1..=bound {
        let next = power.multiply(&m)?;
        if next == x.multiply(&power)? {
            return Ok(n);
        }
        power = next;
    }
    Err(IdealError::NoReductionFound { value: x_value, bound })
}
