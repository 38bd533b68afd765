//! Numerical semigroups.
//!
//! A [`NumericalSemigroup`] is stored in minimal-generator normal form together
//! with a membership table that covers `[0, conductor + max generator]`. Every
//! integer at or above the conductor is a member, so the table answers
//! membership for all of `ℤ`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

/// Largest membership table we are willing to allocate.
const MAX_TABLE: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("generators have gcd {0}; the semigroup is not cofinite")]
    NotCofinite(u64),
    #[error("{0} is not a nonzero member of the semigroup")]
    NotAMember(u64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("membership table of {0} entries is too large")]
    TooLarge(u64),
    #[error("cannot parse generator list: {0}")]
    Parse(String),
}

/// A cofinite additive submonoid of the nonnegative integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    conductor: u64,
    table: Vec<bool>,
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `gens` and extracts its minimal
    /// generating set.
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        if gens.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();

        let g = sorted.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(SemigroupError::NotCofinite(g));
        }

        let smallest = sorted[0];
        let largest = *sorted.last().expect("nonempty");
        // Schur: the Frobenius number is below (smallest - 1)(largest - 1).
        let bound = (smallest - 1)
            .checked_mul(largest - 1)
            .and_then(|v| v.checked_add(largest))
            .and_then(|v| v.checked_add(1))
            .ok_or(SemigroupError::Overflow("membership bound"))?;
        if bound > MAX_TABLE {
            return Err(SemigroupError::TooLarge(bound));
        }
        let bound = bound as usize;

        let mut member = vec![false; bound];
        member[0] = true;
        for n in 1..bound {
            member[n] = sorted
                .iter()
                .take_while(|&&g| g as usize <= n)
                .any(|&g| member[n - g as usize]);
        }
        let conductor = member.iter().rposition(|&m| !m).map_or(0, |i| i + 1) as u64;

        // g is redundant iff it splits as a sum of two nonzero members.
        let generators: Vec<u64> = sorted
            .iter()
            .copied()
            .filter(|&g| {
                let g = g as usize;
                !(1..g).any(|h| member[h] && member[g - h])
            })
            .collect();

        let max_gen = *generators.last().expect("at least one minimal generator");
        let len = (conductor + max_gen + 1) as usize;
        member.resize(len.max(1), true);
        member.truncate(len);

        Ok(NumericalSemigroup {
            generators,
            conductor,
            table: member,
        })
    }

    /// The semigroup `⟨a, a+1, …, a+r⟩`.
    pub fn arithmetic(a: u64, r: u64) -> Result<Self, SemigroupError> {
        if a == 0 || r == 0 {
            return Err(SemigroupError::InvalidParameters(format!(
                "arithmetic family needs a >= 1 and r >= 1, got a={a}, r={r}"
            )));
        }
        let top = a
            .checked_add(r)
            .ok_or(SemigroupError::Overflow("arithmetic generators"))?;
        let gens: Vec<u64> = (a..=top).collect();
        Self::from_generators(&gens)
    }

    /// The full semigroup `ℕ`.
    pub fn natural() -> Self {
        Self::from_generators(&[1]).expect("⟨1⟩ is cofinite")
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Smallest nonzero member.
    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Largest gap, or `-1` for `ℕ`.
    pub fn frobenius(&self) -> i64 {
        self.conductor as i64 - 1
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= 0 && self.contains_value(n as u64)
    }

    pub fn contains_value(&self, n: u64) -> bool {
        n >= self.conductor || self.table[n as usize]
    }

    /// Sorted list of nonmembers.
    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor)
            .filter(|&n| !self.table[n as usize])
            .collect()
    }

    pub fn genus(&self) -> usize {
        self.gaps().len()
    }

    /// For each residue class modulo `m`, the least member in that class.
    pub fn apery_set(&self, m: u64) -> Result<Vec<u64>, SemigroupError> {
        if m == 0 || !self.contains_value(m) {
            return Err(SemigroupError::NotAMember(m));
        }
        let mut least = vec![None; m as usize];
        let mut missing = m as usize;
        let mut n = 0u64;
        while missing > 0 {
            if self.contains_value(n) {
                let slot = &mut least[(n % m) as usize];
                if slot.is_none() {
                    *slot = Some(n);
                    missing -= 1;
                }
            }
            n += 1;
        }
        Ok(least.into_iter().map(|v| v.expect("all residues found")).collect())
    }

    /// Returns `(a, r)` when the minimal generators are `a, a+1, …, a+r`
    /// with `a >= 2` and `r >= 1`.
    pub fn arithmetic_params(&self) -> Option<(u64, u64)> {
        let a = self.generators[0];
        if a < 2 || self.generators.len() < 2 {
            return None;
        }
        let consecutive = self
            .generators
            .iter()
            .enumerate()
            .all(|(i, &g)| g == a + i as u64);
        consecutive.then(|| (a, self.generators.len() as u64 - 1))
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumericalSemigroup{:?}", self.generators)
    }
}

/// Prints the comma-separated generator list, e.g. `5,6`.
impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.generators)
    }
}

impl FromStr for NumericalSemigroup {
    type Err = SemigroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let gens = parse_generator_list(s)?;
        Self::from_generators(&gens)
    }
}

pub(crate) fn write_list(f: &mut fmt::Formatter<'_>, values: &[u64]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Parses `"5,6"` style lists. Whitespace around entries is ignored.
pub fn parse_generator_list(s: &str) -> Result<Vec<u64>, SemigroupError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(SemigroupError::EmptyGenerators);
    }
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|e| SemigroupError::Parse(format!("{:?}: {e}", tok.trim())))
        })
        .collect()
}

/// Conductor of `⟨a, a+1, …, a+r⟩` in closed form: `⌈(a-1)/r⌉·a`.
pub fn conductor_arithmetic(a: u64, r: u64) -> Result<u64, SemigroupError> {
    if a < 2 || r < 1 {
        return Err(SemigroupError::InvalidParameters(format!(
            "need a >= 2 and r >= 1, got a={a}, r={r}"
        )));
    }
    stable_exponent(a, r)
        .checked_mul(a)
        .ok_or(SemigroupError::Overflow("arithmetic conductor"))
}

/// `⌈(a-1)/r⌉`, the exponent `u` with `𝔠 = 𝔪^u` for `⟨a, …, a+r⟩`.
pub fn stable_exponent(a: u64, r: u64) -> u64 {
    (a - 1).div_ceil(r)
}
