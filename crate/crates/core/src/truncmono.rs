//! Monomial ideals in two variables, as staircases.
//!
//! Two kinds of ambient ring are modelled:
//!
//! * the truncated ring `k[x,y]/(x^X, y^Y)`, where a monomial with an
//!   exponent at or above its truncation is zero;
//! * the relation ring `k[x,y]/(x^a ± y^b)`, where staircase exponents are
//!   kept in the box `[0,a) × [0,b)`.
//!
//! A [`StaircaseIdeal`] stores its minimal monomial generators as exponent
//! pairs `(x_exp, y_exp)`, sorted by strictly decreasing `x_exp` and strictly
//! increasing `y_exp`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numsgp::NumericalSemigroup;
use crate::valideal::{conductor_ideal, IdealError};

/// Exponent pair `(x_exp, y_exp)` of the monomial `x^x_exp y^y_exp`.
pub type Pair = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StaircaseError {
    #[error("a monomial ideal needs at least one generator")]
    EmptyIdeal,
    #[error("every generator vanishes in {0}")]
    ZeroIdeal(TruncatedRingParams),
    #[error("exponent pair {pair:?} lies outside the staircase box of {ring}")]
    OutOfRange { pair: Pair, ring: TruncatedRingParams },
    #[error("invalid ring parameters: {0}")]
    InvalidRing(String),
    #[error("the annihilator of x is only computed in truncated rings, not {0}")]
    InfiniteRing(TruncatedRingParams),
    #[error("ideals live in different rings ({0} vs {1})")]
    RingMismatch(TruncatedRingParams, TruncatedRingParams),
    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("conductor value {value} has no representation a·p + b·q with p < b, q < a")]
    RepresentationFailure { value: u64 },
    #[error("cannot parse: {0}")]
    Parse(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// Sign in the relation `x^a ± y^b`. Carried for fidelity only; no monomial
/// operation depends on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Which variable plays the role of the element in a reduction step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }

    /// Rewrites a pair so that the axis variable comes first.
    pub fn orient(self, (x, y): Pair) -> Pair {
        match self {
            Axis::X => (x, y),
            Axis::Y => (y, x),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
        })
    }
}

/// The ring `A[x,y]/(x^a ± y^b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationRing {
    pub a: u32,
    pub b: u32,
    pub sign: Sign,
}

impl RelationRing {
    pub fn new(a: u32, b: u32, sign: Sign) -> Result<Self, StaircaseError> {
        let ring = RelationRing { a, b, sign };
        ring.validate()?;
        Ok(ring)
    }

    pub fn validate(&self) -> Result<(), StaircaseError> {
        if self.a < 2 || self.b < 1 {
            return Err(StaircaseError::InvalidRing(format!(
                "relation ring needs a >= 2 and b >= 1, got a={}, b={}",
                self.a, self.b
            )));
        }
        Ok(())
    }

    /// Exponent bound of the given variable: `a` for `x`, `b` for `y`.
    pub fn bound(&self, axis: Axis) -> u32 {
        match axis {
            Axis::X => self.a,
            Axis::Y => self.b,
        }
    }
}

/// Ambient ring of a staircase ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruncatedRingParams {
    /// `k[x,y]/(x^x_trunc, y^y_trunc)`.
    Truncated { x_trunc: u32, y_trunc: u32 },
    /// `k[x,y]/(x^a ± y^b)`, with no truncation of `y`.
    Relation(RelationRing),
}

impl TruncatedRingParams {
    pub fn truncated(x_trunc: u32, y_trunc: u32) -> Result<Self, StaircaseError> {
        if x_trunc < 2 || y_trunc < 1 {
            return Err(StaircaseError::InvalidRing(format!(
                "truncated ring needs x_trunc >= 2 and y_trunc >= 1, got a={x_trunc}, m={y_trunc}"
            )));
        }
        Ok(TruncatedRingParams::Truncated { x_trunc, y_trunc })
    }

    pub fn relation(a: u32, b: u32, sign: Sign) -> Result<Self, StaircaseError> {
        Ok(TruncatedRingParams::Relation(RelationRing::new(a, b, sign)?))
    }

    pub fn x_trunc(&self) -> u32 {
        match *self {
            TruncatedRingParams::Truncated { x_trunc, .. } => x_trunc,
            TruncatedRingParams::Relation(r) => r.a,
        }
    }

    /// `y_trunc` for truncated rings, `None` (infinite) for relation rings.
    pub fn y_trunc(&self) -> Option<u32> {
        match *self {
            TruncatedRingParams::Truncated { y_trunc, .. } => Some(y_trunc),
            TruncatedRingParams::Relation(_) => None,
        }
    }

    pub fn relation_ring(&self) -> Option<RelationRing> {
        match *self {
            TruncatedRingParams::Relation(r) => Some(r),
            TruncatedRingParams::Truncated { .. } => None,
        }
    }
}

impl From<RelationRing> for TruncatedRingParams {
    fn from(r: RelationRing) -> Self {
        TruncatedRingParams::Relation(r)
    }
}

/// `a=5,b=3,sign=-` or `a=5,m=2`.
impl fmt::Display for TruncatedRingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruncatedRingParams::Truncated { x_trunc, y_trunc } => write!(f, "a={x_trunc},m={y_trunc}"),
            TruncatedRingParams::Relation(r) => write!(f, "a={},b={},sign={}", r.a, r.b, r.sign),
        }
    }
}

impl FromStr for TruncatedRingParams {
    type Err = StaircaseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut a = None;
        let mut b = None;
        let mut m = None;
        let mut sign = None;
        for field in s.split(',') {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| StaircaseError::Parse(format!("expected key=value, got {field:?}")))?;
            let number = || {
                value
                    .trim()
                    .parse::<u32>()
                    .map_err(|e| StaircaseError::Parse(format!("{key}={value}: {e}")))
            };
            match key.trim() {
                "a" => a = Some(number()?),
                "b" => b = Some(number()?),
                "m" => m = Some(number()?),
                "sign" => {
                    sign = Some(match value.trim() {
                        "+" => Sign::Plus,
                        "-" => Sign::Minus,
                        other => return Err(StaircaseError::Parse(format!("unknown sign {other:?}"))),
                    })
                }
                other => return Err(StaircaseError::Parse(format!("unknown ring field {other:?}"))),
            }
        }
        let a = a.ok_or_else(|| StaircaseError::Parse("ring needs a=".into()))?;
        match (b, m, sign) {
            (Some(b), None, Some(sign)) => Self::relation(a, b, sign),
            (None, Some(m), None) => Self::truncated(a, m),
            _ => Err(StaircaseError::Parse(format!(
                "ring must be a=..,b=..,sign=.. or a=..,m=.., got {s:?}"
            ))),
        }
    }
}

/// A monomial ideal in normal staircase form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StaircaseIdeal {
    ring: TruncatedRingParams,
    pairs: Vec<Pair>,
}

impl StaircaseIdeal {
    /// Drops generators that vanish in a truncated ring, removes
    /// componentwise-dominated pairs and sorts into staircase order.
    pub fn normalize(ring: TruncatedRingParams, raw_pairs: &[Pair]) -> Result<Self, StaircaseError> {
        if raw_pairs.is_empty() {
            return Err(StaircaseError::EmptyIdeal);
        }
        let mut kept: Vec<Pair> = match ring {
            TruncatedRingParams::Truncated { x_trunc, y_trunc } => raw_pairs
                .iter()
                .copied()
                .filter(|&(x, y)| x < x_trunc && y < y_trunc)
                .collect(),
            TruncatedRingParams::Relation(r) => {
                if let Some(&pair) = raw_pairs.iter().find(|&&(x, y)| x >= r.a || y >= r.b) {
                    return Err(StaircaseError::OutOfRange { pair, ring });
                }
                raw_pairs.to_vec()
            }
        };
        if kept.is_empty() {
            return Err(StaircaseError::ZeroIdeal(ring));
        }
        // Sorted by y then x, a pair survives iff its x is below every x seen so far.
        kept.sort_unstable_by_key(|&(x, y)| (y, x));
        let mut pairs = Vec::with_capacity(kept.len());
        let mut min_x = u32::MAX;
        for (x, y) in kept {
            if x < min_x {
                pairs.push((x, y));
                min_x = x;
            }
        }
        Ok(StaircaseIdeal { ring, pairs })
    }

    /// The maximal ideal `(x, y)`.
    pub fn maximal(ring: TruncatedRingParams) -> Self {
        StaircaseIdeal::normalize(ring, &[(1, 0), (0, 1)]).expect("(x, y) is nonzero in every ring")
    }

    pub fn ring(&self) -> TruncatedRingParams {
        self.ring
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Whether `x^p y^q` lies in the ideal.
    pub fn contains_monomial(&self, p: u32, q: u32) -> bool {
        match self.ring {
            TruncatedRingParams::Truncated { x_trunc, y_trunc } => {
                p >= x_trunc || q >= y_trunc || self.pairs.iter().any(|&(a, b)| a <= p && b <= q)
            }
            TruncatedRingParams::Relation(r) => {
                // Reduce x^p y^q to x^(p mod a) y^(q + b⌊p/a⌋). A reduced monomial
                // lies in the ideal iff it is a reduced multiple of a generator;
                // for a generator x^g y^h that means g <= p', h <= q', or wrapping
                // once through x^a = ∓y^b: g > p', h + b <= q'.
                let (a, b) = (r.a as u64, r.b as u64);
                let (p, q) = (p as u64, q as u64);
                let p_red = p % a;
                let q_red = q + b * (p / a);
                self.pairs.iter().any(|&(g, h)| {
                    let (g, h) = (g as u64, h as u64);
                    (g <= p_red && h <= q_red) || (g > p_red && h + b <= q_red)
                })
            }
        }
    }

    /// `J ⊆ I` where `I = self`.
    pub fn contains_ideal(&self, other: &StaircaseIdeal) -> Result<bool, StaircaseError> {
        if self.ring != other.ring {
            return Err(StaircaseError::RingMismatch(self.ring, other.ring));
        }
        Ok(other.pairs.iter().all(|&(p, q)| self.contains_monomial(p, q)))
    }

    /// The ideal `axis · I`.
    pub fn multiply_by_axis(&self, axis: Axis) -> Result<StaircaseIdeal, StaircaseError> {
        let shifted: Vec<Pair> = self
            .pairs
            .iter()
            .map(|&(x, y)| match axis {
                Axis::X => (x + 1, y),
                Axis::Y => (x, y + 1),
            })
            .collect();
        StaircaseIdeal::normalize(self.ring, &shifted)
    }

    pub fn multiply_by_x(&self) -> Result<StaircaseIdeal, StaircaseError> {
        self.multiply_by_axis(Axis::X)
    }

    /// The same generators, read in another ring.
    pub fn image_in(&self, ring: TruncatedRingParams) -> Result<StaircaseIdeal, StaircaseError> {
        StaircaseIdeal::normalize(ring, &self.pairs)
    }

    /// Contains a pure power of `x` and a pure power of `y`, with at least
    /// two generators: the `aₙ = 0`, `b₁ = 0` pattern.
    pub fn is_primary_form(&self) -> bool {
        self.pairs.len() >= 2 && self.pairs[0].1 == 0 && self.pairs[self.pairs.len() - 1].0 == 0
    }

    pub fn is_maximal(&self) -> bool {
        self.pairs == [(1, 0), (0, 1)]
    }
}

/// Prints `3,0;1,1;0,2`.
impl fmt::Display for StaircaseIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pairs(f, &self.pairs)
    }
}

pub(crate) fn write_pairs(f: &mut fmt::Formatter<'_>, pairs: &[Pair]) -> fmt::Result {
    for (i, (x, y)) in pairs.iter().enumerate() {
        if i > 0 {
            f.write_str(";")?;
        }
        write!(f, "{x},{y}")?;
    }
    Ok(())
}

/// Parses `"3,0;1,1;0,2"` into raw exponent pairs.
pub fn parse_pairs(s: &str) -> Result<Vec<Pair>, StaircaseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(StaircaseError::EmptyIdeal);
    }
    s.split(';')
        .map(|chunk| {
            let (x, y) = chunk
                .split_once(',')
                .ok_or_else(|| StaircaseError::Parse(format!("expected x,y pair, got {chunk:?}")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| StaircaseError::Parse(format!("{chunk:?}: {e}")))
            };
            Ok((parse(x)?, parse(y)?))
        })
        .collect()
}

/// The annihilator `0 : x` of `k[x,y]/(x^X, y^Y)`, which is `(x^{X-1})`.
pub fn annihilator_of_x(ring: TruncatedRingParams) -> Result<StaircaseIdeal, StaircaseError> {
    match ring {
        TruncatedRingParams::Truncated { x_trunc, .. } => StaircaseIdeal::normalize(ring, &[(x_trunc - 1, 0)]),
        TruncatedRingParams::Relation(_) => Err(StaircaseError::InfiniteRing(ring)),
    }
}

/// Value `b·x_exp + a·y_exp` of `x^x_exp y^y_exp` under `x = t^b`, `y = t^a`.
pub fn pair_value(a: u64, b: u64, (x, y): Pair) -> u64 {
    b * x as u64 + a * y as u64
}

/// Staircase of the conductor ideal of `k[[t^a, t^b]] ≅ k[[x,y]]/(x^a - y^b)`
/// with `x = t^b`, `y = t^a`.
///
/// Each minimal value `n` of the conductor ideal is written as
/// `n = a·p + b·q` with `p ≡ n·a⁻¹ (mod b)`, giving the generator `x^q y^p`.
pub fn staircase_of_conductor(a: u64, b: u64) -> Result<StaircaseIdeal, StaircaseError> {
    if b < 2 || a <= b {
        return Err(StaircaseError::InvalidParameters(format!(
            "need a > b >= 2, got a={a}, b={b}"
        )));
    }
    if a.gcd(&b) != 1 {
        return Err(StaircaseError::NotCoprime { a, b });
    }
    let (a32, b32) = match (u32::try_from(a), u32::try_from(b)) {
        (Ok(x), Ok(y)) => (x, y),
        _ => return Err(StaircaseError::InvalidParameters(format!("a={a}, b={b} too large"))),
    };
    let ring = TruncatedRingParams::relation(a32, b32, Sign::Minus)?;

    let semigroup = Arc::new(NumericalSemigroup::from_generators(&[b, a]).map_err(IdealError::from)?);
    let conductor = conductor_ideal(&semigroup);

    let a_inv = {
        let e = (a as i64).extended_gcd(&(b as i64));
        e.x.rem_euclid(b as i64) as u64
    };
    let mut pairs = Vec::with_capacity(conductor.minimal_generators().len());
    for &n in conductor.minimal_generators() {
        let p = ((n % b) * a_inv) % b;
        let rest = n
            .checked_sub(a * p)
            .ok_or(StaircaseError::RepresentationFailure { value: n })?;
        let q = rest / b;
        if rest % b != 0 || q > a - 1 || p > b - 1 {
            return Err(StaircaseError::RepresentationFailure { value: n });
        }
        pairs.push((q as u32, p as u32));
    }
    StaircaseIdeal::normalize(ring, &pairs)
}
