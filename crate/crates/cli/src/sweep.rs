//! Parameter sweeps that compare closed forms against brute force.

use std::sync::Arc;

use clap::ValueEnum;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use staircase_kit::extcalc::step_bound;
use staircase_kit::numsgp::stable_exponent;
use staircase_kit::truncmono::pair_value;
use staircase_kit::{
    conductor_arithmetic, conductor_ideal, max_ideal_power, reduce_to_maximal, staircase_of_conductor, verify,
    NumericalSemigroup, SemigroupIdeal,
};

use crate::output::{opt, Record};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `⟨a, a+1, …, a+r⟩` for `1 <= r < a`
    Arithmetic,
    /// `⟨b, a⟩` for coprime `a > b >= 2`
    TwoGenerator,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Arithmetic => "arithmetic",
            Family::TwoGenerator => "two-generator",
        }
    }

    fn supports(self, check: Check) -> bool {
        use Check::*;
        match self {
            Family::Arithmetic => matches!(check, ConductorFormula | StablePower | ConductorIdeal | PowerColons | Frobenius),
            Family::TwoGenerator => matches!(check, ConductorIdeal | Frobenius | Staircase | Reduce),
        }
    }

    pub fn default_checks(self) -> Vec<Check> {
        Check::value_variants().iter().copied().filter(|&c| self.supports(c)).collect()
    }

    /// `(a, r)` or `(a, b)` in lexicographic order.
    fn instances(self, a_max: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for a in 2..=a_max {
            for p in match self {
                Family::Arithmetic => 1..a,
                Family::TwoGenerator => 2..a,
            } {
                if self == Family::Arithmetic || a.gcd(&p) == 1 {
                    out.push((a, p));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    /// arithmetic conductor formula vs brute force
    #[value(name = "num1")]
    ConductorFormula,
    /// least stable power of the maximal ideal
    #[value(name = "num2")]
    StablePower,
    /// conductor ideal and conductor value
    #[value(name = "cond")]
    ConductorIdeal,
    /// colons of maximal ideal powers
    #[value(name = "lemma6")]
    PowerColons,
    /// Frobenius number formula vs brute force
    Frobenius,
    /// staircase of the conductor ideal
    Staircase,
    /// certified reduction of the conductor staircase
    Reduce,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::ConductorFormula => "num1",
            Check::StablePower => "num2",
            Check::ConductorIdeal => "cond",
            Check::PowerColons => "lemma6",
            Check::Frobenius => "frobenius",
            Check::Staircase => "staircase",
            Check::Reduce => "reduce",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub check: &'static str,
    pub family: &'static str,
    pub a: u64,
    pub param: u64,
    pub formula: Option<i64>,
    pub brute: Option<i64>,
    pub pass: bool,
    pub detail: String,
}

impl Record for SweepRow {
    const HEADERS: &'static [&'static str] = &["check", "family", "a", "param", "formula", "brute", "pass", "detail"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.check.into(),
            self.family.into(),
            self.a.to_string(),
            self.param.to_string(),
            opt(self.formula),
            opt(self.brute),
            self.pass.to_string(),
            self.detail.clone(),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: Family,
    pub a_max: u64,
    pub checks: Vec<Check>,
}

impl SweepSpec {
    pub fn new(family: Family, a_max: u64, mut checks: Vec<Check>) -> Result<Self, String> {
        if a_max < 2 {
            return Err(format!("--a-max must be at least 2, got {a_max}"));
        }
        if checks.is_empty() {
            return Err("select at least one check".into());
        }
        checks.sort_unstable();
        checks.dedup();
        if let Some(bad) = checks.iter().find(|&&c| !family.supports(c)) {
            return Err(format!("check {} does not apply to the {} family", bad.name(), family.name()));
        }
        Ok(Self { family, a_max, checks })
    }
}

/// Runs every check on every instance. Rows come back ordered by check, then
/// parameters, regardless of scheduling.
pub fn run(spec: &SweepSpec) -> Vec<SweepRow> {
    let instances = spec.family.instances(spec.a_max);
    let jobs: Vec<(Check, u64, u64)> = spec
        .checks
        .iter()
        .flat_map(|&c| instances.iter().map(move |&(a, p)| (c, a, p)))
        .collect();
    jobs.into_par_iter()
        .map(|(check, a, p)| {
            let mut row = SweepRow {
                check: check.name(),
                family: spec.family.name(),
                a,
                param: p,
                formula: None,
                brute: None,
                pass: false,
                detail: String::new(),
            };
            if let Err(e) = run_one(spec.family, check, a, p, &mut row) {
                row.pass = false;
                row.detail = format!("error: {e}");
            }
            row
        })
        .collect()
}

fn run_one(family: Family, check: Check, a: u64, p: u64, row: &mut SweepRow) -> Result<(), String> {
    let to_i = |v: u64| i64::try_from(v).map_err(|_| format!("{v} exceeds i64"));
    let semigroup = match family {
        Family::Arithmetic => NumericalSemigroup::arithmetic(a, p),
        Family::TwoGenerator => NumericalSemigroup::from_generators(&[p, a]),
    }
    .map_err(|e| e.to_string())?;
    let h = Arc::new(semigroup);
    // Only meaningful for the arithmetic family.
    let u = stable_exponent(a, p);

    match (family, check) {
        (Family::Arithmetic, Check::ConductorFormula) => {
            let formula = conductor_arithmetic(a, p).map_err(|e| e.to_string())?;
            row.formula = Some(to_i(formula)?);
            row.brute = Some(to_i(h.conductor())?);
            row.pass = formula == h.conductor();
        }
        (Family::Arithmetic, Check::StablePower) => {
            let m = SemigroupIdeal::maximal(&h);
            let mut power = m.clone();
            let mut least = None;
            let mut mismatch = None;
            for n in 1..=u + 3 {
                let stable = power.is_stable_under_normalization().is_some();
                if stable && least.is_none() {
                    least = Some(n);
                }
                if stable != (n >= u) && mismatch.is_none() {
                    mismatch = Some(n);
                }
                power = power.multiply(&m).map_err(|e| e.to_string())?;
            }
            row.formula = Some(to_i(u)?);
            row.brute = least.map(to_i).transpose()?;
            row.pass = mismatch.is_none() && least == Some(u);
            row.detail = match mismatch {
                Some(n) => format!("stability of m^{n} disagrees with n >= {u}"),
                None => format!("checked n <= {}", u + 3),
            };
        }
        (Family::Arithmetic, Check::ConductorIdeal) => {
            let formula = u * a;
            let cond = conductor_ideal(&h);
            let equal = cond == max_ideal_power(&h, u);
            row.formula = Some(to_i(formula)?);
            row.brute = Some(to_i(h.conductor())?);
            row.pass = formula == h.conductor() && equal;
            row.detail = if equal { format!("conductor ideal = m^{u}") } else { format!("conductor ideal != m^{u}") };
        }
        (Family::Arithmetic, Check::PowerColons) => {
            let top = 2 * u + 3;
            let powers: Vec<SemigroupIdeal> = (0..=top).map(|n| max_ideal_power(&h, n)).collect();
            let mut count = 0;
            for i in 1..=top as usize {
                for j in 0..=i {
                    let colon = powers[i].colon(&powers[j]).map_err(|e| e.to_string())?;
                    if colon != powers[i - j] {
                        row.detail = format!("(m^{i} : m^{j}) = {colon}, expected {}", powers[i - j]);
                        return Ok(());
                    }
                    count += 1;
                }
            }
            row.pass = true;
            row.detail = format!("{count} colons up to m^{top}");
        }
        (Family::Arithmetic, Check::Frobenius) => {
            let formula = to_i(u * a)? - 1;
            row.formula = Some(formula);
            row.brute = Some(h.frobenius());
            row.pass = formula == h.frobenius();
        }
        (Family::TwoGenerator, Check::ConductorIdeal) => {
            let formula = (a - 1) * (p - 1);
            row.formula = Some(to_i(formula)?);
            row.brute = Some(to_i(h.conductor())?);
            row.pass = formula == h.conductor();
        }
        (Family::TwoGenerator, Check::Frobenius) => {
            let formula = to_i(a * p)? - to_i(a)? - to_i(p)?;
            row.formula = Some(formula);
            row.brute = Some(h.frobenius());
            row.pass = formula == h.frobenius();
        }
        (Family::TwoGenerator, Check::Staircase) => {
            let c = (a - 1) * (p - 1);
            let stair = staircase_of_conductor(a, p).map_err(|e| e.to_string())?;
            let pairs = stair.pairs();
            let n = pairs.len();
            let shaped = pairs[0].1 == 0
                && pairs[n - 1].0 == 0
                && (pairs[0].0 as u64) < a
                && (pairs[n - 1].1 as u64) < p
                && pairs.windows(2).all(|w| w[0].0 > w[1].0 && w[0].1 < w[1].1);
            let values: Vec<u64> = pairs.iter().map(|&pq| pair_value(a, p, pq)).collect();
            let regenerated = SemigroupIdeal::from_values(&h, &values).map_err(|e| e.to_string())?;
            row.formula = Some(to_i(c)?);
            row.brute = regenerated.is_stable_under_normalization().map(to_i).transpose()?;
            row.pass = shaped && regenerated == SemigroupIdeal::tail(&h, c) && h.conductor() == c;
            row.detail = stair.to_string();
        }
        (Family::TwoGenerator, Check::Reduce) => {
            let stair = staircase_of_conductor(a, p).map_err(|e| e.to_string())?;
            let cert = reduce_to_maximal(&stair).map_err(|e| e.to_string())?;
            let bound = step_bound(&stair);
            let report = verify(&cert);
            row.formula = Some(to_i(bound as u64)?);
            row.brute = Some(to_i(cert.steps.len() as u64)?);
            row.pass = report.is_valid() && cert.steps.len() <= bound;
            row.detail = if report.is_valid() { "verified".into() } else { format!("{} failures", report.failures.len()) };
        }
        (family, check) => unreachable!("{check:?} rejected for {family:?} by SweepSpec::new"),
    }
    Ok(())
}
