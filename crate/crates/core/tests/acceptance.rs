//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use staircase_kit::{
    conductor_arithmetic, conductor_ideal, max_ideal_power, reduce_to_maximal, reduction_exponent,
    staircase_of_conductor, verify, Axis, NumericalSemigroup, Pair, ReductionCertificate, SemigroupIdeal,
    StaircaseIdeal, TruncatedRingParams,
};
use staircase_kit::certify::CheckKind;
use staircase_kit::extcalc::step_bound;
use staircase_kit::truncmono::pair_value;

use common::{brute_closure, brute_conductor, brute_members, random_staircase};

type Outcome = Result<String, String>;

/// Id, name, time budget, runner.
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Values of `𝔪^k` below `limit`: the semigroup plus `k` copies of its nonzero members.
fn brute_max_power(gens: &[u64], k: u64, limit: usize) -> Vec<bool> {
    let member = brute_members(gens, limit);
    let mut cur = member.clone();
    for _ in 0..k {
        let mut next = vec![false; limit];
        for (s, &in_cur) in cur.iter().enumerate() {
            if !in_cur {
                continue;
            }
            for (t, &is_member) in member.iter().enumerate().skip(1) {
                if s + t >= limit {
                    break;
                }
                if is_member {
                    next[s + t] = true;
                }
            }
        }
        cur = next;
    }
    cur
}

fn ideal_matches(ideal: &SemigroupIdeal, expected: &[bool]) -> bool {
    expected.iter().enumerate().all(|(n, &e)| ideal.contains(n as u64) == e)
}

fn arithmetic_gens(a: u64, r: u64) -> Vec<u64> {
    (a..=a + r).collect()
}

fn coprime_pairs() -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for b in 2..=39u64 {
        for a in b + 1..=40 {
            if a.gcd(&b) == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut count = 0;
    for a in 2..=60u64 {
        for r in 1..a {
            let formula = conductor_arithmetic(a, r).map_err(|e| e.to_string())?;
            let gens = arithmetic_gens(a, r);
            let brute = brute_conductor(&gens, (a * a + 2 * a) as usize);
            let via_table = NumericalSemigroup::from_generators(&gens).map_err(|e| e.to_string())?.conductor();
            ensure(formula == brute && via_table == brute, || {
                format!("a={a} r={r}: formula {formula}, brute {brute}, table {via_table}")
            })?;
            count += 1;
        }
    }
    // Sum of (a - 1) over a in 2..=60.
    ensure(count == 1770, || format!("expected 1770 instances, ran {count}"))?;
    Ok(format!("{count} instances"))
}

fn criterion_2() -> Outcome {
    let pairs = coprime_pairs();
    for &(a, b) in &pairs {
        let expected = (a - 1) * (b - 1);
        let brute = brute_conductor(&[a, b], (a * b + a) as usize);
        let lib = NumericalSemigroup::from_generators(&[a, b]).map_err(|e| e.to_string())?.conductor();
        ensure(brute == expected && lib == expected, || {
            format!("<{a},{b}>: expected {expected}, brute {brute}, library {lib}")
        })?;
    }
    Ok(format!("{} coprime pairs", pairs.len()))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for a in 2..=30u64 {
        for r in 1..a {
            let h = Arc::new(NumericalSemigroup::arithmetic(a, r).map_err(|e| e.to_string())?);
            let u = (a - 1).div_ceil(r);
            let gens = arithmetic_gens(a, r);
            let limit = ((u + 4) * a + a + r + 2) as usize;
            for n in 1..=u + 3 {
                let power = max_ideal_power(&h, n);
                ensure(ideal_matches(&power, &brute_max_power(&gens, n, limit)), || {
                    format!("a={a} r={r}: m^{n} = {power} disagrees with the sumset oracle")
                })?;
                let stable = power.is_stable_under_normalization().is_some();
                ensure(stable == (n >= u), || {
                    format!("a={a} r={r} n={n}: stable={stable}, u={u}")
                })?;
                count += 1;
            }
            let cond = conductor_ideal(&h);
            ensure(cond == max_ideal_power(&h, u), || {
                format!("a={a} r={r}: conductor ideal {cond} != m^{u}")
            })?;
        }
    }
    Ok(format!("{count} (a, r, n) instances"))
}

fn random_semigroup(rng: &mut ChaCha8Rng) -> Vec<u64> {
    loop {
        let k = rng.gen_range(2..=4);
        let mut gens: Vec<u64> = (0..k).map(|_| rng.gen_range(3..=17)).collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.iter().fold(0, |g, &x| g.gcd(&x)) == 1 {
            return gens;
        }
    }
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut stable_seen, mut unstable_seen) = (0, 0);
    for _ in 0..20 {
        let gens = random_semigroup(&mut rng);
        let h = Arc::new(NumericalSemigroup::from_generators(&gens).map_err(|e| e.to_string())?);
        let c = h.conductor();
        let mult = h.multiplicity();
        for _ in 0..500 {
            let vals: Vec<u64> = if rng.gen_bool(0.25) {
                // A full interval of length `mult` always generates a tail.
                let start = rng.gen_range(0..=c + mult);
                (start..start + mult).filter(|_| rng.gen_bool(0.9)).collect()
            } else {
                let k = rng.gen_range(1..=5);
                (0..k).map(|_| rng.gen_range(0..=c + 2 * mult)).collect()
            };
            if vals.is_empty() {
                continue;
            }
            let ideal = SemigroupIdeal::from_values(&h, &vals).map_err(|e| e.to_string())?;
            let limit = (vals.iter().max().unwrap() + c + 2 * mult + 2) as usize;
            let closure = brute_closure(&gens, &vals, limit);
            let first = closure.iter().position(|&v| v).unwrap();
            let full_tail = closure[first..].iter().all(|&v| v);
            ensure(ideal_matches(&ideal, &closure), || {
                format!("{gens:?} {vals:?}: normal form {ideal} disagrees with the closure")
            })?;
            let verdict = ideal.is_stable_under_normalization();
            let expected = full_tail.then_some(first as u64);
            ensure(verdict == expected, || {
                format!("{gens:?} {vals:?}: is_stable {verdict:?}, oracle {expected:?}")
            })?;
            if full_tail {
                stable_seen += 1;
            } else {
                unstable_seen += 1;
            }
        }
    }
    ensure(stable_seen > 0 && unstable_seen > 0, || "sample missed one side".into())?;
    Ok(format!("{stable_seen} tails, {unstable_seen} non-tails"))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for a in 2..=20u64 {
        for r in 1..a {
            let h = Arc::new(NumericalSemigroup::arithmetic(a, r).map_err(|e| e.to_string())?);
            let u = (a - 1).div_ceil(r);
            let gens = arithmetic_gens(a, r);
            let top = 2 * u + 3;
            let limit = ((top + 2) * (a + r) + a) as usize;
            let powers: Vec<SemigroupIdeal> = (0..=top).map(|n| max_ideal_power(&h, n)).collect();
            for (n, power) in powers.iter().enumerate() {
                ensure(ideal_matches(power, &brute_max_power(&gens, n as u64, limit)), || {
                    format!("a={a} r={r}: m^{n} disagrees with the sumset oracle")
                })?;
            }
            for p in 1..=top as usize {
                for q in 0..=p {
                    let colon = powers[p].colon(&powers[q]).map_err(|e| e.to_string())?;
                    ensure(colon == powers[p - q], || {
                        format!("a={a} r={r}: (m^{p} : m^{q}) = {colon}, expected {}", powers[p - q])
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} colon instances"))
}

fn criterion_6() -> Outcome {
    let (mut count, mut agrees_with_u) = (0, 0);
    for a in 2..=20u64 {
        for r in 1..a {
            let h = Arc::new(NumericalSemigroup::arithmetic(a, r).map_err(|e| e.to_string())?);
            let e = reduction_exponent(&h, a).map_err(|e| format!("a={a} r={r}: {e}"))?;
            let x = SemigroupIdeal::principal(&h, a).map_err(|e| e.to_string())?;
            for n in 1..=e + 3 {
                let lhs = max_ideal_power(&h, n + 1);
                let rhs = x.multiply(&max_ideal_power(&h, n)).map_err(|e| e.to_string())?;
                ensure((lhs == rhs) == (n >= e), || {
                    format!("a={a} r={r} n={n}: m^(n+1) = t^a m^n is {}, exponent {e}", lhs == rhs)
                })?;
            }
            if e == (a - 1).div_ceil(r) {
                agrees_with_u += 1;
            }
            count += 1;
        }
    }
    Ok(format!("{count} semigroups; exponent equals ceil((a-1)/r) in {agrees_with_u}"))
}

fn check_staircase_claims(a: u64, b: u64, ideal: &StaircaseIdeal) -> Result<(), String> {
    let pairs = ideal.pairs();
    let n = pairs.len();
    ensure(n >= 1 && pairs[n - 1].0 == 0 && pairs[0].1 == 0, || {
        format!("<{a},{b}>: {ideal} lacks a pure power")
    })?;
    ensure(pairs.windows(2).all(|w| w[0].0 > w[1].0 && w[0].1 < w[1].1), || {
        format!("<{a},{b}>: {ideal} is not strictly monotone")
    })?;
    ensure((pairs[0].0 as u64) < a && (pairs[n - 1].1 as u64) < b, || {
        format!("<{a},{b}>: {ideal} exceeds the ring bounds")
    })?;
    ensure(pairs.iter().all(|&(q, p)| (p as u64) < b && (q as u64) < a), || {
        format!("<{a},{b}>: representation bounds violated in {ideal}")
    })?;
    let values: Vec<u64> = pairs.iter().map(|&pq| pair_value(a, b, pq)).collect();
    let c = (a - 1) * (b - 1);
    let limit = (c + a + b + 2) as usize;
    let closure = brute_closure(&[a, b], &values, limit);
    ensure(closure.iter().enumerate().all(|(v, &inside)| inside == (v as u64 >= c)), || {
        format!("<{a},{b}>: values {values:?} do not regenerate [{c},∞)")
    })
}

fn criterion_7() -> Outcome {
    let pairs = coprime_pairs();
    for &(a, b) in &pairs {
        let ideal = staircase_of_conductor(a, b).map_err(|e| format!("<{a},{b}>: {e}"))?;
        check_staircase_claims(a, b, &ideal)?;
    }
    Ok(format!("{} staircases", pairs.len()))
}

fn check_reduction(ideal: &StaircaseIdeal) -> Result<ReductionCertificate, String> {
    let cert = reduce_to_maximal(ideal).map_err(|e| format!("{ideal} in {}: {e}", ideal.ring()))?;
    ensure(cert.steps.len() <= step_bound(ideal), || {
        format!("{ideal}: {} steps exceed the bound {}", cert.steps.len(), step_bound(ideal))
    })?;
    ensure(cert.final_ideal == [(1, 0), (0, 1)], || format!("{ideal}: ends at {:?}", cert.final_ideal))?;
    let report = verify(&cert);
    ensure(report.is_valid(), || format!("{ideal}: {report}"))?;
    Ok(cert)
}

fn criterion_8() -> Outcome {
    let mut total_steps = 0;
    let pairs = coprime_pairs();
    for &(a, b) in &pairs {
        let ideal = staircase_of_conductor(a, b).map_err(|e| e.to_string())?;
        total_steps += check_reduction(&ideal)?.steps.len();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let ideal = random_staircase(&mut rng, 12, 12, 6);
        total_steps += check_reduction(&ideal)?.steps.len();
    }
    Ok(format!("{} reductions, {total_steps} steps", pairs.len() + 1000))
}

/// Every single-field perturbation of `cert` that can be expressed in the schema.
fn mutations(cert: &ReductionCertificate) -> Vec<(String, ReductionCertificate)> {
    fn nudge(v: u32) -> Vec<u32> {
        let mut out = vec![v + 1];
        if v > 0 {
            out.push(v - 1);
        }
        out
    }
    fn pair_list_mutations(pairs: &[Pair]) -> Vec<(String, Vec<Pair>)> {
        let mut out = Vec::new();
        for i in 0..pairs.len() {
            for x in nudge(pairs[i].0) {
                let mut m = pairs.to_vec();
                m[i].0 = x;
                out.push((format!("[{i}].x={x}"), m));
            }
            for y in nudge(pairs[i].1) {
                let mut m = pairs.to_vec();
                m[i].1 = y;
                out.push((format!("[{i}].y={y}"), m));
            }
            if pairs.len() > 1 {
                let mut m = pairs.to_vec();
                m.remove(i);
                out.push((format!("drop [{i}]"), m));
            }
            let mut m = pairs.to_vec();
            m.insert(i, pairs[i]);
            out.push((format!("duplicate [{i}]"), m));
        }
        if pairs.len() > 1 {
            let mut m = pairs.to_vec();
            m.reverse();
            out.push(("reverse".into(), m));
        }
        out
    }

    let mut out = Vec::new();
    let mut push = |label: String, f: &dyn Fn(&mut ReductionCertificate)| {
        let mut m = cert.clone();
        f(&mut m);
        if &m != cert {
            out.push((label, m));
        }
    };

    for a in nudge(cert.ring.a) {
        push(format!("ring.a={a}"), &|m| m.ring.a = a);
    }
    for b in nudge(cert.ring.b) {
        push(format!("ring.b={b}"), &|m| m.ring.b = b);
    }
    push("ring.sign flipped".into(), &|m| {
        m.ring.sign = match m.ring.sign {
            staircase_kit::Sign::Plus => staircase_kit::Sign::Minus,
            staircase_kit::Sign::Minus => staircase_kit::Sign::Plus,
        }
    });
    for (label, pairs) in pair_list_mutations(&cert.initial_ideal) {
        push(format!("initial_ideal{label}"), &|m| m.initial_ideal = pairs.clone());
    }
    for (label, pairs) in pair_list_mutations(&cert.final_ideal) {
        push(format!("final_ideal{label}"), &|m| m.final_ideal = pairs.clone());
    }
    for k in 0..cert.steps.len() {
        let s = &cert.steps[k];
        push(format!("steps[{k}] removed"), &|m| {
            m.steps.remove(k);
        });
        push(format!("steps[{k}] duplicated"), &|m| m.steps.insert(k, m.steps[k].clone()));
        if k + 1 < cert.steps.len() {
            push(format!("steps[{k}] swapped with next"), &|m| m.steps.swap(k, k + 1));
        }
        push(format!("steps[{k}].axis flipped"), &|m| {
            m.steps[k].axis = match m.steps[k].axis {
                Axis::X => Axis::Y,
                Axis::Y => Axis::X,
            }
        });
        for v in nudge(s.quotient_exponent) {
            push(format!("steps[{k}].quotient_exponent={v}"), &|m| m.steps[k].quotient_exponent = v);
        }
        for v in nudge(s.ring.a) {
            push(format!("steps[{k}].ring.a={v}"), &|m| m.steps[k].ring.a = v);
        }
        for v in nudge(s.ring.m) {
            push(format!("steps[{k}].ring.m={v}"), &|m| m.steps[k].ring.m = v);
        }
        for v in nudge(s.ann_generator.0) {
            push(format!("steps[{k}].ann_generator.x={v}"), &|m| m.steps[k].ann_generator.0 = v);
        }
        for v in nudge(s.ann_generator.1) {
            push(format!("steps[{k}].ann_generator.y={v}"), &|m| m.steps[k].ann_generator.1 = v);
        }
        for (label, pairs) in pair_list_mutations(&s.ideal_before) {
            push(format!("steps[{k}].ideal_before{label}"), &|m| m.steps[k].ideal_before = pairs.clone());
        }
        for (label, pairs) in pair_list_mutations(&s.divided_ideal) {
            push(format!("steps[{k}].divided_ideal{label}"), &|m| m.steps[k].divided_ideal = pairs.clone());
        }
        for (label, pairs) in pair_list_mutations(&s.ideal_after) {
            push(format!("steps[{k}].ideal_after{label}"), &|m| m.steps[k].ideal_after = pairs.clone());
        }
    }
    out
}

/// A mutation is only a forgery if the result is not itself the honest
/// certificate for its own (ring, initial ideal).
fn is_honest(cert: &ReductionCertificate) -> bool {
    let Ok(ring) = TruncatedRingParams::relation(cert.ring.a, cert.ring.b, cert.ring.sign) else {
        return false;
    };
    let Ok(ideal) = StaircaseIdeal::normalize(ring, &cert.initial_ideal) else {
        return false;
    };
    if ideal.pairs() != cert.initial_ideal.as_slice() {
        return false;
    }
    reduce_to_maximal(&ideal).is_ok_and(|honest| &honest == cert)
}

fn criterion_9() -> Outcome {
    let mut certs = Vec::new();
    for (a, b) in coprime_pairs() {
        let cert = reduce_to_maximal(&staircase_of_conductor(a, b).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        if !cert.steps.is_empty() && certs.len() < 40 {
            certs.push(cert);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    while certs.len() < 100 {
        let cert = reduce_to_maximal(&random_staircase(&mut rng, 12, 12, 6)).map_err(|e| e.to_string())?;
        if !cert.steps.is_empty() {
            certs.push(cert);
        }
    }

    let (mut tried, mut rejected, mut honest, mut ann_forgeries) = (0usize, 0usize, 0usize, 0usize);
    for cert in &certs {
        ensure(verify(cert).is_valid(), || "baseline certificate fails".into())?;
        for (label, forged) in mutations(cert) {
            if is_honest(&forged) {
                honest += 1;
                continue;
            }
            tried += 1;
            let report = verify(&forged);
            ensure(!report.is_valid(), || format!("accepted forgery {label} of\n{}", cert.to_json()))?;
            rejected += 1;
            if label.contains("ann_generator") || label.contains("].ring.") {
                ensure(report.failed(CheckKind::Annihilator), || {
                    format!("forgery {label} not caught by the annihilator check")
                })?;
                ann_forgeries += 1;
            }
        }
    }
    ensure(ann_forgeries > 0, || "no annihilator forgeries exercised".into())?;
    Ok(format!(
        "{rejected}/{tried} semantic mutations rejected over {} certificates ({ann_forgeries} annihilator forgeries; {honest} non-semantic skipped)",
        certs.len()
    ))
}

fn criterion_10() -> Outcome {
    let expected = include_str!("fixtures/conductor_5_3.redcert.json");
    let ideal = staircase_of_conductor(5, 3).map_err(|e| e.to_string())?;
    ensure(ideal.pairs() == [(3, 0), (1, 1), (0, 2)], || format!("staircase {ideal}"))?;
    let cert = reduce_to_maximal(&ideal).map_err(|e| e.to_string())?;
    ensure(cert.steps.len() == 2, || format!("{} steps", cert.steps.len()))?;
    ensure(verify(&cert).is_valid(), || verify(&cert).to_string())?;
    let bytes = cert.serialize();
    ensure(bytes == expected.as_bytes(), || format!("serialized form differs:\n{}", cert.to_json()))?;
    let reparsed = ReductionCertificate::deserialize(expected.as_bytes()).map_err(|e| e.to_string())?;
    ensure(reparsed == cert && reparsed.serialize() == bytes, || "round trip differs".into())?;
    Ok("x^5 - y^3, (x^3, xy, y^2), 2 steps, byte-identical".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "arithmetic conductor formula", Duration::from_secs(10), criterion_1),
        (2, "two-generator conductor", Duration::from_secs(5), criterion_2),
        (3, "stable powers of the maximal ideal", Duration::from_secs(20), criterion_3),
        (4, "stability equals full tail", Duration::from_secs(60), criterion_4),
        (5, "colon of maximal ideal powers", Duration::from_secs(20), criterion_5),
        (6, "reduction exponent", Duration::from_secs(60), criterion_6),
        (7, "staircase of the conductor", Duration::from_secs(60), criterion_7),
        (8, "reduction terminates and verifies", Duration::from_secs(30), criterion_8),
        (9, "mutated certificates rejected", Duration::from_secs(120), criterion_9),
        (10, "worked certificate", Duration::from_secs(10), criterion_10),
    ];
    let mut seen = BTreeSet::new();
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        seen.insert(id);
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}, but took {elapsed:.2?} > {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {id:>2} {name}: {detail} [{elapsed:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id:>2} {name}: {why} [{elapsed:.2?}]");
            }
        }
    }
    println!("{} of {} criteria passed", seen.len() - failed, seen.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
