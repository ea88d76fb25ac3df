//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use mignotte::construction::{e_power_upper_bound, exceeds_e_power};
use mignotte::{
    bounds, check_strong_general, check_strong_n3, construct, crt_combine, difference_product,
    enumerate_candidates, is_mignotte, pairwise_coprime, reconstruct, split, superfactorial_bound,
    Error, Natural, Rational, ResiduePair, SchemeParams, SeedSequence,
};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const THEOREM_CASES_MIN: usize = 500;
const THEOREM_RUNTIME_LIMIT: Duration = Duration::from_secs(10);
const ORACLE_CASES: usize = 2000;
const CRT_SCAN_LIMIT: u64 = 1_000_000;
const ASYMPTOTIC_T_GRID: [u64; 5] = [1, 3, 10, 100, 1000];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nats(xs: &[u64]) -> Vec<Natural> {
    xs.iter().copied().map(Natural::from).collect()
}

// --- naive oracles -------------------------------------------------------

fn trial_gcd(a: u64, b: u64) -> u64 {
    (1..=a.min(b))
        .rev()
        .find(|d| a.is_multiple_of(*d) && b.is_multiple_of(*d))
        .unwrap_or(a.max(b))
}

fn naive_coprime(xs: &[u64]) -> bool {
    (0..xs.len()).all(|i| (i + 1..xs.len()).all(|j| trial_gcd(xs[i], xs[j]) == 1))
}

fn naive_product(xs: &[u64]) -> u128 {
    xs.iter().fold(1u128, |acc, &x| acc * x as u128)
}

fn crt_scan(pairs: &[(u64, u64)]) -> Vec<u64> {
    let product: u64 = pairs.iter().map(|p| p.1).product();
    (0..product)
        .filter(|x| pairs.iter().all(|&(r, m)| x % m == r))
        .collect()
}

// --- corpus ---------------------------------------------------------------

fn random_coprime_seed(rng: &mut ChaCha8Rng) -> Vec<u64> {
    loop {
        let target = rng.gen_range(3..=8);
        let mut kept: Vec<u64> = Vec::new();
        for _ in 0..200 {
            let x = rng.gen_range(1..1000u64);
            if !kept.contains(&x) && kept.iter().all(|&k| trial_gcd(k, x) == 1) {
                kept.push(x);
                if kept.len() == target {
                    break;
                }
            }
        }
        if kept.len() >= 3 {
            kept.sort_unstable();
            return kept;
        }
    }
}

/// Sylvester seeds (q1 ∈ {1,2,3}, n ∈ 3..=8) and random hand-built seeds,
/// each paired with t ∈ 1..=5.
fn theorem_corpus() -> Vec<(SeedSequence, u32)> {
    let mut cases = Vec::new();
    for q1 in 1u32..=3 {
        for n in 3..=8 {
            let seed = SeedSequence::sylvester(q1, n).unwrap();
            for t in 1..=5 {
                cases.push((seed.clone(), t));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..90 {
        let seed = SeedSequence::new(nats(&random_coprime_seed(&mut rng))).unwrap();
        for t in 1..=5 {
            cases.push((seed.clone(), t));
        }
    }
    // Small fixed seeds: arithmetic progressions, q1 = 1, consecutive ints.
    for q in [
        &[1u64, 2, 3][..],
        &[2, 3, 5, 7, 11],
        &[1, 3, 5, 7],
        &[4, 5, 7, 9],
        &[5, 6, 7],
    ] {
        let seed = SeedSequence::new(nats(q)).unwrap();
        for t in 1..=5 {
            cases.push((seed.clone(), t));
        }
    }
    cases
}

// --- criteria -------------------------------------------------------------

fn theorem_end_to_end() -> Outcome {
    let start = Instant::now();
    let corpus = theorem_corpus();
    ensure(corpus.len() >= THEOREM_CASES_MIN, || {
        format!("only {} cases", corpus.len())
    })?;
    let mut checks = 0usize;
    for (seed, t) in &corpus {
        let m = construct(seed, *t).map_err(|e| e.to_string())?;
        ensure(pairwise_coprime(m.moduli()).unwrap(), || {
            format!("not coprime: {seed:?} t={t}")
        })?;
        for k in 2..m.len() {
            ensure(is_mignotte(m.moduli(), k).unwrap(), || {
                format!("Mignotte condition fails: {seed:?} t={t} k={k}")
            })?;
            checks += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < THEOREM_RUNTIME_LIMIT, || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} cases, {checks} threshold checks, {elapsed:.2?}",
        corpus.len()
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0_ac1e);
    let mut crt_scanned = 0;
    for _ in 0..ORACLE_CASES {
        // pairwise_coprime
        let len = rng.gen_range(1..7);
        let xs: Vec<u64> = (0..len).map(|_| rng.gen_range(1..400)).collect();
        ensure(
            pairwise_coprime(&nats(&xs)).unwrap() == naive_coprime(&xs),
            || format!("coprime {xs:?}"),
        )?;

        // is_mignotte, on random increasing coprime lists
        let mut ms = random_coprime_seed(&mut rng);
        ms.truncate(6);
        let n = ms.len();
        for k in 2..n {
            let expected = naive_product(&ms[..k]) > naive_product(&ms[n - k + 1..]);
            ensure(is_mignotte(&nats(&ms), k).unwrap() == expected, || {
                format!("mignotte {ms:?} k={k}")
            })?;
        }

        // crt_combine against a full scan
        let count = rng.gen_range(1..5);
        let moduli: Vec<u64> = (0..count).map(|_| rng.gen_range(2..50)).collect();
        if moduli.iter().product::<u64>() > CRT_SCAN_LIMIT {
            continue;
        }
        let pairs: Vec<(u64, u64)> = moduli.iter().map(|&m| (rng.gen_range(0..m), m)).collect();
        let input: Vec<ResiduePair> = pairs
            .iter()
            .map(|&(r, m)| ResiduePair::new(r, m).unwrap())
            .collect();
        let scan = crt_scan(&pairs);
        match crt_combine(&input) {
            Ok(c) => {
                let x: u64 = c.residue().try_into().unwrap();
                ensure(naive_coprime(&moduli) && scan == vec![x], || {
                    format!("crt {pairs:?}")
                })?;
            }
            Err(_) => ensure(!naive_coprime(&moduli), || {
                format!("crt rejected {pairs:?}")
            })?,
        }
        crt_scanned += 1;
    }
    Ok(format!(
        "{ORACLE_CASES} rounds, {crt_scanned} CRT scans, 0 disagreements"
    ))
}

fn canonical_example() -> Outcome {
    let seed = SeedSequence::new(nats(&[1, 2, 3])).map_err(|e| e.to_string())?;
    ensure(difference_product(&seed) == Natural::from(2u32), || {
        "P != 2".into()
    })?;
    let m = construct(&seed, 1u32).unwrap();
    ensure(m.moduli() == nats(&[3, 4, 5]), || {
        format!("moduli {:?}", m.moduli())
    })?;
    let b = bounds(&m, 2).unwrap();
    ensure(
        b.upper == Natural::from(12u32) && b.lower == Natural::from(5u32),
        || "M, N".into(),
    )?;
    ensure(b.gap_ratio == Rational::new(7, 5u32).unwrap(), || {
        format!("ratio {}", b.gap_ratio)
    })?;
    let params = SchemeParams::new(&m, 2).unwrap();
    let shares = split(&Natural::from(7u32), &params).unwrap();
    let residues: Vec<Natural> = shares.iter().map(|s| s.residue().clone()).collect();
    ensure(residues == nats(&[1, 3, 2]), || {
        format!("residues {residues:?}")
    })?;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let got = reconstruct(&[shares[i].clone(), shares[j].clone()], &params).unwrap();
        ensure(got == Natural::from(7u32), || {
            format!("subset ({i},{j}) gave {got}")
        })?;
    }
    Ok("P=2, moduli 3,4,5, M=12 N=5 ratio 7/5, residues 1,3,2, all 2-subsets give 7".into())
}

fn strong_inequalities() -> Outcome {
    let (mut n3, mut general) = (0, 0);
    for (seed, t) in theorem_corpus() {
        let p = difference_product(&seed);
        let m = construct(&seed, t).unwrap();
        if seed.len() == 3 {
            ensure(check_strong_n3(&seed, &p).unwrap(), || {
                format!("n=3 fails {seed:?}")
            })?;
            ensure(is_mignotte(m.moduli(), 2).unwrap(), || {
                format!("n=3 implication {seed:?}")
            })?;
            n3 += 1;
        } else {
            for k in 2..seed.len() {
                ensure(check_strong_general(&seed, &p, k).unwrap(), || {
                    format!("general fails {seed:?} k={k}")
                })?;
                ensure(is_mignotte(m.moduli(), k).unwrap(), || {
                    format!("implication {seed:?} k={k}")
                })?;
                general += 1;
            }
        }
    }
    Ok(format!("{n3} n=3 checks, {general} n>=4 checks"))
}

fn growth_bounds() -> Outcome {
    for n in 4..=12usize {
        let sf = superfactorial_bound(n).unwrap();
        ensure(sf > Natural::one() << (n - 1), || {
            format!("superfactorial <= 2^(n-1) at n={n}")
        })?;
        for q1 in 1u32..=3 {
            let p = difference_product(&SeedSequence::sylvester(q1, n).unwrap());
            ensure(p >= sf, || format!("P < superfactorial at n={n}, q1={q1}"))?;
        }
    }
    for n in 5..=12u32 {
        let sf = superfactorial_bound(n as usize).unwrap();
        ensure(exceeds_e_power(&sf, n), || {
            format!("superfactorial <= E^{n}")
        })?;
        // Independent restatement: sf·10^(10n) > 27182818285^n.
        let lhs = &sf * num_traits::pow(Natural::from(10u32), 10 * n as usize);
        let rhs = num_traits::pow(Natural::from(27_182_818_285u64), n as usize);
        ensure(lhs > rhs, || format!("integer form fails at n={n}"))?;
        ensure(e_power_upper_bound(n).cmp_natural(&sf).is_lt(), || {
            "rational form".into()
        })?;
    }
    Ok("n=4..12 P >= prod i! > 2^(n-1); n=5..12 prod i! > E^n".into())
}

fn asymptotic_gap() -> Outcome {
    let seed = SeedSequence::new(nats(&[1, 2, 3])).unwrap();
    let threshold = Rational::new(1, 100u32).unwrap();
    let mut errors: Vec<Rational> = Vec::new();
    for t in ASYMPTOTIC_T_GRID {
        let m = construct(&seed, t).unwrap();
        let b = bounds(&m, 2).unwrap();
        let predicted = Rational::from_natural(&(m.shift() + seed.first() - 1u32));
        errors.push((&b.gap_ratio - &predicted).abs() / predicted);
    }
    ensure(errors.windows(2).all(|w| w[0] > w[1]), || {
        "relative error not strictly decreasing".into()
    })?;
    let last = errors.last().unwrap();
    ensure(*last < threshold, || format!("error at t=1000 is {last}"))?;
    Ok(format!("relative error at t=1000 = {last}"))
}

fn under_determination() -> Outcome {
    let seed = SeedSequence::new(nats(&[1, 2, 3])).unwrap();
    let params = SchemeParams::new(&construct(&seed, 1u32).unwrap(), 2).unwrap();
    let shares = split(&Natural::from(7u32), &params).unwrap();
    let candidates = enumerate_candidates(&shares[..1], &params).unwrap();
    ensure(candidates == nats(&[7, 10]), || {
        format!("candidates {candidates:?}")
    })?;

    // Every below-threshold subset of a round trip is refused.
    for (seed, t) in theorem_corpus().into_iter().step_by(7) {
        let m = construct(&seed, t).unwrap();
        for k in 2..m.len() {
            let params = SchemeParams::new(&m, k).unwrap();
            let secret = &params.bounds().lower + 1u32;
            let shares = split(&secret, &params).unwrap();
            for start in 0..=(m.len() - (k - 1)) {
                let few = &shares[start..start + k - 1];
                match reconstruct(few, &params) {
                    Err(Error::InsufficientShares { .. }) => {}
                    other => return Err(format!("{} shares with k={k} gave {other:?}", few.len())),
                }
            }
        }
    }
    Ok("index 1 alone admits [7, 10]; k-1 shares always refused".into())
}

fn cli_conformance() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_mignotte");
    let run = |args: &[&str]| Command::new(bin).args(args).output().expect("binary runs");
    let s = |p: &Path| p.to_str().unwrap().to_string();

    let mut snapshots = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let moduli = dir.path().join("moduli.json");
        let shares = dir.path().join("shares");
        let o = run(&["construct", "--seed", "1,2,3", "--out", &s(&moduli)]);
        ensure(o.status.code() == Some(0), || "construct failed".into())?;
        let o = run(&["verify", "--moduli", &s(&moduli), "--k", "2"]);
        ensure(o.status.code() == Some(0), || "verify failed".into())?;
        ensure(
            String::from_utf8_lossy(&o.stdout).contains("M=12 N=5 ratio=7/5"),
            || "verify output".into(),
        )?;
        let o = run(&[
            "split",
            "--secret",
            "7",
            "--moduli",
            &s(&moduli),
            "--k",
            "2",
            "--out-dir",
            &s(&shares),
        ]);
        ensure(o.status.code() == Some(0), || "split failed".into())?;
        for pair in [[1, 2], [1, 3], [2, 3]] {
            let files: Vec<String> = pair
                .iter()
                .map(|i| s(&shares.join(format!("share_{i}.json"))))
                .collect();
            let o = run(&["combine", "--shares", &files[0], &files[1]]);
            ensure(o.stdout == b"7\n", || format!("combine {pair:?}"))?;
        }
        let mut files = vec![fs::read(&moduli).unwrap()];
        for i in 1..=3 {
            files.push(fs::read(shares.join(format!("share_{i}.json"))).unwrap());
        }
        snapshots.push(files);
    }
    ensure(snapshots[0] == snapshots[1], || {
        "re-run produced different bytes".into()
    })?;

    let o = run(&["construct", "--seed", "2,3,9"]);
    ensure(o.status.code() == Some(1), || {
        format!("bad seed exit {:?}", o.status.code())
    })?;
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "split",
        "--secret",
        "5",
        "--moduli",
        "3,4,5",
        "--k",
        "2",
        "--out-dir",
        &s(dir.path()),
    ]);
    ensure(o.status.code() == Some(1), || "out-of-range exit".into())?;
    ensure(
        String::from_utf8_lossy(&o.stderr).contains("secret below threshold range (N=5)"),
        || "message".into(),
    )?;
    let o = run(&[
        "split",
        "--secret",
        "7",
        "--moduli",
        "3,4,5",
        "--k",
        "2",
        "--out-dir",
        &s(dir.path()),
    ]);
    ensure(o.status.code() == Some(0), || "split".into())?;
    let o = run(&["combine", "--shares", &s(&dir.path().join("share_1.json"))]);
    ensure(o.status.code() == Some(1), || "insufficient exit".into())?;
    ensure(
        String::from_utf8_lossy(&o.stderr).contains("insufficient shares: have 1, need 2"),
        || "insufficient message".into(),
    )?;
    let o = run(&["analyze", "--mode", "foo"]);
    ensure(o.status.code() == Some(2), || "usage exit".into())?;
    Ok("pipelines round-trip, re-runs byte-identical, exit codes 1/1/1 (and 2 for usage)".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "construction end-to-end (>=500 cases, <10 s)",
            theorem_end_to_end,
        ),
        ("brute-force oracle equivalence", oracle_equivalence),
        ("canonical example [1,2,3]", canonical_example),
        (
            "strong inequalities imply the condition",
            strong_inequalities,
        ),
        ("growth bounds 2^(n-1) and e^n", growth_bounds),
        ("gap ratio asymptotic", asymptotic_gap),
        ("under-determination below threshold", under_determination),
        ("CLI conformance", cli_conformance),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}  ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}  ({why})", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
