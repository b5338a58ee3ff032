//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Set `MAXREP_CORPUS` to a natural-language text of at least 5 MB to run
//! the directional text-versus-permutation check as well.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use maxrep::bounds::{
    check_growth, check_kac, default_checkpoints, run_suite, GrowthBound, GrowthOptions, KacOptions, SuiteGrid,
    Verdict, WordSelection,
};
use maxrep::corpus::fit_power_law_log;
use maxrep::entropy::{renyi_of_distribution, ContextMode, EntropyEngine, Method};
use maxrep::processes::presets;
use maxrep::strstat::{maximal_repetition_of, oracle, prefix_maximal_repetitions, subword_complexity_of};
use maxrep::{seed, ProcessModel};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(elapsed <= Duration::from_secs(limit_secs), || {
        format!("took {:.1}s, limit {limit_secs}s", elapsed.as_secs_f64())
    })
}

/// The random strings shared by the first two criteria.
fn random_corpus() -> Vec<(Vec<u32>, u32)> {
    let mut rng = seed::rng(20_240_601);
    (0..10_000)
        .map(|_| {
            let a = rng.gen_range(2..=8u32);
            let n = rng.gen_range(0..=200usize);
            ((0..n).map(|_| rng.gen_range(0..a)).collect(), a)
        })
        .collect()
}

fn oracle_equivalence(corpus: &[(Vec<u32>, u32)]) -> Outcome {
    let start = Instant::now();
    let mut rng = seed::rng(7);
    let mut compared = 0usize;
    for (x, _) in corpus {
        let (fast, slow) = (maximal_repetition_of(x), oracle::maximal_repetition(x));
        ensure(fast == slow, || format!("L mismatch on {x:?}: {fast} vs {slow}"))?;
        let n = x.len();
        let mut ks = vec![1, fast + 1, n.max(1)];
        ks.extend((0..3).map(|_| rng.gen_range(1..=n.max(1))));
        for k in ks {
            let (fast, slow) = (subword_complexity_of(x, k), oracle::subword_complexity(x, k));
            ensure(fast == slow, || format!("f({k}) mismatch on {x:?}: {fast} vs {slow}"))?;
            compared += 1;
        }
    }
    within(start.elapsed(), 60)?;
    Ok(format!(
        "{} strings, {compared} complexity values, {:.1}s",
        corpus.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn pigeonhole(corpus: &[(Vec<u32>, u32)]) -> Outcome {
    let mut checked = 0usize;
    for (x, _) in corpus {
        let n = x.len();
        let l = maximal_repetition_of(x);
        for k in 1..=n {
            let f = subword_complexity_of(x, k);
            let free = f == n - k + 1;
            ensure((l < k) == free, || format!("{x:?} k={k}: L={l}, f={f}"))?;
            ensure((l >= k) == (f <= n - k), || format!("{x:?} k={k}: L={l}, f={f}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (string, k) pairs, zero exceptions"))
}

fn kac() -> Outcome {
    let start = Instant::now();
    let opts = KacOptions {
        replicas: 100_000,
        seed: 31,
        ..KacOptions::default()
    };
    let mut worst = 0.0f64;
    let mut count = 0;
    for (name, model) in [("fair_coin", presets::fair_coin()), ("sticky_pair", presets::sticky_pair())] {
        let reports = check_kac(&model, &WordSelection::AllWords(3), &opts).map_err(|e| e.to_string())?;
        for r in reports.iter().filter(|r| r.bound_id == "recurrence_mean_identity") {
            let w = r.grid.word.clone().unwrap_or_default();
            let exact = (-model.block_log_prob(&w).map_err(|e| e.to_string())?).exp();
            if name == "fair_coin" {
                ensure((r.rhs.value - 8.0).abs() < 1e-9, || format!("target for {w:?} is {}", r.rhs.value))?;
            }
            ensure((r.rhs.value - exact).abs() <= 1e-9 * exact, || format!("{name} {w:?}: target"))?;
            let se = r.lhs.se.unwrap_or(f64::NAN);
            let z = (r.lhs.value - exact).abs() / se;
            ensure(z <= 4.0, || format!("{name} {w:?}: mean {} vs {exact}, z = {z:.2}", r.lhs.value))?;
            ensure(r.truncated == 0, || format!("{name} {w:?}: {} truncated samples", r.truncated))?;
            worst = worst.max(z);
            count += 1;
        }
        ensure(count > 0 && reports.iter().all(|r| r.verdict == Verdict::HoldsWithinTolerance), || {
            format!("{name}: a recurrence report did not hold")
        })?;
    }
    ensure(count == 16, || format!("expected 16 words, got {count}"))?;
    within(start.elapsed(), 120)?;
    Ok(format!(
        "16 words, 1e5 replicas each, max |z| = {worst:.2}, {:.1}s",
        start.elapsed().as_secs_f64()
    ))
}

fn inequality_suite() -> Outcome {
    let start = Instant::now();
    let grid = SuiteGrid::default();
    let mut total = 0;
    for (name, model) in [
        ("fair_coin", presets::fair_coin()),
        ("sticky_pair", presets::sticky_pair()),
        ("three_state_hmm", presets::three_state_hmm()),
        ("dithered_chain", presets::dithered_chain()),
    ] {
        let out = run_suite(&model, name, &grid, 100_000, 2024).map_err(|e| e.to_string())?;
        ensure(out.unsupported.is_empty(), || format!("{name}: unsupported {:?}", out.unsupported))?;
        for r in &out.reports {
            ensure(r.verdict != Verdict::Violated, || format!("{name}: violated {r:?}"))?;
            ensure(r.verdict == Verdict::HoldsWithinTolerance, || format!("{name}: inconclusive {r:?}"))?;
            ensure(r.replicas >= 100_000 || (r.lhs.se.is_none() && r.rhs.se.is_none()), || {
                format!("{name}: {} replicas", r.replicas)
            })?;
        }
        total += out.reports.len();
    }
    Ok(format!(
        "{total} reports on 4 models, zero violated, {:.1}s",
        start.elapsed().as_secs_f64()
    ))
}

fn three_state_chain() -> ProcessModel {
    ProcessModel::markov(vec![vec![0.5, 0.3, 0.2], vec![0.1, 0.6, 0.3], vec![0.4, 0.0, 0.6]]).expect("valid chain")
}

fn all_words(a: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..a as u32).map(move |y| {
                    let mut v = w.clone();
                    v.push(y);
                    v
                })
            })
            .collect();
    }
    out
}

fn entropy_chain() -> Outcome {
    const TOL: f64 = 1e-9;
    let models = [
        ("skewed_iid", ProcessModel::iid(vec![0.5, 0.3, 0.2]).expect("valid")),
        ("fair_coin", presets::fair_coin()),
        ("sticky_pair", presets::sticky_pair()),
        ("three_state_chain", three_state_chain()),
    ];
    let mut checks = 0;
    for (name, model) in &models {
        let e = EntropyEngine::new(model).map_err(|e| e.to_string())?;
        let h = e.entropy_rate().map_err(|e| e.to_string())?;
        for n in 1..=10 {
            let v = |r: maxrep::Result<maxrep::entropy::EntropyValue>| r.map(|v| v.value).map_err(|e| e.to_string());
            let min_cond = v(e.conditional_min(n))?;
            let shannon = v(e.shannon(n))?;
            let hartley = v(e.hartley(n))?;
            let rate = h * n as f64;
            for g in [1.5, 2.0, 3.0] {
                let cond = v(e.conditional_renyi(n, g, ContextMode::InfiniteReduced))?;
                ensure(min_cond <= cond + TOL && cond <= rate + TOL, || {
                    format!("{name} n={n} γ={g}: {min_cond} <= {cond} <= {rate}")
                })?;
                checks += 2;
            }
            ensure(rate <= shannon + TOL && shannon <= hartley + TOL, || {
                format!("{name} n={n}: {rate} <= {shannon} <= {hartley}")
            })?;
            checks += 2;
        }
        // matrix power against enumeration of every block
        for n in 1..=8 {
            let probs: Vec<f64> = all_words(model.alphabet_size(), n)
                .iter()
                .map(|w| model.block_log_prob(w).map(f64::exp))
                .collect::<maxrep::Result<_>>()
                .map_err(|e| e.to_string())?;
            for g in [0.5, 1.0, 1.5, 2.0, 3.0] {
                let fast = e.renyi(n, g).map_err(|e| e.to_string())?;
                let slow = renyi_of_distribution(&probs, g).map_err(|e| e.to_string())?;
                ensure(fast.method == Method::MatrixPower, || format!("{name}: method {}", fast.method))?;
                ensure((fast.value - slow).abs() <= TOL, || {
                    format!("{name} n={n} γ={g}: {} vs {slow}", fast.value)
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} exact comparisons at 1e-9"))
}

fn superadditivity() -> Outcome {
    let models = [
        ("skewed_iid", ProcessModel::iid(vec![0.5, 0.3, 0.2]).expect("valid")),
        ("sticky_pair", presets::sticky_pair()),
        ("three_state_chain", three_state_chain()),
        ("three_state_hmm", presets::three_state_hmm()),
        ("dithered_chain", presets::dithered_chain()),
        ("periodic", ProcessModel::periodic(vec![0, 1, 1, 0, 1, 2], 3).expect("valid")),
    ];
    let mut pairs = 0;
    for (name, model) in &models {
        let e = EntropyEngine::new(model).map_err(|e| e.to_string())?;
        let h: Vec<f64> = (0..=16)
            .map(|n| e.conditional_min(n).map(|v| v.value))
            .collect::<maxrep::Result<_>>()
            .map_err(|e| e.to_string())?;
        for m in 1..=8 {
            for n in 1..=8 {
                ensure(h[m + n] >= h[m] + h[n] - 1e-9, || {
                    format!("{name}: H({}) = {} < {} + {}", m + n, h[m + n], h[m], h[n])
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (model, m, n) triples, zero violations"))
}

fn min_entropy_ceiling() -> Outcome {
    let model = presets::fair_coin();
    let checkpoints = default_checkpoints(100_000);
    let opts = GrowthOptions::default();
    let mut margin = f64::INFINITY;
    for s in 0..20 {
        let reports = check_growth(&model, GrowthBound::MinEntropyCeiling, &checkpoints, &opts, seed::derive(77, s))
            .map_err(|e| e.to_string())?;
        ensure(reports.len() == checkpoints.len(), || format!("{} checkpoints", reports.len()))?;
        for r in &reports {
            let n = r.grid.n.unwrap_or(0) as f64;
            let ceiling = 3.0 * n.ln() / 2f64.ln();
            ensure((r.rhs.value - ceiling).abs() < 1e-9, || format!("ceiling {} vs {ceiling}", r.rhs.value))?;
            ensure(r.lhs.value < ceiling && r.verdict == Verdict::HoldsWithinTolerance, || {
                format!("seed {s}, n={n}: L = {} >= {ceiling}", r.lhs.value)
            })?;
            margin = margin.min(ceiling - r.lhs.value);
        }
    }
    Ok(format!(
        "20 trajectories of 1e5 symbols, {} checkpoints each, smallest margin {margin:.2}",
        checkpoints.len()
    ))
}

fn periodic_floor() -> Outcome {
    const P: usize = 16;
    const N: usize = 10_000;
    let model = presets::counting_cycle(P as u32);
    for s in 0..4 {
        let x = model.sample(N, s).map_err(|e| e.to_string())?;
        let profile = prefix_maximal_repetitions(x.symbols());
        for n in 3 * P..=N {
            ensure(profile[n] + 2 * P >= n, || format!("phase seed {s}, n={n}: L = {}", profile[n]))?;
        }
    }
    let opts = GrowthOptions {
        burn_in: 3 * P,
        ..GrowthOptions::default()
    };
    let grid: Vec<usize> = (3 * P..=N).collect();
    let reports = check_growth(&model, GrowthBound::HartleyFloor, &grid, &opts, 5).map_err(|e| e.to_string())?;
    ensure(reports.len() == grid.len(), || format!("{} reports", reports.len()))?;
    for r in &reports {
        ensure(r.verdict == Verdict::HoldsWithinTolerance, || format!("{r:?}"))?;
        ensure(r.lhs.value + (2 * P) as f64 >= r.grid.n.unwrap_or(0) as f64, || format!("floor {r:?}"))?;
    }
    Ok(format!("every n in [{}, {N}], 4 phases, plus the block-count floor", 3 * P))
}

fn maxrep_bin(args: &[&str]) -> Result<std::process::Output, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_maxrep"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("maxrep {} failed: {}", args.join(" "), String::from_utf8_lossy(&out.stderr))
    })?;
    Ok(out)
}

fn fitted_alphas(fit_txt: &str) -> Vec<(String, f64)> {
    let mut out = Vec::new();
    let mut label = String::new();
    for line in fit_txt.lines() {
        if let Some(l) = line.strip_prefix("[fit ").and_then(|l| l.strip_suffix(']')) {
            label = l.to_string();
        } else if let Some(v) = line.strip_prefix("alpha = ") {
            if let Ok(a) = v.parse() {
                out.push((label.clone(), a));
            }
        }
    }
    out
}

fn analyze_alphas(corpus: &Path, out: &Path) -> Result<Vec<(String, f64)>, String> {
    let (c, o) = (corpus.to_str().unwrap(), out.to_str().unwrap());
    maxrep_bin(&["analyze", c, "--permute", "--out", o])?;
    let text = fs::read_to_string(out.join("fit.txt")).map_err(|e| e.to_string())?;
    Ok(fitted_alphas(&text))
}

fn corpus_fit() -> Outcome {
    // (a) noiseless curves
    let ns: Vec<usize> = (1..=6).map(|e| 10usize.pow(e)).collect();
    for a in [0.02498, 0.1, 0.4936, 1.0, 10.0] {
        for alpha in [0.5, 1.0, 1.150, 2.0, 3.136] {
            let pts: Vec<(usize, f64)> = ns.iter().map(|&n| (n, a * (n as f64).ln().powf(alpha))).collect();
            let fit = fit_power_law_log(&pts).map_err(|e| e.to_string())?;
            let rel = |x: f64, y: f64| ((x - y) / y).abs();
            ensure(rel(fit.a, a) <= 1e-6 && rel(fit.alpha, alpha) <= 1e-6, || {
                format!("({a}, {alpha}) recovered as ({}, {})", fit.a, fit.alpha)
            })?;
        }
    }

    // (b) 1 MiB pseudorandom bytes generated through the CLI
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let sim = dir.path().join("fixture");
    maxrep_bin(&[
        "simulate",
        "--preset",
        "iid_uniform:256",
        "--length",
        "1048576",
        "--raw",
        "--seed",
        "1",
        "--out",
        sim.to_str().unwrap(),
    ])?;
    let alphas = analyze_alphas(&sim.join("sequence.bin"), &dir.path().join("fixture_fit"))?;
    let elapsed = start.elapsed();
    within(elapsed, 120)?;
    let text_alpha = alphas.iter().find(|(l, _)| l == "text").map(|p| p.1).ok_or("no text fit")?;
    let perm_alpha = alphas.iter().find(|(l, _)| l == "permutation").map(|p| p.1).ok_or("no permutation fit")?;
    ensure((0.8..=1.4).contains(&text_alpha), || format!("fixture alpha {text_alpha}"))?;
    let mut detail = format!(
        "(a) 25 curves exact; (b) fixture alpha = {text_alpha:.3}, permutation {perm_alpha:.3}, {:.1}s; ",
        elapsed.as_secs_f64()
    );

    // (c) a user-supplied natural-language corpus
    match std::env::var_os("MAXREP_CORPUS") {
        Some(path) => {
            let path = Path::new(&path);
            let size = fs::metadata(path).map_err(|e| format!("MAXREP_CORPUS: {e}"))?.len();
            ensure(size >= 5 << 20, || format!("MAXREP_CORPUS has {size} bytes, need at least 5 MiB"))?;
            let alphas = analyze_alphas(path, &dir.path().join("corpus_fit"))?;
            let get = |l: &str| alphas.iter().find(|(x, _)| x == l).map(|p| p.1).unwrap_or(f64::NAN);
            let (t, p) = (get("text"), get("permutation"));
            ensure(t > p, || format!("text alpha {t} does not exceed permutation alpha {p}"))?;
            detail.push_str(&format!("(c) text alpha {t:.3} > permutation {p:.3}"));
        }
        None => detail.push_str("(c) skipped, MAXREP_CORPUS not set"),
    }
    Ok(detail)
}

/// Runs `args` into `first` with one worker, reruns from the emitted config
/// with three workers, and compares every artifact.
fn rerun_matches(args: &[&str], root: &Path, tag: &str) -> Result<usize, String> {
    let first = root.join(format!("{tag}_1"));
    let second = root.join(format!("{tag}_2"));
    let mut a: Vec<&str> = args.to_vec();
    a.extend(["--workers", "1", "--out", first.to_str().unwrap()]);
    maxrep_bin(&a)?;
    let config = first.join("config.json");
    maxrep_bin(&[
        args[0],
        "--config",
        config.to_str().unwrap(),
        "--workers",
        "3",
        "--out",
        second.to_str().unwrap(),
    ])?;
    let mut compared = 0;
    for entry in fs::read_dir(&first).map_err(|e| e.to_string())? {
        let name = entry.map_err(|e| e.to_string())?.file_name();
        let (x, y) = (fs::read(first.join(&name)), fs::read(second.join(&name)));
        let (x, y) = (x.map_err(|e| e.to_string())?, y.map_err(|e| format!("{tag}: {name:?} missing: {e}"))?);
        if name == "config.json" {
            let strip = |b: &[u8]| {
                let mut v: serde_json::Value = serde_json::from_slice(b).expect("config json");
                v["workers"] = serde_json::Value::Null;
                v
            };
            ensure(strip(&x) == strip(&y), || format!("{tag}: resolved configs differ"))?;
        } else {
            ensure(x == y, || format!("{tag}: {name:?} differs between runs"))?;
        }
        compared += 1;
    }
    Ok(compared)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let root = dir.path();
    let text = root.join("text.txt");
    let mut rng = seed::rng(3);
    let words = ["the", "cat", "sat", "on", "a", "mat", "and", "then", "ran"];
    let body: Vec<&str> = (0..20_000).map(|_| words[rng.gen_range(0..words.len())]).collect();
    fs::write(&text, body.join(" ")).map_err(|e| e.to_string())?;
    let t = text.to_str().unwrap();
    let mut files = 0;
    files += rerun_matches(&["analyze", t, "--permute", "--replicates", "3", "--seed", "11"], root, "analyze")?;
    files += rerun_matches(
        &["analyze", t, "--alphabet-mode", "unicode_codepoints", "--format", "structured-text"],
        root,
        "analyze_json",
    )?;
    files += rerun_matches(&["simulate", "--preset", "three_state_hmm", "--length", "5000"], root, "simulate")?;
    files += rerun_matches(
        &[
            "entropy",
            "--preset",
            "three_state_hmm",
            "--functional",
            "shannon,tilde_cond_renyi:2",
            "--context-len",
            "14",
            "--replicas",
            "4000",
            "--n-max",
            "3",
        ],
        root,
        "entropy",
    )?;
    files += rerun_matches(
        &[
            "bounds",
            "--preset",
            "dithered_chain",
            "--checks",
            "recurrence,trimmed,kac,complexity,t1,t2",
            "--replicas",
            "3000",
            "--n",
            "32",
            "--k",
            "2,3",
            "--n-max",
            "20000",
            "--trajectories",
            "2",
        ],
        root,
        "bounds",
    )?;
    let points = root.join("analyze_1").join("points.csv");
    files += rerun_matches(&["fit", points.to_str().unwrap()], root, "fit")?;
    Ok(format!("{files} artifacts from 6 runs identical across reruns with 1 and 3 workers"))
}

fn main() -> ExitCode {
    let corpus = random_corpus();
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Outcome + '_>)> = vec![
        ("oracle equivalence", Box::new(|| oracle_equivalence(&corpus))),
        ("pigeonhole identity", Box::new(|| pigeonhole(&corpus))),
        ("recurrence mean identity", Box::new(kac)),
        ("inequality suite", Box::new(inequality_suite)),
        ("entropy chain", Box::new(entropy_chain)),
        ("conditional min-entropy superadditivity", Box::new(superadditivity)),
        ("min-entropy repeat ceiling", Box::new(min_entropy_ceiling)),
        ("periodic repeat floor", Box::new(periodic_floor)),
        ("corpus power-law fit", Box::new(corpus_fit)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
