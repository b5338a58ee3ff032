use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use maxrep::bounds::{
    check_growth, check_kac, check_recurrence_repetition, check_subword_bounds, check_trimmed_recurrence,
    default_checkpoints, BoundReport, GrowthBound, GrowthOptions, KacOptions, Verdict, WordSelection,
};
use maxrep::corpus::{
    average_by_length, fit_power_law_log, geometric_grid, ingest_text, permutation_baseline, repetition_experiment,
    OffsetSamplePlan, PowerLawFit, RepetitionPoint,
};
use maxrep::entropy::{plugin_curve, ContextMode, EntropyCurve, EntropyEngine, Functional};
use maxrep::{fmt as numfmt, seed, strstat};
use serde::Serialize;
use serde_json::json;

use crate::config::{AnalyzeConfig, BoundsConfig, EntropyConfig, FitConfig, OutputFormat, RunConfig, SimulateConfig, Units};
use crate::output::Artifact;
use crate::{CliError, Status};

/// Everything a subcommand produced.
#[derive(Debug)]
pub struct Outcome {
    /// The run configuration with any data-dependent defaults filled in.
    pub config: RunConfig,
    pub artifacts: Vec<Artifact>,
    /// Progress and capability messages for stderr.
    pub notes: Vec<String>,
    pub status: Status,
    /// An error raised after some artifacts were already produced.
    pub failure: Option<CliError>,
}

impl Outcome {
    fn new(config: RunConfig) -> Self {
        Outcome {
            config,
            artifacts: Vec::new(),
            notes: Vec::new(),
            status: Status::Ok,
            failure: None,
        }
    }
}

pub fn dispatch(config: &RunConfig) -> Result<Outcome, CliError> {
    match config {
        RunConfig::Analyze(c) => analyze(c),
        RunConfig::Simulate(c) => simulate(c),
        RunConfig::Entropy(c) => entropy(c),
        RunConfig::Bounds(c) => bounds(c),
        RunConfig::Fit(c) => fit(c),
    }
}

fn pretty(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serialisable output");
    text.push('\n');
    text
}

fn fit_block(label: &str, fit: &Result<PowerLawFit, maxrep::Error>) -> String {
    match fit {
        Ok(f) => f.summary(label),
        Err(e) => format!("[fit {label}]\nrejected: {e}\n"),
    }
}

fn fit_json(label: &str, fit: &Result<PowerLawFit, maxrep::Error>) -> serde_json::Value {
    match fit {
        Ok(f) => json!({ "source": label, "fit": f }),
        Err(e) => json!({ "source": label, "rejected": e.to_string() }),
    }
}

fn analyze(c: &AnalyzeConfig) -> Result<Outcome, CliError> {
    let path = c.corpus.as_deref().ok_or_else(|| CliError::usage("analyze needs a corpus file"))?;
    let ingested = ingest_text(path, c.alphabet_mode, c.mapping.as_deref())?;
    let x = ingested.sequence;
    let grid_max = c.grid_max.unwrap_or(x.len() / 2);
    let mut resolved = c.clone();
    resolved.grid_max = Some(grid_max);
    let mut out = Outcome::new(RunConfig::Analyze(resolved));

    let grid = geometric_grid(c.grid_min, grid_max, c.grid_ratio)?;
    let plan = OffsetSamplePlan::new(x.len(), grid, c.replicates, seed::derive_named(c.seed, "offsets"))?;
    let mut sources = vec![("text", x.clone())];
    if c.permute {
        sources.push(("permutation", permutation_baseline(&x, seed::derive_named(c.seed, "permutation"))));
    }
    let mut results: Vec<(&str, Vec<RepetitionPoint>, Result<PowerLawFit, maxrep::Error>)> = Vec::new();
    for (label, seq) in &sources {
        let points = repetition_experiment(seq, &plan)?;
        let fit = fit_power_law_log(&average_by_length(&points));
        results.push((label, points, fit));
    }

    match c.format {
        OutputFormat::Csv => {
            let mut csv = String::from("source,n,offset,L\n");
            for (label, points, _) in &results {
                for p in points {
                    csv.push_str(&format!("{label},{},{},{}\n", p.n, p.offset, p.l));
                }
            }
            out.artifacts.push(Artifact::text("points.csv", csv));
            let fits: Vec<String> = results.iter().map(|(l, _, f)| fit_block(l, f)).collect();
            out.artifacts.push(Artifact::text("fit.txt", fits.join("\n")));
        }
        OutputFormat::StructuredText => {
            let sources: Vec<_> = results
                .iter()
                .map(|(label, points, f)| {
                    let mut v = fit_json(label, f);
                    v["points"] = json!(points);
                    v
                })
                .collect();
            let doc = json!({
                "corpus_length": x.len(),
                "alphabet_mode": ingested.mode,
                "alphabet": ingested.table,
                "sources": sources,
            });
            out.artifacts.push(Artifact::text("analysis.json", pretty(&doc)));
        }
    }
    out.failure = results
        .into_iter()
        .find_map(|(label, _, f)| f.err().map(|e| CliError::usage(format!("fit for {label} rejected: {e}"))));
    Ok(out)
}

fn simulate(c: &SimulateConfig) -> Result<Outcome, CliError> {
    let spec = c.model.as_ref().ok_or_else(|| CliError::usage("a model is required"))?;
    let x = spec.model.sample(c.length, c.seed)?;
    let mut out = Outcome::new(RunConfig::Simulate(c.clone()));
    out.notes.push(format!(
        "sampled {} symbols; maximal repetition L = {}",
        x.len(),
        strstat::maximal_repetition(&x)
    ));
    if c.raw {
        if x.alphabet_size() > 256 {
            return Err(CliError::usage(format!(
                "raw output needs at most 256 symbols, the model has {}",
                x.alphabet_size()
            )));
        }
        let bytes: Vec<u8> = x.symbols().iter().map(|&y| y as u8).collect();
        out.artifacts.push(Artifact {
            name: "sequence.bin".into(),
            contents: bytes,
        });
        return Ok(out);
    }
    match c.format {
        OutputFormat::Csv => {
            let mut csv = String::from("index,symbol\n");
            for (i, y) in x.symbols().iter().enumerate() {
                csv.push_str(&format!("{i},{y}\n"));
            }
            out.artifacts.push(Artifact::text("sequence.csv", csv));
        }
        OutputFormat::StructuredText => {
            let doc = json!({
                "model": spec.label(),
                "seed": c.seed,
                "alphabet_size": x.alphabet_size(),
                "symbols": x.symbols(),
            });
            out.artifacts.push(Artifact::text("sequence.json", pretty(&doc)));
        }
    }
    Ok(out)
}

/// `name` or `name:gamma`.
fn parse_functional(spec: &str) -> Result<Functional, CliError> {
    let (name, gamma) = match spec.split_once(':') {
        Some((n, g)) => {
            let g: f64 = g
                .parse()
                .map_err(|_| CliError::usage(format!("invalid order in functional {spec:?}")))?;
            (n, Some(g))
        }
        None => (spec, None),
    };
    Ok(Functional::parse(&name.replace('-', "_"), gamma)?)
}

fn in_units(curve: &mut EntropyCurve, units: Units) {
    if units == Units::Bits {
        let ln2 = std::f64::consts::LN_2;
        for p in &mut curve.points {
            p.value /= ln2;
            p.se = p.se.map(|s| s / ln2);
        }
    }
}

fn entropy(c: &EntropyConfig) -> Result<Outcome, CliError> {
    let mut out = Outcome::new(RunConfig::Entropy(c.clone()));
    let functionals = c
        .functionals
        .iter()
        .map(|f| parse_functional(f))
        .collect::<Result<Vec<_>, _>>()?;
    let mut curves = Vec::new();
    let mut unsupported = Vec::new();
    let mut record = |f: &Functional, result: maxrep::Result<EntropyCurve>| -> Result<(), CliError> {
        match result {
            Ok(curve) => curves.push(curve),
            Err(e) if e.is_capability() => unsupported.push(format!("{}: {e}", f.name())),
            Err(e) => return Err(e.into()),
        }
        Ok(())
    };
    let source;
    if let Some(spec) = &c.model {
        source = spec.label();
        let engine = EntropyEngine::new(&spec.model)?;
        let context = match c.context_len {
            Some(len) => ContextMode::Finite {
                len,
                replicas: c.replicas,
                seed: seed::derive_named(c.seed, "context"),
            },
            None => ContextMode::InfiniteReduced,
        };
        for f in &functionals {
            record(f, engine.curve(*f, &c.grid, context, &source))?;
        }
    } else {
        let path = c.corpus.as_deref().ok_or_else(|| CliError::usage("entropy needs a model or a corpus"))?;
        source = path.display().to_string();
        let x = ingest_text(path, c.alphabet_mode, c.mapping.as_deref())?.sequence;
        for f in &functionals {
            let result = match f {
                Functional::CondRenyi(_) | Functional::CondMin | Functional::TildeCondRenyi(_) => Err(
                    maxrep::Error::Capability("conditional entropies need a model, not a corpus".into()),
                ),
                _ => plugin_curve(&x, &c.grid, f.gamma(), &source),
            };
            record(f, result)?;
        }
    }
    for curve in &mut curves {
        in_units(curve, c.units);
    }
    out.notes.extend(unsupported.iter().map(|u| format!("unsupported: {u}")));
    if curves.is_empty() && !unsupported.is_empty() {
        out.status = Status::CapabilityOnly;
    }
    let unit = match c.units {
        Units::Nats => "nats",
        Units::Bits => "bits",
    };
    match c.format {
        OutputFormat::Csv => {
            let mut csv = format!("source,functional,gamma,n,value_{unit},se,method\n");
            for curve in &curves {
                for p in &curve.points {
                    csv.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        curve.source,
                        curve.functional.name(),
                        numfmt::csv(curve.functional.gamma()),
                        p.n,
                        numfmt::csv(p.value),
                        p.se.map(numfmt::csv).unwrap_or_default(),
                        p.method
                    ));
                }
            }
            out.artifacts.push(Artifact::text("entropy.csv", csv));
        }
        OutputFormat::StructuredText => {
            let doc = json!({ "units": unit, "curves": curves, "unsupported": unsupported });
            out.artifacts.push(Artifact::text("entropy.json", pretty(&doc)));
        }
    }
    Ok(out)
}

enum Check {
    Recurrence,
    Trimmed,
    Kac,
    Complexity,
    Growth(GrowthBound),
    PsiMixing,
}

fn parse_check(name: &str) -> Result<Check, CliError> {
    Ok(match name.to_ascii_lowercase().replace('-', "_").as_str() {
        "recurrence" => Check::Recurrence,
        "trimmed" => Check::Trimmed,
        "kac" => Check::Kac,
        "complexity" | "subword" => Check::Complexity,
        "psi_mixing" | "psi" => Check::PsiMixing,
        other => Check::Growth(
            GrowthBound::parse(other).map_err(|_| CliError::usage(format!("unknown check {name:?}")))?,
        ),
    })
}

fn bounds(c: &BoundsConfig) -> Result<Outcome, CliError> {
    let spec = c.model.as_ref().ok_or_else(|| CliError::usage("a model is required"))?;
    let model = &spec.model;
    let checks = c.checks.iter().map(|s| parse_check(s)).collect::<Result<Vec<_>, _>>()?;
    let mut out = Outcome::new(RunConfig::Bounds(c.clone()));
    let mut reports: Vec<BoundReport> = Vec::new();
    let mut unsupported: Vec<String> = Vec::new();
    let mut take = |name: &str, result: maxrep::Result<Vec<BoundReport>>| -> Result<(), CliError> {
        match result {
            Ok(r) => reports.extend(r),
            Err(e) if e.is_capability() => unsupported.push(format!("{name}: {e}")),
            Err(e) => return Err(e.into()),
        }
        Ok(())
    };
    for check in &checks {
        match check {
            Check::Recurrence | Check::Complexity => {
                for &n in &c.ns {
                    for &k in c.ks.iter().filter(|&&k| k < n) {
                        if matches!(check, Check::Recurrence) {
                            let s = seed::derive_named(c.seed, &format!("recurrence/{n}/{k}"));
                            take("recurrence", check_recurrence_repetition(model, n, k, &c.gammas, c.replicas, s))?;
                        } else {
                            let s = seed::derive_named(c.seed, &format!("complexity/{n}/{k}"));
                            take("complexity", check_subword_bounds(model, n, k, &c.ms, c.replicas, s))?;
                        }
                    }
                }
            }
            Check::Trimmed => {
                for &k in &c.ks {
                    let s = seed::derive_named(c.seed, &format!("trimmed/{k}"));
                    take("trimmed", check_trimmed_recurrence(model, k, &c.cs, c.replicas, s))?;
                }
            }
            Check::Kac => {
                for &k in &c.kac_ks {
                    let opts = KacOptions {
                        replicas: c.replicas,
                        seed: seed::derive_named(c.seed, &format!("kac/{k}")),
                        tail_cs: c.kac_cs.clone(),
                        distortion: c.kac_distortion,
                        ..KacOptions::default()
                    };
                    take("kac", check_kac(model, &WordSelection::AllWords(k), &opts))?;
                }
            }
            Check::Growth(bound) => {
                let opts = GrowthOptions {
                    burn_in: c.burn_in,
                    alpha: c.alpha,
                    gamma: c.growth_gamma,
                };
                let checkpoints = default_checkpoints(c.n_max);
                for t in 0..c.trajectories {
                    let s = seed::derive_named(c.seed, &format!("growth/{}/{t}", bound.id()));
                    take(bound.id(), check_growth(model, *bound, &checkpoints, &opts, s))?;
                }
            }
            Check::PsiMixing => take(
                "psi_mixing",
                Err(maxrep::Error::Capability(
                    "psi-mixing coefficients are not computed for any model".into(),
                )),
            )?,
        }
    }
    let label = spec.label();
    for r in &mut reports {
        r.model = label.clone();
    }
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let (violated, inconclusive) = (count(Verdict::Violated), count(Verdict::Inconclusive));
    out.notes.extend(unsupported.iter().map(|u| format!("unsupported: {u}")));
    out.notes.push(format!(
        "{} reports: {} hold, {violated} violated, {inconclusive} inconclusive",
        reports.len(),
        count(Verdict::HoldsWithinTolerance)
    ));
    out.status = if violated > 0 {
        Status::Violation
    } else if reports.is_empty() && !unsupported.is_empty() {
        Status::CapabilityOnly
    } else {
        Status::Ok
    };
    match c.format {
        OutputFormat::Csv => {
            out.artifacts
                .push(Artifact::text("reports.csv", maxrep::bounds::reports_to_csv(&reports)));
        }
        OutputFormat::StructuredText => {
            let doc = json!({ "reports": reports, "unsupported": unsupported });
            out.artifacts.push(Artifact::text("reports.json", pretty(&doc)));
        }
    }
    Ok(out)
}

/// Reads `(source, n, L)` rows from a CSV with a header naming `n` and `L`.
fn read_points(path: &Path) -> Result<Vec<(String, usize, f64)>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| maxrep::Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines.next().unwrap_or_default().split(',').map(str::trim).collect();
    let column = |name: &str| header.iter().position(|h| h.eq_ignore_ascii_case(name));
    let (Some(n_col), Some(l_col)) = (column("n"), column("L")) else {
        return Err(CliError::usage(format!("{} needs a header with columns n and L", path.display())));
    };
    let source_col = column("source");
    lines
        .enumerate()
        .map(|(i, line)| {
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            let bad = || CliError::usage(format!("{}: malformed row {}: {line:?}", path.display(), i + 2));
            let n = cells.get(n_col).and_then(|v| v.parse().ok()).ok_or_else(bad)?;
            let l = cells.get(l_col).and_then(|v| v.parse().ok()).ok_or_else(bad)?;
            let source = source_col
                .and_then(|c| cells.get(c))
                .map_or_else(|| "points".to_string(), |s| s.to_string());
            Ok((source, n, l))
        })
        .collect()
}

fn fit(c: &FitConfig) -> Result<Outcome, CliError> {
    let path = c.points.as_deref().ok_or_else(|| CliError::usage("fit needs a points file"))?;
    let rows = read_points(path)?;
    let mut groups: Vec<(String, BTreeMap<usize, (f64, usize)>)> = Vec::new();
    for (source, n, l) in rows {
        if c.source.as_ref().is_some_and(|s| *s != source) {
            continue;
        }
        let pos = match groups.iter().position(|(s, _)| *s == source) {
            Some(p) => p,
            None => {
                groups.push((source, BTreeMap::new()));
                groups.len() - 1
            }
        };
        let entry = groups[pos].1.entry(n).or_insert((0.0, 0));
        entry.0 += l;
        entry.1 += 1;
    }
    if groups.is_empty() {
        return Err(CliError::usage(format!("{} has no matching rows", path.display())));
    }
    let fits: Vec<(String, Result<PowerLawFit, maxrep::Error>)> = groups
        .into_iter()
        .map(|(source, by_n)| {
            let pts: Vec<(usize, f64)> = by_n.into_iter().map(|(n, (s, k))| (n, s / k as f64)).collect();
            (source, fit_power_law_log(&pts))
        })
        .collect();
    let mut out = Outcome::new(RunConfig::Fit(c.clone()));
    match c.format {
        OutputFormat::Csv => {
            let blocks: Vec<String> = fits.iter().map(|(s, f)| fit_block(s, f)).collect();
            out.artifacts.push(Artifact::text("fit.txt", blocks.join("\n")));
        }
        OutputFormat::StructuredText => {
            let doc: Vec<_> = fits.iter().map(|(s, f)| fit_json(s, f)).collect();
            out.artifacts.push(Artifact::text("fit.json", pretty(&doc)));
        }
    }
    out.failure = fits
        .into_iter()
        .find_map(|(s, f)| f.err().map(|e| CliError::usage(format!("fit for {s} rejected: {e}"))));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functional_specs() {
        assert_eq!(parse_functional("renyi:2").unwrap(), Functional::Renyi(2.0));
        assert_eq!(parse_functional("cond-min").unwrap(), Functional::CondMin);
        assert!(parse_functional("renyi").is_err());
        assert!(parse_functional("renyi:x").is_err());
    }

    #[test]
    fn check_names() {
        assert!(matches!(parse_check("T2").unwrap(), Check::Growth(GrowthBound::MinEntropyCeiling)));
        assert!(matches!(parse_check("psi-mixing").unwrap(), Check::PsiMixing));
        assert!(parse_check("bogus").is_err());
    }

    #[test]
    fn points_with_sources() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        fs::write(&path, "source,n,offset,L\ntext,16,0,3\ntext,16,5,5\nperm,16,2,2\n").unwrap();
        let rows = read_points(&path).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1], ("text".to_string(), 16, 5.0));
        fs::write(&path, "n,L\n16,x\n").unwrap();
        assert!(read_points(&path).is_err());
        fs::write(&path, "size,len\n").unwrap();
        assert!(read_points(&path).is_err());
    }
}
