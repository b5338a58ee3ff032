//! Maximal repetition of random-offset substrings of a text, and the fit
//! `L ≈ A (log n)^α`.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::strstat::{maximal_repetition_of, Sequence};
use crate::{fmt as numfmt, seed, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphabetMode {
    Bytes,
    UnicodeCodepoints,
    MappedTokens,
}

impl AlphabetMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "bytes" => Ok(AlphabetMode::Bytes),
            "unicode_codepoints" | "unicode" => Ok(AlphabetMode::UnicodeCodepoints),
            "mapped_tokens" | "tokens" => Ok(AlphabetMode::MappedTokens),
            other => Err(Error::input(format!(
                "unknown alphabet mode {other:?}; expected bytes, unicode_codepoints or mapped_tokens"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AlphabetMode::Bytes => "bytes",
            AlphabetMode::UnicodeCodepoints => "unicode_codepoints",
            AlphabetMode::MappedTokens => "mapped_tokens",
        }
    }
}

/// An ingested text. `table[id]` is the source unit for symbol `id`; it is
/// empty in byte mode, where ids are the byte values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ingested {
    pub sequence: Sequence,
    pub mode: AlphabetMode,
    pub table: Vec<String>,
}

/// One token per line; blank lines are skipped.
pub fn read_mapping(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

pub fn ingest_text(path: &Path, mode: AlphabetMode, mapping: Option<&Path>) -> Result<Ingested> {
    let data = fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let table = mapping.map(read_mapping).transpose()?;
    ingest_bytes(&data, mode, table.as_deref())
}

/// Converts raw file contents.
///
/// - `Bytes`: alphabet of 256, ids are byte values.
/// - `UnicodeCodepoints`: ids rank the distinct code points in increasing
///   order; invalid UTF-8 is reported with its byte offset.
/// - `MappedTokens`: whitespace-separated tokens, ranked by their position
///   in `mapping` among the tokens that occur. Unlisted tokens are an error.
pub fn ingest_bytes(data: &[u8], mode: AlphabetMode, mapping: Option<&[String]>) -> Result<Ingested> {
    match mode {
        AlphabetMode::Bytes => Ok(Ingested {
            sequence: Sequence::from_bytes(data),
            mode,
            table: Vec::new(),
        }),
        AlphabetMode::UnicodeCodepoints => {
            let text = decode(data)?;
            let distinct: BTreeSet<char> = text.chars().collect();
            let ids: HashMap<char, u32> = distinct.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
            let symbols = text.chars().map(|c| ids[&c]).collect();
            Ok(Ingested {
                sequence: Sequence::new(symbols, distinct.len().max(1) as u32)?,
                mode,
                table: distinct.into_iter().map(String::from).collect(),
            })
        }
        AlphabetMode::MappedTokens => {
            let mapping = mapping.ok_or_else(|| Error::input("mapped_tokens mode needs a mapping table"))?;
            let text = decode(data)?;
            let rank: HashMap<&str, usize> = mapping.iter().enumerate().map(|(i, t)| (t.as_str(), i)).collect();
            let mut seen = BTreeSet::new();
            let mut ranks = Vec::new();
            for token in text.split_whitespace() {
                let r = *rank
                    .get(token)
                    .ok_or_else(|| Error::input(format!("token {token:?} is not in the mapping table")))?;
                seen.insert(r);
                ranks.push(r);
            }
            let ids: HashMap<usize, u32> = seen.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
            Ok(Ingested {
                sequence: Sequence::new(ranks.iter().map(|r| ids[r]).collect(), seen.len().max(1) as u32)?,
                mode,
                table: seen.into_iter().map(|r| mapping[r].clone()).collect(),
            })
        }
    }
}

fn decode(data: &[u8]) -> Result<&str> {
    std::str::from_utf8(data).map_err(|e| Error::Decode {
        offset: e.valid_up_to(),
        message: e.to_string(),
    })
}

/// Rounded geometric grid `min, min·ratio, ...` up to `max`, deduplicated.
pub fn geometric_grid(min: usize, max: usize, ratio: f64) -> Result<Vec<usize>> {
    if min == 0 || min > max {
        return Err(Error::input(format!("grid needs 1 <= min <= max, got {min}..{max}")));
    }
    if !(ratio > 1.0) || !ratio.is_finite() {
        return Err(Error::input(format!("grid ratio must exceed 1, got {ratio}")));
    }
    let mut grid = Vec::new();
    let mut x = min as f64;
    while x.round() as usize <= max {
        let n = x.round() as usize;
        if grid.last() != Some(&n) {
            grid.push(n);
        }
        x *= ratio;
    }
    Ok(grid)
}

/// Substring lengths and their random offsets into a source of length `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OffsetSamplePlan {
    pub source_length: usize,
    pub grid: Vec<usize>,
    /// `offsets[i]` holds one offset per replicate for `grid[i]`.
    pub offsets: Vec<Vec<usize>>,
    pub seed: u64,
}

impl OffsetSamplePlan {
    pub const DEFAULT_MIN: usize = 16;
    pub const DEFAULT_RATIO: f64 = 1.189_207_115_002_721; // 2^(1/4)

    /// Draws `replicates` offsets uniformly from `0..=N-n` for every `n`.
    pub fn new(source_length: usize, grid: Vec<usize>, replicates: usize, seed: u64) -> Result<Self> {
        if replicates == 0 {
            return Err(Error::input("replicates must be at least 1"));
        }
        if let Some(&n) = grid.iter().find(|&&n| n == 0 || n > source_length) {
            return Err(Error::input(format!(
                "grid length {n} is outside 1..={source_length} (the source length)"
            )));
        }
        let mut rng = seed::rng(seed);
        let offsets = grid
            .iter()
            .map(|&n| (0..replicates).map(|_| rng.gen_range(0..=source_length - n)).collect())
            .collect();
        Ok(OffsetSamplePlan {
            source_length,
            grid,
            offsets,
            seed,
        })
    }

    /// Geometric grid with ratio `2^(1/4)` from 16 to `N/2`, one offset each.
    pub fn default_for(source_length: usize, seed: u64) -> Result<Self> {
        let grid = geometric_grid(Self::DEFAULT_MIN, source_length / 2, Self::DEFAULT_RATIO)?;
        Self::new(source_length, grid, 1, seed)
    }

    /// Offsets all zero: the prefixes of the source.
    pub fn prefixes(source_length: usize, grid: Vec<usize>) -> Result<Self> {
        let mut plan = Self::new(source_length, grid, 1, 0)?;
        plan.offsets.iter_mut().flatten().for_each(|c| *c = 0);
        Ok(plan)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepetitionPoint {
    pub n: usize,
    pub offset: usize,
    pub l: usize,
}

/// `L(x[c .. c+n])` for every planned `(n, c)`, in plan order.
pub fn repetition_experiment(x: &Sequence, plan: &OffsetSamplePlan) -> Result<Vec<RepetitionPoint>> {
    if plan.source_length != x.len() {
        return Err(Error::input(format!(
            "plan is for a source of length {}, got {}",
            plan.source_length,
            x.len()
        )));
    }
    let jobs: Vec<(usize, usize)> = plan
        .grid
        .iter()
        .zip(&plan.offsets)
        .flat_map(|(&n, cs)| cs.iter().map(move |&c| (n, c)))
        .collect();
    if let Some(&(n, c)) = jobs.iter().find(|&&(n, c)| c + n > x.len()) {
        return Err(Error::input(format!("substring {c}+{n} exceeds source length {}", x.len())));
    }
    Ok(jobs
        .into_par_iter()
        .map(|(n, offset)| RepetitionPoint {
            n,
            offset,
            l: maximal_repetition_of(&x.symbols()[offset..offset + n]),
        })
        .collect())
}

/// Mean `L` per distinct `n`, in order of first appearance.
pub fn average_by_length(points: &[RepetitionPoint]) -> Vec<(usize, f64)> {
    let mut out: Vec<(usize, f64, usize)> = Vec::new();
    for p in points {
        match out.last_mut() {
            Some((n, sum, count)) if *n == p.n => {
                *sum += p.l as f64;
                *count += 1;
            }
            _ => out.push((p.n, p.l as f64, 1)),
        }
    }
    out.into_iter().map(|(n, s, c)| (n, s / c as f64)).collect()
}

pub fn points_to_csv(points: &[RepetitionPoint]) -> String {
    let mut out = String::from("n,offset,L\n");
    for p in points {
        out.push_str(&format!("{},{},{}\n", p.n, p.offset, p.l));
    }
    out
}

/// `L ≈ a (ln n)^alpha`, fitted by least squares of `ln L` on `ln ln n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub a: f64,
    pub alpha: f64,
    /// Root mean square residual in `ln L`.
    pub residual_rms: f64,
    pub points_used: usize,
    pub points_excluded: usize,
    pub n_range: (usize, usize),
    /// `A` for the same curve written with decimal logarithms,
    /// `L ≈ a10 (log10 n)^alpha`.
    pub a_base10: f64,
}

impl PowerLawFit {
    pub fn summary(&self, label: &str) -> String {
        format!(
            "[fit {label}]\nA = {}\nalpha = {}\nA_base10 = {}\nresidual_rms = {}\npoints_used = {}\npoints_excluded = {}\nn_range = {}..{}\n",
            numfmt::csv(self.a),
            numfmt::csv(self.alpha),
            numfmt::csv(self.a_base10),
            numfmt::csv(self.residual_rms),
            self.points_used,
            self.points_excluded,
            self.n_range.0,
            self.n_range.1
        )
    }
}

/// Points with `n < 3` or non-positive `L` are excluded and counted.
pub fn fit_power_law_log(points: &[(usize, f64)]) -> Result<PowerLawFit> {
    let usable: Vec<(usize, f64, f64)> = points
        .iter()
        .filter(|&&(n, l)| n >= 3 && l > 0.0 && l.is_finite())
        .map(|&(n, l)| (n, (n as f64).ln().ln(), l.ln()))
        .collect();
    if usable.len() < 2 {
        return Err(Error::input(format!(
            "fewer than 2 usable points (n >= 3, L >= 1); got {}",
            usable.len()
        )));
    }
    let count = usable.len() as f64;
    let mean_x = usable.iter().map(|p| p.1).sum::<f64>() / count;
    let mean_y = usable.iter().map(|p| p.2).sum::<f64>() / count;
    let sxx: f64 = usable.iter().map(|p| (p.1 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::input("fit needs at least two distinct lengths n"));
    }
    let sxy: f64 = usable.iter().map(|p| (p.1 - mean_x) * (p.2 - mean_y)).sum();
    let alpha = sxy / sxx;
    let intercept = mean_y - alpha * mean_x;
    let rss: f64 = usable.iter().map(|p| (p.2 - intercept - alpha * p.1).powi(2)).sum();
    let a = intercept.exp();
    Ok(PowerLawFit {
        a,
        alpha,
        residual_rms: (rss / count).sqrt(),
        points_used: usable.len(),
        points_excluded: points.len() - usable.len(),
        n_range: (
            usable.iter().map(|p| p.0).min().unwrap_or(0),
            usable.iter().map(|p| p.0).max().unwrap_or(0),
        ),
        a_base10: a * std::f64::consts::LN_10.powf(alpha),
    })
}

/// Uniformly random permutation of the symbols of `x`.
pub fn permutation_baseline(x: &Sequence, seed: u64) -> Sequence {
    let mut symbols = x.symbols().to_vec();
    symbols.shuffle(&mut seed::rng(seed));
    Sequence::new(symbols, x.alphabet_size()).expect("same alphabet")
}

/// `len` pseudorandom bytes, reproducible from `seed`.
pub fn pseudorandom_bytes(len: usize, seed: u64) -> Vec<u8> {
    let mut out = vec![0u8; len];
    seed::rng(seed).fill(&mut out[..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::io::Write;

    #[test]
    fn ingest_modes() {
        let x = ingest_bytes(&[7u8; 5], AlphabetMode::Bytes, None).unwrap();
        assert_eq!(x.sequence.alphabet_size(), 256);
        assert!(x.sequence.symbols().iter().all(|&s| s == 7));

        let x = ingest_bytes(b"abab", AlphabetMode::UnicodeCodepoints, None).unwrap();
        assert_eq!(maximal_repetition_of(x.sequence.symbols()), 2);
        assert_eq!(x.table, vec!["a", "b"]);
        assert_eq!(x.sequence.alphabet_size(), 2);

        let x = ingest_bytes(b"", AlphabetMode::Bytes, None).unwrap();
        assert!(x.sequence.is_empty());

        let x = ingest_bytes("żaba ża".as_bytes(), AlphabetMode::UnicodeCodepoints, None).unwrap();
        assert_eq!(x.sequence.len(), 7);
        assert_eq!(x.table, vec![" ", "a", "b", "ż"]);
    }

    #[test]
    fn decode_error_carries_offset() {
        let err = ingest_bytes(b"abc\xffdef", AlphabetMode::UnicodeCodepoints, None).unwrap_err();
        assert!(matches!(err, Error::Decode { offset: 3, .. }), "{err:?}");
    }

    #[test]
    fn mapped_tokens() {
        let table: Vec<String> = ["the", "cat", "sat", "dog"].iter().map(|s| s.to_string()).collect();
        let x = ingest_bytes(b"sat the\ncat the  sat", AlphabetMode::MappedTokens, Some(&table)).unwrap();
        assert_eq!(x.table, vec!["the", "cat", "sat"]);
        assert_eq!(x.sequence.symbols(), &[2, 0, 1, 0, 2]);
        assert_eq!(x.sequence.alphabet_size(), 3);
        assert!(ingest_bytes(b"cow", AlphabetMode::MappedTokens, Some(&table)).is_err());
        assert!(ingest_bytes(b"cat", AlphabetMode::MappedTokens, None).is_err());
    }

    #[test]
    fn ingest_from_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(b"hello hello").unwrap();
        let x = ingest_text(f.path(), AlphabetMode::Bytes, None).unwrap();
        assert_eq!(maximal_repetition_of(x.sequence.symbols()), 5);
        let missing = ingest_text(Path::new("/nonexistent/file"), AlphabetMode::Bytes, None).unwrap_err();
        assert!(matches!(missing, Error::Io { .. }));
    }

    #[test]
    fn grid_and_plan() {
        assert_eq!(geometric_grid(16, 64, 2.0).unwrap(), vec![16, 32, 64]);
        let g = geometric_grid(16, 1000, OffsetSamplePlan::DEFAULT_RATIO).unwrap();
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(geometric_grid(0, 4, 2.0).is_err());
        assert!(geometric_grid(4, 8, 1.0).is_err());
        let plan = OffsetSamplePlan::new(100, vec![10, 50, 100], 3, 4).unwrap();
        for (n, cs) in plan.grid.iter().zip(&plan.offsets) {
            assert_eq!(cs.len(), 3);
            assert!(cs.iter().all(|&c| c + n <= 100));
        }
        assert_eq!(plan.offsets[2], vec![0, 0, 0]);
        assert!(OffsetSamplePlan::new(100, vec![101], 1, 0).is_err());
    }

    #[test]
    fn experiment_examples() {
        let constant = Sequence::from_bytes(&[1u8; 300]);
        let plan = OffsetSamplePlan::new(300, vec![4, 20, 150], 1, 9).unwrap();
        for p in repetition_experiment(&constant, &plan).unwrap() {
            assert_eq!(p.l, p.n - 1);
        }
        let abab = Sequence::from_bytes(b"abababab");
        let plan = OffsetSamplePlan::prefixes(8, vec![4]).unwrap();
        assert_eq!(
            repetition_experiment(&abab, &plan).unwrap(),
            vec![RepetitionPoint { n: 4, offset: 0, l: 2 }]
        );
        assert!(repetition_experiment(&abab, &OffsetSamplePlan::prefixes(9, vec![9]).unwrap()).is_err());
    }

    #[test]
    fn averaging() {
        let pts = [
            RepetitionPoint { n: 4, offset: 0, l: 1 },
            RepetitionPoint { n: 4, offset: 1, l: 2 },
            RepetitionPoint { n: 8, offset: 0, l: 3 },
        ];
        assert_eq!(average_by_length(&pts), vec![(4, 1.5), (8, 3.0)]);
    }

    #[test]
    fn fit_examples() {
        let pts: Vec<(usize, f64)> = [10usize, 100, 1000, 10_000].iter().map(|&n| (n, 2.0 * (n as f64).ln())).collect();
        let fit = fit_power_law_log(&pts).unwrap();
        assert_relative_eq!(fit.a, 2.0, max_relative = 1e-12);
        assert_relative_eq!(fit.alpha, 1.0, max_relative = 1e-12);
        assert!(fit.residual_rms < 1e-12);
        assert_relative_eq!(fit.a_base10, 2.0 * std::f64::consts::LN_10, max_relative = 1e-12);

        let mut with_bad = pts.clone();
        with_bad.extend([(2, 5.0), (50, 0.0)]);
        let fit = fit_power_law_log(&with_bad).unwrap();
        assert_eq!((fit.points_used, fit.points_excluded), (4, 2));
        assert_eq!(fit.n_range, (10, 10_000));

        assert!(fit_power_law_log(&[(10, 1.0), (2, 1.0), (20, 0.0)]).is_err());
    }

    #[test]
    fn permutation_examples() {
        let x = Sequence::from_bytes(b"aaaa");
        assert_eq!(permutation_baseline(&x, 3), x);
        let x = Sequence::from_bytes(b"the quick brown fox");
        let y = permutation_baseline(&x, 3);
        assert_eq!(y, permutation_baseline(&x, 3));
        let (mut a, mut b) = (x.symbols().to_vec(), y.symbols().to_vec());
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }
}
