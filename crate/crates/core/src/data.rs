//! Dataset ingestion, synthetic generation, and result persistence.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::bench::BenchRecord;
use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// A named set of equal-length labeled series.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub series: Vec<TimeSeries>,
    /// Common series length.
    pub length: usize,
    /// Distinct labels, sorted.
    pub classes: BTreeSet<String>,
}

impl Dataset {
    fn from_series(name: String, series: Vec<TimeSeries>) -> Self {
        let length = series.first().map_or(0, TimeSeries::len);
        let classes = series
            .iter()
            .filter_map(|s| s.label().map(str::to_string))
            .collect();
        Dataset {
            name,
            series,
            length,
            classes,
        }
    }

    /// Z-normalizes every series in place.
    pub fn znormalize(&mut self) {
        for s in &mut self.series {
            *s = s.znormalized();
        }
    }

    /// Splits off the first `train_n` series as a training set, leaving the
    /// rest as a test set. Both halves keep this dataset's name.
    pub fn split(&self, train_n: usize) -> (Dataset, Dataset) {
        let train_n = train_n.min(self.series.len());
        let (a, b) = self.series.split_at(train_n);
        (
            Dataset::from_series(self.name.clone(), a.to_vec()),
            Dataset::from_series(self.name.clone(), b.to_vec()),
        )
    }

    /// Consecutive non-overlapping pairs: (0,1), (2,3), ...
    pub fn pairs(&self) -> Vec<(TimeSeries, TimeSeries)> {
        self.series
            .chunks_exact(2)
            .map(|c| (c[0].clone(), c[1].clone()))
            .collect()
    }
}

/// Loads a label-first delimited file: one series per line, the first field
/// is the class label (kept verbatim), remaining fields are the values.
/// The delimiter is a tab if the first record contains one, else a comma.
pub fn load_ucr(path: &Path) -> Result<Dataset> {
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| Error::FileRead {
        path: display.clone(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| display.clone());

    let mut series: Vec<TimeSeries> = Vec::new();
    let mut expected_len: Option<usize> = None;
    let mut delim: Option<char> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let d = *delim.get_or_insert_with(|| if line.contains('\t') { '\t' } else { ',' });

        let mut fields = line.split(d);
        let label = fields.next().map(str::trim).unwrap_or("");
        if label.is_empty() {
            return Err(Error::Parse {
                path: display,
                line: line_no,
                message: "missing label".into(),
            });
        }
        let mut values = Vec::new();
        for field in fields {
            let field = field.trim();
            let v: f64 = field.parse().map_err(|_| Error::Parse {
                path: display.clone(),
                line: line_no,
                message: format!("cannot parse value {field:?}"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    path: display.clone(),
                    line: line_no,
                    message: format!("non-finite value {field:?}"),
                });
            }
            values.push(v);
        }
        if values.is_empty() {
            return Err(Error::Parse {
                path: display,
                line: line_no,
                message: "record has no values".into(),
            });
        }
        match expected_len {
            None => expected_len = Some(values.len()),
            Some(expected) if expected != values.len() => {
                return Err(Error::RaggedLengths {
                    path: display,
                    line: line_no,
                    expected,
                    got: values.len(),
                });
            }
            _ => {}
        }
        let mut s = TimeSeries::with_label(values, label)?;
        s.set_id(series.len());
        series.push(s);
    }

    if series.is_empty() {
        return Err(Error::EmptyFile { path: display });
    }
    Ok(Dataset::from_series(name, series))
}

/// Synthetic family to draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// Cumulative sums of unit-variance steps with a per-class drift offset.
    RandomWalk,
    /// Per-class-frequency sinusoids with additive noise and random phase.
    NoisySine,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::RandomWalk => write!(f, "random_walk"),
            Generator::NoisySine => write!(f, "noisy_sine"),
        }
    }
}

/// Fully determined recipe for a synthetic dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyntheticSpec {
    pub generator: Generator,
    /// Number of series.
    pub n: usize,
    /// Length of each series.
    pub length: usize,
    /// Number of classes; series `i` gets class `i % classes`.
    pub classes: usize,
    pub seed: u64,
}

impl SyntheticSpec {
    fn validate(&self) -> Result<()> {
        if self.classes < 1 {
            return Err(Error::InvalidSpec("need at least one class".into()));
        }
        if self.n < self.classes {
            return Err(Error::InvalidSpec(format!(
                "need at least one series per class ({} < {})",
                self.n, self.classes
            )));
        }
        if self.length < 2 {
            return Err(Error::InvalidSpec("series length must be at least 2".into()));
        }
        Ok(())
    }
}

impl fmt::Display for SyntheticSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:n={},len={},k={},seed={}",
            self.generator, self.n, self.length, self.classes, self.seed
        )
    }
}

/// Accepts `random_walk:n=60,len=128,k=3,seed=7` (any parameter order;
/// all four required). `noisy_sine` is the other generator.
impl FromStr for SyntheticSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (gen_name, params) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidSpec(format!("missing parameters in {s:?}")))?;
        let generator = match gen_name {
            "random_walk" => Generator::RandomWalk,
            "noisy_sine" => Generator::NoisySine,
            other => {
                return Err(Error::InvalidSpec(format!("unknown generator {other:?}")));
            }
        };
        let mut n = None;
        let mut length = None;
        let mut classes = None;
        let mut seed = None;
        for part in params.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidSpec(format!("expected key=value, got {part:?}")))?;
            let parse = |v: &str| -> Result<u64> {
                v.trim()
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("bad value in {part:?}")))
            };
            match key.trim() {
                "n" => n = Some(parse(value)? as usize),
                "len" => length = Some(parse(value)? as usize),
                "k" => classes = Some(parse(value)? as usize),
                "seed" => seed = Some(parse(value)?),
                other => {
                    return Err(Error::InvalidSpec(format!("unknown parameter {other:?}")));
                }
            }
        }
        let spec = SyntheticSpec {
            generator,
            n: n.ok_or_else(|| Error::InvalidSpec("missing n".into()))?,
            length: length.ok_or_else(|| Error::InvalidSpec("missing len".into()))?,
            classes: classes.ok_or_else(|| Error::InvalidSpec("missing k".into()))?,
            seed: seed.ok_or_else(|| Error::InvalidSpec("missing seed".into()))?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Generates a synthetic dataset. The same spec always produces the same
/// values; labels are the class indices as strings.
pub fn generate(spec: &SyntheticSpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut series = Vec::with_capacity(spec.n);
    for i in 0..spec.n {
        let class = i % spec.classes;
        let values: Vec<f64> = match spec.generator {
            Generator::RandomWalk => {
                let drift = 0.1 * class as f64;
                let mut acc = 0.0;
                (0..spec.length)
                    .map(|_| {
                        let step: f64 = rng.sample(StandardNormal);
                        acc += step + drift;
                        acc
                    })
                    .collect()
            }
            Generator::NoisySine => {
                let freq = (class + 1) as f64;
                let phase = rng.random_range(0.0..std::f64::consts::TAU);
                (0..spec.length)
                    .map(|t| {
                        let angle =
                            std::f64::consts::TAU * freq * t as f64 / spec.length as f64 + phase;
                        let noise: f64 = rng.sample(StandardNormal);
                        angle.sin() + 0.2 * noise
                    })
                    .collect()
            }
        };
        let mut s = TimeSeries::with_label(values, class.to_string())?;
        s.set_id(i);
        series.push(s);
    }
    Ok(Dataset::from_series(spec.to_string(), series))
}

/// One classified query, as written to the predictions CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub query_id: usize,
    pub predicted_label: String,
    pub true_label: String,
    pub nn_index: usize,
    pub nn_distance: f64,
    pub dtw_calls: u64,
    pub pruned: u64,
    pub elapsed_ns: u64,
}

/// One query/candidate tightness sample, as written by the per-pair dump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRatioRecord {
    pub pair_id: usize,
    pub bound: String,
    pub w_eff: usize,
    pub lb: f64,
    pub dtw: f64,
    /// Empty when the pair was excluded (DTW distance of zero).
    pub ratio: Option<f64>,
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Writes benchmark records as CSV with a fixed header.
pub fn write_results(path: &Path, records: &[BenchRecord]) -> Result<()> {
    write_csv(path, records)
}

/// Reads back a file written by [`write_results`].
pub fn read_results(path: &Path) -> Result<Vec<BenchRecord>> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut records = Vec::new();
    for row in reader.deserialize() {
        records.push(row?);
    }
    Ok(records)
}

/// Writes per-query predictions as CSV.
pub fn write_predictions(path: &Path, records: &[PredictionRecord]) -> Result<()> {
    write_csv(path, records)
}

/// Writes per-pair tightness samples as CSV.
pub fn write_pair_ratios(path: &Path, records: &[PairRatioRecord]) -> Result<()> {
    write_csv(path, records)
}
