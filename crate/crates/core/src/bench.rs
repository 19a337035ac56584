//! Benchmark harness: tightness measurement, band-count sweeps, and
//! head-to-head bound comparisons over a shared train/test split.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bounds::{evaluate, BoundKind, BoundSpec};
use crate::data::Dataset;
use crate::dtw::dtw;
use crate::envelope::compute_envelope;
use crate::error::{Error, Result};
use crate::search::{build_model, classify, CandidateOrder, TrainedModel};
use crate::series::{TimeSeries, WindowSpec};

/// One benchmark output row. Serializes with the column order
/// `dataset,bound,v,window_spec,w_eff,queries,dtw_calls,lb_calls,pruned,elapsed_ns,tightness_mean,tightness_geomean`;
/// optional columns are left empty when they do not apply.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub dataset: String,
    pub bound: String,
    /// Band count, for banded-bound rows.
    pub v: Option<usize>,
    pub window_spec: String,
    pub w_eff: usize,
    pub queries: usize,
    pub dtw_calls: u64,
    pub lb_calls: u64,
    pub pruned: u64,
    pub elapsed_ns: u64,
    pub tightness_mean: Option<f64>,
    pub tightness_geomean: Option<f64>,
}

/// Geometric mean via the exponential of the mean log. Returns NaN for an
/// empty slice; any zero value drives the result to zero.
pub fn geomean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let log_sum: f64 = values.iter().map(|v| v.ln()).sum();
    (log_sum / values.len() as f64).exp()
}

/// Tightness of one bound on one query/candidate pair, in the root domain.
#[derive(Debug, Clone, PartialEq)]
pub struct PairTightness {
    pub pair_id: usize,
    /// Root-domain bound value.
    pub lb: f64,
    /// Root-domain distance.
    pub dtw: f64,
    /// `lb / dtw`; `None` when the pair is degenerate (zero distance).
    pub ratio: Option<f64>,
}

/// Aggregate tightness of one bound over a pair set.
#[derive(Debug, Clone, PartialEq)]
pub struct TightnessSummary {
    pub bound: String,
    pub w_eff: usize,
    pub pairs: Vec<PairTightness>,
    /// Pairs that contributed a ratio.
    pub used: usize,
    pub mean: f64,
    pub geomean: f64,
}

/// Evaluates `bound` and the full distance on every pair (no cutoffs) and
/// summarizes the ratio `lb / dtw` in the root domain. Pairs with zero
/// distance are reported but excluded from the aggregates.
pub fn measure_tightness(
    bound: &BoundSpec,
    pairs: &[(TimeSeries, TimeSeries)],
    window: WindowSpec,
) -> Result<TightnessSummary> {
    if pairs.is_empty() {
        return Err(Error::EmptyPairs);
    }
    let w_eff = window.resolve(pairs[0].0.len());
    let mut out = Vec::with_capacity(pairs.len());
    let mut ratios = Vec::new();
    for (pair_id, (a, b)) in pairs.iter().enumerate() {
        let env = compute_envelope(b, window);
        let lb = evaluate(bound, a, b, &env, window, f64::INFINITY)?;
        let d = dtw(a, b, window, None)?;
        let lb_root = lb.squared.max(0.0).sqrt();
        let ratio = (d.distance > 0.0).then(|| lb_root / d.distance);
        if let Some(r) = ratio {
            ratios.push(r);
        }
        out.push(PairTightness {
            pair_id,
            lb: lb_root,
            dtw: d.distance,
            ratio,
        });
    }
    if ratios.is_empty() {
        return Err(Error::AllPairsDegenerate);
    }
    Ok(TightnessSummary {
        bound: bound.to_string(),
        w_eff,
        used: ratios.len(),
        mean: ratios.iter().sum::<f64>() / ratios.len() as f64,
        geomean: geomean(&ratios),
        pairs: out,
    })
}

#[derive(Debug, Clone, Copy, Default)]
struct PassTotals {
    dtw_calls: u64,
    lb_calls: u64,
    pruned: u64,
}

fn run_pass(model: &TrainedModel, queries: &[TimeSeries]) -> Result<(PassTotals, u64)> {
    let mut totals = PassTotals::default();
    let start = Instant::now();
    for q in queries {
        let p = classify(model, q)?;
        totals.dtw_calls += p.stats.dtw_calls;
        totals.lb_calls += p.stats.lb_calls;
        totals.pruned += p.stats.pruned;
    }
    Ok((totals, start.elapsed().as_nanos() as u64))
}

/// Classifies every test query `repetitions` times (single-threaded) and
/// reports the counters from the first pass with the median wall-clock time.
/// Model construction stays outside the timed region.
pub fn measure_bound(
    model: &TrainedModel,
    test: &Dataset,
    repetitions: usize,
    dataset_name: &str,
) -> Result<BenchRecord> {
    let reps = repetitions.max(1);
    let mut elapsed = Vec::with_capacity(reps);
    let mut counts = PassTotals::default();
    for rep in 0..reps {
        let (totals, ns) = run_pass(model, &test.series)?;
        if rep == 0 {
            counts = totals;
        }
        elapsed.push(ns);
    }
    elapsed.sort_unstable();
    let median = elapsed[elapsed.len() / 2];
    Ok(BenchRecord {
        dataset: dataset_name.to_string(),
        bound: model.bound().to_string(),
        v: model.bound().enhanced_v(),
        window_spec: model.window().to_string(),
        w_eff: model.w_eff(),
        queries: test.series.len(),
        dtw_calls: counts.dtw_calls,
        lb_calls: counts.lb_calls,
        pruned: counts.pruned,
        elapsed_ns: median,
        tightness_mean: None,
        tightness_geomean: None,
    })
}

/// Pruning power of one band count relative to the envelope-only baseline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VRatio {
    pub v: usize,
    pub dtw_calls: u64,
    /// Baseline wall-clock time divided by this configuration's; above one
    /// means the banded bound finished the query set faster.
    pub speedup_vs_keogh: f64,
}

/// Results of [`sweep_v`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    /// Envelope-only baseline row first, then one row per band count in
    /// input order.
    pub records: Vec<BenchRecord>,
    pub ratios: Vec<VRatio>,
}

/// Sweeps band counts for the banded bound against an envelope-only
/// baseline on the same split, window, and candidate visit order.
pub fn sweep_v(
    train: &Dataset,
    test: &Dataset,
    window: WindowSpec,
    band_counts: &[usize],
    order: CandidateOrder,
    repetitions: usize,
    dtw_abandon: bool,
) -> Result<SweepOutcome> {
    if band_counts.is_empty() || band_counts.contains(&0) {
        return Err(Error::InvalidV);
    }
    let mut model = build_model(
        train.series.clone(),
        window,
        BoundSpec::single(BoundKind::Keogh),
    )?;
    model.set_order(order);
    model.set_dtw_abandon(dtw_abandon);
    let baseline = measure_bound(&model, test, repetitions, &train.name)?;
    let mut records = vec![baseline.clone()];
    let mut ratios = Vec::with_capacity(band_counts.len());
    for &v in band_counts {
        model.set_bound(BoundSpec::single(BoundKind::Enhanced { v }));
        let rec = measure_bound(&model, test, repetitions, &train.name)?;
        ratios.push(VRatio {
            v,
            dtw_calls: rec.dtw_calls,
            speedup_vs_keogh: baseline.elapsed_ns as f64 / rec.elapsed_ns.max(1) as f64,
        });
        records.push(rec);
    }
    Ok(SweepOutcome { records, ratios })
}

/// One bound's row in a comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareEntry {
    pub record: BenchRecord,
    /// 1 = fewest full distance computations; ties keep input order.
    pub rank: usize,
    /// Wall-clock time relative to the five-band entry, when the comparison
    /// includes one.
    pub time_vs_reference: Option<f64>,
}

/// Results of [`compare_bounds`], in the caller's bound order.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareOutcome {
    pub entries: Vec<CompareEntry>,
}

/// Runs each bound over the same split and window, ranking them by the
/// number of full distance computations they let through.
pub fn compare_bounds(
    train: &Dataset,
    test: &Dataset,
    window: WindowSpec,
    bounds: &[BoundSpec],
    order: CandidateOrder,
    repetitions: usize,
    dtw_abandon: bool,
) -> Result<CompareOutcome> {
    if bounds.is_empty() {
        return Err(Error::InvalidBound("no bounds to compare".into()));
    }
    let mut model = build_model(train.series.clone(), window, bounds[0].clone())?;
    model.set_order(order);
    model.set_dtw_abandon(dtw_abandon);
    let mut records = Vec::with_capacity(bounds.len());
    for spec in bounds {
        model.set_bound(spec.clone());
        records.push(measure_bound(&model, test, repetitions, &train.name)?);
    }

    let mut by_calls: Vec<usize> = (0..records.len()).collect();
    by_calls.sort_by_key(|&i| (records[i].dtw_calls, i));
    let mut rank = vec![0usize; records.len()];
    for (r, &i) in by_calls.iter().enumerate() {
        rank[i] = r + 1;
    }

    let reference = bounds
        .iter()
        .position(|b| b.enhanced_v() == Some(5))
        .map(|i| records[i].elapsed_ns);
    let entries = records
        .into_iter()
        .zip(rank)
        .map(|(record, rank)| {
            let time_vs_reference =
                reference.map(|ref_ns| record.elapsed_ns as f64 / ref_ns.max(1) as f64);
            CompareEntry {
                record,
                rank,
                time_vs_reference,
            }
        })
        .collect();
    Ok(CompareOutcome { entries })
}
