//! Nearest-neighbor classification with lower-bound pruning.
//!
//! The best-so-far cost is tracked in the squared domain and only replaced
//! on strict improvement, so the earliest candidate in visiting order wins
//! ties.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{evaluate, BoundSpec};
use crate::dtw::{dtw, squared_euclidean};
use crate::envelope::{compute_envelope, Envelope};
use crate::error::{Error, Result};
use crate::series::{TimeSeries, WindowSpec};

/// Order in which candidates are visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateOrder {
    /// Ascending squared Euclidean distance to the query, ties by index.
    Euclidean,
    /// A seeded shuffle of the training indices, fixed at query time.
    Random(u64),
}

/// A training set prepared for repeated queries: candidate envelopes are
/// built once, at the model's window.
#[derive(Debug, Clone)]
pub struct TrainedModel {
    train: Vec<TimeSeries>,
    envelopes: Vec<Envelope>,
    window: WindowSpec,
    w_eff: usize,
    length: usize,
    bound: BoundSpec,
    order: CandidateOrder,
    dtw_abandon: bool,
}

/// Per-query work counters. `dtw_calls + pruned` always equals the number
/// of candidates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub dtw_calls: u64,
    pub lb_calls: u64,
    pub pruned: u64,
    pub elapsed: Duration,
}

/// Classification outcome for one query.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub label: String,
    /// Index of the nearest neighbor in the training set.
    pub nn_index: usize,
    /// Root-domain DTW distance to that neighbor.
    pub nn_distance: f64,
    pub stats: QueryStats,
}

/// Validates the training set (nonempty, labeled, equal lengths) and
/// precomputes candidate envelopes at the given window.
pub fn build_model(train: Vec<TimeSeries>, w: WindowSpec, bound: BoundSpec) -> Result<TrainedModel> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let length = train[0].len();
    for (index, s) in train.iter().enumerate() {
        if s.len() != length {
            return Err(Error::LengthMismatch {
                left: length,
                right: s.len(),
            });
        }
        if s.label().is_none() {
            return Err(Error::MissingLabel { index });
        }
    }
    let envelopes = train.iter().map(|s| compute_envelope(s, w)).collect();
    Ok(TrainedModel {
        envelopes,
        window: w,
        w_eff: w.resolve(length),
        length,
        bound,
        order: CandidateOrder::Euclidean,
        dtw_abandon: true,
        train,
    })
}

impl TrainedModel {
    pub fn train(&self) -> &[TimeSeries] {
        &self.train
    }

    pub fn window(&self) -> WindowSpec {
        self.window
    }

    pub fn w_eff(&self) -> usize {
        self.w_eff
    }

    pub fn series_length(&self) -> usize {
        self.length
    }

    pub fn bound(&self) -> &BoundSpec {
        &self.bound
    }

    pub fn set_bound(&mut self, bound: BoundSpec) {
        self.bound = bound;
    }

    pub fn set_order(&mut self, order: CandidateOrder) {
        self.order = order;
    }

    /// Toggles early abandoning inside the full DTW evaluations.
    pub fn set_dtw_abandon(&mut self, on: bool) {
        self.dtw_abandon = on;
    }

    fn check_query(&self, query: &TimeSeries) -> Result<()> {
        if query.len() != self.length {
            return Err(Error::LengthMismatch {
                left: query.len(),
                right: self.length,
            });
        }
        Ok(())
    }

    fn visit_order(&self, query: &TimeSeries) -> Result<Vec<usize>> {
        match self.order {
            CandidateOrder::Euclidean => order_candidates(self, query),
            CandidateOrder::Random(seed) => {
                let mut order: Vec<usize> = (0..self.train.len()).collect();
                order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                Ok(order)
            }
        }
    }
}

/// Training indices sorted by ascending squared Euclidean distance to the
/// query; exact ties keep the lower index first.
pub fn order_candidates(model: &TrainedModel, query: &TimeSeries) -> Result<Vec<usize>> {
    model.check_query(query)?;
    let mut dist = Vec::with_capacity(model.train.len());
    for s in &model.train {
        dist.push(squared_euclidean(query, s, None)?);
    }
    let mut order: Vec<usize> = (0..model.train.len()).collect();
    order.sort_by(|&i, &j| dist[i].total_cmp(&dist[j]).then(i.cmp(&j)));
    Ok(order)
}

/// 1-NN classification with lower-bound pruning. Every candidate is either
/// pruned by the bound or evaluated with full DTW under the best-so-far
/// cutoff; admissible bounds make this return exactly the exhaustive result.
pub fn classify(model: &TrainedModel, query: &TimeSeries) -> Result<Prediction> {
    let start = Instant::now();
    model.check_query(query)?;
    let order = model.visit_order(query)?;

    let mut best_sq = f64::INFINITY;
    let mut best_idx = usize::MAX;
    let mut stats = QueryStats::default();

    for &ci in &order {
        let cand = &model.train[ci];
        let lb = evaluate(
            &model.bound,
            query,
            cand,
            &model.envelopes[ci],
            model.window,
            best_sq,
        )?;
        stats.lb_calls += 1;
        if lb.squared >= best_sq {
            stats.pruned += 1;
            continue;
        }
        let cutoff = if model.dtw_abandon { Some(best_sq) } else { None };
        let d = dtw(query, cand, model.window, cutoff)?;
        stats.dtw_calls += 1;
        if !d.abandoned && d.squared < best_sq {
            best_sq = d.squared;
            best_idx = ci;
        }
    }

    stats.elapsed = start.elapsed();
    Ok(Prediction {
        label: model.train[best_idx]
            .label()
            .expect("training labels are checked at build time")
            .to_string(),
        nn_index: best_idx,
        nn_distance: best_sq.sqrt(),
        stats,
    })
}

/// Reference classifier: same visiting order and tie-break, but every
/// candidate gets a full DTW evaluation with no bounds and no abandoning.
pub fn classify_exhaustive(model: &TrainedModel, query: &TimeSeries) -> Result<Prediction> {
    let start = Instant::now();
    model.check_query(query)?;
    let order = model.visit_order(query)?;

    let mut best_sq = f64::INFINITY;
    let mut best_idx = usize::MAX;
    let mut stats = QueryStats::default();

    for &ci in &order {
        let d = dtw(query, &model.train[ci], model.window, None)?;
        stats.dtw_calls += 1;
        if d.squared < best_sq {
            best_sq = d.squared;
            best_idx = ci;
        }
    }

    stats.elapsed = start.elapsed();
    Ok(Prediction {
        label: model.train[best_idx]
            .label()
            .expect("training labels are checked at build time")
            .to_string(),
        nn_index: best_idx,
        nn_distance: best_sq.sqrt(),
        stats,
    })
}
