//! Windowed dynamic time warping with cascading lower bounds and a pruning
//! nearest-neighbor classifier.
//!
//! Distances accumulate squared pointwise differences inside a warping band;
//! the square root is taken once at reporting time. Every lower bound here is
//! admissible against that squared cost, so a bound value at or above the
//! best-so-far cutoff discards a candidate without running the full
//! recurrence. The [`bench`] module measures how much pruning each bound
//! buys on a given dataset.

pub mod bench;
pub mod bounds;
pub mod data;
pub mod dtw;
pub mod envelope;
pub mod error;
pub mod search;
pub mod series;

pub use bench::{
    compare_bounds, geomean, measure_bound, measure_tightness, sweep_v, BenchRecord,
    CompareEntry, CompareOutcome, PairTightness, SweepOutcome, TightnessSummary, VRatio,
};
pub use bounds::{
    band_min_left, band_min_right, cascade_eval, evaluate, lb_enhanced, lb_enhanced_oracle,
    lb_improved, lb_keogh, lb_kim_sum, lb_new, lb_symmetric_max, lb_yi, BoundKind, BoundResult,
    BoundSpec, BAND_ORACLE_MAX_LEN,
};
pub use data::{
    generate, load_ucr, read_results, write_pair_ratios, write_predictions, write_results,
    Dataset, Generator, PairRatioRecord, PredictionRecord, SyntheticSpec,
};
pub use dtw::{dtw, dtw_oracle, point_cost, squared_euclidean, DtwResult, ORACLE_MAX_LEN};
pub use envelope::{compute_envelope, envelope_oracle, Envelope};
pub use error::{Error, Result};
pub use search::{
    build_model, classify, classify_exhaustive, order_candidates, CandidateOrder, Prediction,
    QueryStats, TrainedModel,
};
pub use series::{TimeSeries, WindowSpec};
