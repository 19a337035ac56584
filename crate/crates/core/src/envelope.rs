//! Running min/max envelopes over a warping window.

use std::collections::VecDeque;

use crate::series::{TimeSeries, WindowSpec};

/// Upper and lower envelope of a series at a resolved window width.
/// `upper[i]` / `lower[i]` are the max / min of the series over indices
/// `[i - w_eff, i + w_eff]` clamped to the series bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    upper: Vec<f64>,
    lower: Vec<f64>,
    window: usize,
}

impl Envelope {
    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    /// Resolved window width this envelope was built for.
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }
}

/// Builds the envelope in `O(len)` with two monotonic index deques: the
/// front of each deque always holds the extreme of the current window.
pub fn compute_envelope(series: &TimeSeries, w: WindowSpec) -> Envelope {
    let v = series.values();
    let n = v.len();
    let w_eff = w.resolve(n);
    let mut upper = vec![0.0; n];
    let mut lower = vec![0.0; n];
    let mut max_q: VecDeque<usize> = VecDeque::new();
    let mut min_q: VecDeque<usize> = VecDeque::new();
    let mut next = 0usize;

    for i in 0..n {
        let hi = (i + w_eff).min(n - 1);
        while next <= hi {
            while max_q.back().is_some_and(|&k| v[k] <= v[next]) {
                max_q.pop_back();
            }
            max_q.push_back(next);
            while min_q.back().is_some_and(|&k| v[k] >= v[next]) {
                min_q.pop_back();
            }
            min_q.push_back(next);
            next += 1;
        }
        let lo = i.saturating_sub(w_eff);
        while max_q.front().is_some_and(|&k| k < lo) {
            max_q.pop_front();
        }
        while min_q.front().is_some_and(|&k| k < lo) {
            min_q.pop_front();
        }
        upper[i] = v[max_q[0]];
        lower[i] = v[min_q[0]];
    }

    Envelope {
        upper,
        lower,
        window: w_eff,
    }
}

/// Reference envelope: scans the whole window for every position,
/// `O(len * w_eff)`.
pub fn envelope_oracle(series: &TimeSeries, w: WindowSpec) -> Envelope {
    let v = series.values();
    let n = v.len();
    let w_eff = w.resolve(n);
    let mut upper = Vec::with_capacity(n);
    let mut lower = Vec::with_capacity(n);
    for i in 0..n {
        let lo = i.saturating_sub(w_eff);
        let hi = (i + w_eff).min(n - 1);
        let mut hi_v = f64::NEG_INFINITY;
        let mut lo_v = f64::INFINITY;
        for &x in &v[lo..=hi] {
            hi_v = hi_v.max(x);
            lo_v = lo_v.min(x);
        }
        upper.push(hi_v);
        lower.push(lo_v);
    }
    Envelope {
        upper,
        lower,
        window: w_eff,
    }
}
