//! Windowed dynamic time warping in the squared domain.
//!
//! All accumulation and pruning happens on squared point costs; the square
//! root is taken once when a result is reported.

use crate::error::{Error, Result};
use crate::series::{TimeSeries, WindowSpec};

/// Maximum length accepted by [`dtw_oracle`].
pub const ORACLE_MAX_LEN: usize = 12;

/// Outcome of a DTW evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DtwResult {
    /// Accumulated squared cost. When `abandoned` is true this is a lower
    /// bound on the true squared cost and is `>= cutoff`.
    pub squared: f64,
    /// `sqrt(squared)`.
    pub distance: f64,
    /// True when the computation stopped early against a cutoff.
    pub abandoned: bool,
}

impl DtwResult {
    fn exact(squared: f64) -> Self {
        DtwResult {
            squared,
            distance: squared.sqrt(),
            abandoned: false,
        }
    }

    fn abandoned(squared: f64) -> Self {
        DtwResult {
            squared,
            distance: squared.sqrt(),
            abandoned: true,
        }
    }
}

/// Squared pointwise cost.
#[inline]
pub fn point_cost(a: f64, b: f64) -> f64 {
    let d = a - b;
    d * d
}

fn check_lengths(a: &TimeSeries, b: &TimeSeries) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Sum of squared pointwise costs. With a cutoff, returns the running sum as
/// soon as it reaches the cutoff; the returned value is then `>= cutoff`.
pub fn squared_euclidean(a: &TimeSeries, b: &TimeSeries, cutoff: Option<f64>) -> Result<f64> {
    check_lengths(a, b)?;
    let cut = cutoff.unwrap_or(f64::INFINITY);
    let mut sum = 0.0;
    for (&x, &y) in a.values().iter().zip(b.values()) {
        sum += point_cost(x, y);
        if sum >= cut {
            return Ok(sum);
        }
    }
    Ok(sum)
}

/// Windowed DTW between equal-length series.
///
/// Runs the standard recurrence over the band `|i - j| <= w_eff` with two
/// rolling rows: `O(w_eff * len)` time, `O(len)` space, no path
/// reconstruction. With a cutoff, the computation abandons once the minimum
/// of a finished row reaches the cutoff. Every warping path crosses every
/// row, so the row minimum never exceeds the final cost and abandoning is
/// sound; the reported value is then `>= cutoff`.
pub fn dtw(a: &TimeSeries, b: &TimeSeries, w: WindowSpec, cutoff: Option<f64>) -> Result<DtwResult> {
    check_lengths(a, b)?;
    let n = a.len();
    let w_eff = w.resolve(n);
    let cut = cutoff.unwrap_or(f64::INFINITY);
    let av = a.values();
    let bv = b.values();

    let mut prev = vec![f64::INFINITY; n];
    let mut curr = vec![f64::INFINITY; n];

    // Row 0: only a left neighbor inside the band.
    let hi0 = w_eff.min(n - 1);
    curr[0] = point_cost(av[0], bv[0]);
    let mut row_min = curr[0];
    for j in 1..=hi0 {
        curr[j] = curr[j - 1] + point_cost(av[0], bv[j]);
        row_min = row_min.min(curr[j]);
    }
    if n == 1 {
        return Ok(DtwResult::exact(curr[0]));
    }
    if row_min >= cut {
        return Ok(DtwResult::abandoned(row_min));
    }
    std::mem::swap(&mut prev, &mut curr);

    for (i, &ai) in av.iter().enumerate().skip(1) {
        let lo = i.saturating_sub(w_eff);
        let hi = (i + w_eff).min(n - 1);
        let prev_hi = (i - 1) + w_eff;
        row_min = f64::INFINITY;
        for j in lo..=hi {
            let mut best = f64::INFINITY;
            if j > lo {
                best = curr[j - 1]; // left, same row
            }
            if j <= prev_hi {
                best = best.min(prev[j]); // up
            }
            if j > 0 {
                best = best.min(prev[j - 1]); // diagonal
            }
            let cost = point_cost(ai, bv[j]) + best;
            curr[j] = cost;
            if cost < row_min {
                row_min = cost;
            }
        }
        if i < n - 1 && row_min >= cut {
            return Ok(DtwResult::abandoned(row_min));
        }
        std::mem::swap(&mut prev, &mut curr);
    }

    Ok(DtwResult::exact(prev[n - 1]))
}

/// Reference DTW that explicitly walks every monotone warping path inside
/// the band, keeping the cheapest complete path. Exponential; limited to
/// [`ORACLE_MAX_LEN`]. Partial paths that already cost at least the best
/// complete path are cut, which cannot change the minimum because point
/// costs are non-negative.
pub fn dtw_oracle(a: &TimeSeries, b: &TimeSeries, w: WindowSpec) -> Result<DtwResult> {
    check_lengths(a, b)?;
    let n = a.len();
    if n > ORACLE_MAX_LEN {
        return Err(Error::TooLong {
            len: n,
            max: ORACLE_MAX_LEN,
        });
    }
    let w_eff = w.resolve(n);
    let mut best = f64::INFINITY;
    walk(a.values(), b.values(), w_eff, 0, 0, 0.0, &mut best);
    Ok(DtwResult::exact(best))
}

fn walk(av: &[f64], bv: &[f64], w: usize, i: usize, j: usize, acc: f64, best: &mut f64) {
    let n = av.len();
    let acc = acc + point_cost(av[i], bv[j]);
    if acc >= *best {
        return;
    }
    if i == n - 1 && j == n - 1 {
        *best = acc;
        return;
    }
    let in_band = |i: usize, j: usize| i.abs_diff(j) <= w;
    if i + 1 < n && j + 1 < n {
        walk(av, bv, w, i + 1, j + 1, acc, best);
    }
    if i + 1 < n && in_band(i + 1, j) {
        walk(av, bv, w, i + 1, j, acc, best);
    }
    if j + 1 < n && in_band(i, j + 1) {
        walk(av, bv, w, i, j + 1, acc, best);
    }
}
