//! Lower bounds on windowed DTW, all in the squared domain.
//!
//! Every bound here returns a value that never exceeds the squared DTW cost
//! at the same window. Bounds that accept a cutoff may stop early once their
//! running sum reaches it; partial sums of non-negative terms are themselves
//! valid lower bounds, so an aborted result still never overshoots DTW.

use std::fmt;
use std::str::FromStr;

use crate::dtw::point_cost;
use crate::envelope::{compute_envelope, envelope_oracle, Envelope};
use crate::error::{Error, Result};
use crate::series::{TimeSeries, WindowSpec};

/// Maximum length accepted by [`lb_enhanced_oracle`].
pub const BAND_ORACLE_MAX_LEN: usize = 64;

/// Outcome of a lower-bound evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    /// Squared-domain bound value. When `aborted` is true this is a partial
    /// sum that already reached the cutoff.
    pub squared: f64,
    /// `sqrt(squared)`.
    pub distance: f64,
    /// True when evaluation stopped early against the cutoff.
    pub aborted: bool,
}

impl BoundResult {
    fn exact(squared: f64) -> Self {
        BoundResult {
            squared,
            distance: squared.sqrt(),
            aborted: false,
        }
    }

    fn aborted(squared: f64) -> Self {
        BoundResult {
            squared,
            distance: squared.sqrt(),
            aborted: true,
        }
    }
}

/// One concrete bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// First/last/min/max feature bound; window-independent.
    KimSum,
    /// Global-extremes bound; window-independent.
    Yi,
    /// Envelope bound.
    Keogh,
    /// Envelope bound plus the reverse pass against the projected query.
    Improved,
    /// Exact in-window column minima.
    New,
    /// `v` exact end bands bridged by envelope terms.
    Enhanced { v: usize },
}

/// A bound selection: one bound, or an ordered cascade evaluated
/// cheapest-first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundSpec {
    Single(BoundKind),
    Cascade(Vec<BoundKind>),
}

impl BoundSpec {
    pub fn single(kind: BoundKind) -> Self {
        BoundSpec::Single(kind)
    }

    /// Cascades must contain at least one member.
    pub fn cascade(kinds: Vec<BoundKind>) -> Result<Self> {
        if kinds.is_empty() {
            return Err(Error::InvalidBound("cascade must be nonempty".into()));
        }
        Ok(BoundSpec::Cascade(kinds))
    }

    /// Band count when this is a single enhanced bound.
    pub fn enhanced_v(&self) -> Option<usize> {
        match self {
            BoundSpec::Single(BoundKind::Enhanced { v }) => Some(*v),
            _ => None,
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::KimSum => write!(f, "kim"),
            BoundKind::Yi => write!(f, "yi"),
            BoundKind::Keogh => write!(f, "keogh"),
            BoundKind::Improved => write!(f, "improved"),
            BoundKind::New => write!(f, "new"),
            BoundKind::Enhanced { v } => write!(f, "enhanced:{v}"),
        }
    }
}

impl fmt::Display for BoundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundSpec::Single(k) => k.fmt(f),
            BoundSpec::Cascade(kinds) => {
                write!(f, "cascade:")?;
                for (i, k) in kinds.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    k.fmt(f)?;
                }
                Ok(())
            }
        }
    }
}

/// Accepts `kim | yi | keogh | improved | new | enhanced[:V]`.
/// Bare `enhanced` defaults to five bands.
impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "kim" | "kim_sum" => Ok(BoundKind::KimSum),
            "yi" => Ok(BoundKind::Yi),
            "keogh" => Ok(BoundKind::Keogh),
            "improved" => Ok(BoundKind::Improved),
            "new" => Ok(BoundKind::New),
            "enhanced" => Ok(BoundKind::Enhanced { v: 5 }),
            _ => {
                if let Some(v) = s.strip_prefix("enhanced:") {
                    let v: usize = v
                        .parse()
                        .map_err(|_| Error::InvalidBound(format!("bad band count in {s:?}")))?;
                    if v == 0 {
                        return Err(Error::InvalidV);
                    }
                    Ok(BoundKind::Enhanced { v })
                } else {
                    Err(Error::InvalidBound(format!("unknown bound {s:?}")))
                }
            }
        }
    }
}

/// Accepts a [`BoundKind`] token or `cascade:<kind>,<kind>,...`.
impl FromStr for BoundSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(members) = s.strip_prefix("cascade:") {
            let kinds = members
                .split(',')
                .map(|m| m.parse::<BoundKind>())
                .collect::<Result<Vec<_>>>()?;
            BoundSpec::cascade(kinds)
        } else {
            Ok(BoundSpec::Single(s.parse()?))
        }
    }
}

fn check_pair(a: &TimeSeries, b: &TimeSeries) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

fn check_min_len(a: &TimeSeries, required: usize) -> Result<()> {
    if a.len() < required {
        return Err(Error::SeriesTooShort {
            required,
            got: a.len(),
        });
    }
    Ok(())
}

fn check_envelope(len: usize, env: &Envelope, w_eff: usize) -> Result<()> {
    if env.len() != len {
        return Err(Error::LengthMismatch {
            left: len,
            right: env.len(),
        });
    }
    if env.window() != w_eff {
        return Err(Error::EnvelopeWindowMismatch {
            envelope: env.window(),
            requested: w_eff,
        });
    }
    Ok(())
}

/// Squared distance from a point to an envelope interval; zero inside.
#[inline]
fn envelope_gap(x: f64, upper: f64, lower: f64) -> f64 {
    if x > upper {
        point_cost(x, upper)
    } else if x < lower {
        point_cost(x, lower)
    } else {
        0.0
    }
}

/// Lowest-index argmin and argmax of a slice.
fn extreme_indices(v: &[f64]) -> (usize, usize) {
    let mut min_i = 0;
    let mut max_i = 0;
    for (i, &x) in v.iter().enumerate().skip(1) {
        if x < v[min_i] {
            min_i = i;
        }
        if x > v[max_i] {
            max_i = i;
        }
    }
    (min_i, max_i)
}

/// First/last/min/max feature bound. Features are counted in priority order
/// first, last, min, max; min or max is dropped when its index in either
/// series is already consumed by an earlier feature in that series.
/// Window-independent, so admissible at every window.
pub fn lb_kim_sum(a: &TimeSeries, b: &TimeSeries) -> Result<BoundResult> {
    check_pair(a, b)?;
    check_min_len(a, 2)?;
    let av = a.values();
    let bv = b.values();
    let last = av.len() - 1;

    let mut sum = point_cost(av[0], bv[0]);
    sum += point_cost(av[last], bv[last]);

    let (a_min, a_max) = extreme_indices(av);
    let (b_min, b_max) = extreme_indices(bv);
    let mut used_a = vec![0, last];
    let mut used_b = vec![0, last];

    if !used_a.contains(&a_min) && !used_b.contains(&b_min) {
        sum += point_cost(av[a_min], bv[b_min]);
        used_a.push(a_min);
        used_b.push(b_min);
    }
    if !used_a.contains(&a_max) && !used_b.contains(&b_max) {
        sum += point_cost(av[a_max], bv[b_max]);
    }
    Ok(BoundResult::exact(sum))
}

/// Global-extremes bound: every query point outside the candidate's value
/// range must pay at least the squared gap to the nearer extreme.
/// Window-independent.
pub fn lb_yi(a: &TimeSeries, b: &TimeSeries) -> Result<BoundResult> {
    check_pair(a, b)?;
    let bv = b.values();
    let mut b_min = f64::INFINITY;
    let mut b_max = f64::NEG_INFINITY;
    for &x in bv {
        b_min = b_min.min(x);
        b_max = b_max.max(x);
    }
    let mut sum = 0.0;
    for &x in a.values() {
        sum += envelope_gap(x, b_max, b_min);
    }
    Ok(BoundResult::exact(sum))
}

/// Shared envelope-gap accumulation: ascending positions, abort between
/// terms once the running sum reaches the cutoff.
fn keogh_sum(values: &[f64], env: &Envelope, start: f64, cutoff: f64) -> (f64, bool) {
    let n = values.len();
    let upper = env.upper();
    let lower = env.lower();
    let mut sum = start;
    for i in 0..n {
        sum += envelope_gap(values[i], upper[i], lower[i]);
        if i + 1 < n && sum >= cutoff {
            return (sum, true);
        }
    }
    (sum, false)
}

/// Envelope bound: sum of squared gaps from `a` to the envelope of the
/// candidate. `env_b` must have been built at the same resolved window.
pub fn lb_keogh(a: &TimeSeries, env_b: &Envelope, w: WindowSpec, cutoff: f64) -> Result<BoundResult> {
    let w_eff = w.resolve(a.len());
    check_envelope(a.len(), env_b, w_eff)?;
    let (sum, aborted) = keogh_sum(a.values(), env_b, 0.0, cutoff);
    Ok(if aborted {
        BoundResult::aborted(sum)
    } else {
        BoundResult::exact(sum)
    })
}

/// Two-pass envelope bound: the plain envelope pass, then a second pass of
/// the candidate against the envelope of the query projected onto the
/// candidate's envelope. Returns the one-sided result when the first pass
/// already reaches the cutoff; the projected envelope is only built past
/// that point.
pub fn lb_improved(
    a: &TimeSeries,
    b: &TimeSeries,
    env_b: &Envelope,
    w: WindowSpec,
    cutoff: f64,
) -> Result<BoundResult> {
    check_pair(a, b)?;
    let w_eff = w.resolve(a.len());
    check_envelope(a.len(), env_b, w_eff)?;

    let (first, aborted) = keogh_sum(a.values(), env_b, 0.0, cutoff);
    if aborted || first >= cutoff {
        return Ok(BoundResult::aborted(first));
    }

    let upper = env_b.upper();
    let lower = env_b.lower();
    let projected: Vec<f64> = a
        .values()
        .iter()
        .enumerate()
        .map(|(i, &x)| x.clamp(lower[i], upper[i]))
        .collect();
    let projected = TimeSeries::new(projected)?;
    let env_p = compute_envelope(&projected, w);

    let (total, aborted) = keogh_sum(b.values(), &env_p, first, cutoff);
    Ok(if aborted {
        BoundResult::aborted(total)
    } else {
        BoundResult::exact(total)
    })
}

/// Exact column-minimum bound: boundary cells pay their own cost, every
/// interior query point pays the cheapest squared gap to any candidate point
/// inside its window. Columns are scanned directly.
pub fn lb_new(a: &TimeSeries, b: &TimeSeries, w: WindowSpec, cutoff: f64) -> Result<BoundResult> {
    check_pair(a, b)?;
    check_min_len(a, 2)?;
    let n = a.len();
    let w_eff = w.resolve(n);
    let av = a.values();
    let bv = b.values();

    let mut sum = point_cost(av[0], bv[0]);
    if sum >= cutoff {
        return Ok(BoundResult::aborted(sum));
    }
    for (i, &ai) in av.iter().enumerate().take(n - 1).skip(1) {
        let lo = i.saturating_sub(w_eff);
        let hi = (i + w_eff).min(n - 1);
        let mut m = f64::INFINITY;
        for &y in &bv[lo..=hi] {
            let c = point_cost(ai, y);
            if c < m {
                m = c;
            }
        }
        sum += m;
        if sum >= cutoff {
            return Ok(BoundResult::aborted(sum));
        }
    }
    sum += point_cost(av[n - 1], bv[n - 1]);
    Ok(BoundResult::exact(sum))
}

fn band_left_unchecked(av: &[f64], bv: &[f64], i: usize, w_eff: usize) -> f64 {
    let lo = i.saturating_sub(w_eff);
    let mut m = point_cost(av[i], bv[i]);
    for k in lo..i {
        m = m.min(point_cost(av[k], bv[i]));
        m = m.min(point_cost(av[i], bv[k]));
    }
    m
}

fn band_right_unchecked(av: &[f64], bv: &[f64], i: usize, w_eff: usize) -> f64 {
    let hi = (i + w_eff).min(av.len() - 1);
    let mut m = point_cost(av[i], bv[i]);
    for k in i + 1..=hi {
        m = m.min(point_cost(av[k], bv[i]));
        m = m.min(point_cost(av[i], bv[k]));
    }
    m
}

/// Minimum squared cost over the left-pointing band at position `i`
/// (0-based): cell `(i, i)` plus cells `(k, i)` and `(i, k)` for
/// `k` in `[i - w_eff, i - 1]`.
pub fn band_min_left(a: &TimeSeries, b: &TimeSeries, i: usize, w: WindowSpec) -> Result<f64> {
    check_pair(a, b)?;
    if i >= a.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: a.len(),
        });
    }
    Ok(band_left_unchecked(
        a.values(),
        b.values(),
        i,
        w.resolve(a.len()),
    ))
}

/// Mirror of [`band_min_left`]: cell `(i, i)` plus cells `(k, i)` and
/// `(i, k)` for `k` in `[i + 1, i + w_eff]`.
pub fn band_min_right(a: &TimeSeries, b: &TimeSeries, i: usize, w: WindowSpec) -> Result<f64> {
    check_pair(a, b)?;
    if i >= a.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: a.len(),
        });
    }
    Ok(band_right_unchecked(
        a.values(),
        b.values(),
        i,
        w.resolve(a.len()),
    ))
}

/// Banded envelope bound: the outermost `min(len/2, v)` positions at each
/// end pay the exact minimum over their warping band, interior positions pay
/// the envelope gap. The cutoff is checked once against the band total
/// before the bridge is summed.
///
/// The final value folds column by column from position 0 upward, the same
/// accumulation as [`lb_keogh`]; with one band per end the per-column terms
/// dominate Keogh's, so the whole bound does too, including in floating
/// point.
pub fn lb_enhanced(
    a: &TimeSeries,
    b: &TimeSeries,
    env_b: &Envelope,
    w: WindowSpec,
    v: usize,
    cutoff: f64,
) -> Result<BoundResult> {
    check_pair(a, b)?;
    check_min_len(a, 2)?;
    if v == 0 {
        return Err(Error::InvalidV);
    }
    let n = a.len();
    let w_eff = w.resolve(n);
    check_envelope(n, env_b, w_eff)?;
    let av = a.values();
    let bv = b.values();
    let n_bands = (n / 2).min(v);

    let mut s_left = 0.0;
    for p in 0..n_bands {
        s_left += band_left_unchecked(av, bv, p, w_eff);
    }
    let mut right = Vec::with_capacity(n_bands);
    for p in 0..n_bands {
        right.push(band_right_unchecked(av, bv, n - 1 - p, w_eff));
    }

    let mut band_total = s_left;
    for p in (0..n_bands).rev() {
        band_total += right[p];
    }
    if band_total >= cutoff {
        return Ok(BoundResult::aborted(band_total));
    }

    let upper = env_b.upper();
    let lower = env_b.lower();
    let mut total = s_left;
    for i in n_bands..n - n_bands {
        total += envelope_gap(av[i], upper[i], lower[i]);
    }
    for p in (0..n_bands).rev() {
        total += right[p];
    }
    Ok(BoundResult::exact(total))
}

fn left_band_cells(i: usize, w_eff: usize) -> Vec<(usize, usize)> {
    let lo = i.saturating_sub(w_eff);
    let mut cells = Vec::new();
    for j in lo..=i {
        cells.push((j, i));
    }
    for k in lo..i {
        cells.push((i, k));
    }
    cells
}

fn right_band_cells(i: usize, n: usize, w_eff: usize) -> Vec<(usize, usize)> {
    let hi = (i + w_eff).min(n - 1);
    let mut cells = Vec::new();
    for j in i..=hi {
        cells.push((j, i));
    }
    for k in i + 1..=hi {
        cells.push((i, k));
    }
    cells
}

/// Reference for [`lb_enhanced`] at infinite cutoff: materializes each band's
/// cell set, takes per-band minima, and bridges with envelope gaps from
/// [`envelope_oracle`], folding column by column. Limited to
/// [`BAND_ORACLE_MAX_LEN`].
pub fn lb_enhanced_oracle(a: &TimeSeries, b: &TimeSeries, w: WindowSpec, v: usize) -> Result<f64> {
    check_pair(a, b)?;
    check_min_len(a, 2)?;
    if v == 0 {
        return Err(Error::InvalidV);
    }
    let n = a.len();
    if n > BAND_ORACLE_MAX_LEN {
        return Err(Error::TooLong {
            len: n,
            max: BAND_ORACLE_MAX_LEN,
        });
    }
    let w_eff = w.resolve(n);
    let env = envelope_oracle(b, w);
    let av = a.values();
    let bv = b.values();
    let n_bands = (n / 2).min(v);

    let min_over = |cells: Vec<(usize, usize)>| {
        cells
            .into_iter()
            .map(|(r, c)| point_cost(av[r], bv[c]))
            .fold(f64::INFINITY, f64::min)
    };

    let mut total = 0.0;
    for (i, &ai) in av.iter().enumerate() {
        let term = if i < n_bands {
            min_over(left_band_cells(i, w_eff))
        } else if i >= n - n_bands {
            min_over(right_band_cells(i, n, w_eff))
        } else {
            envelope_gap(ai, env.upper()[i], env.lower()[i])
        };
        total += term;
    }
    Ok(total)
}

/// Evaluates one bound kind in the `a` vs `b` direction.
fn eval_kind(
    kind: BoundKind,
    a: &TimeSeries,
    b: &TimeSeries,
    env_b: &Envelope,
    w: WindowSpec,
    cutoff: f64,
) -> Result<BoundResult> {
    match kind {
        BoundKind::KimSum => lb_kim_sum(a, b),
        BoundKind::Yi => lb_yi(a, b),
        BoundKind::Keogh => lb_keogh(a, env_b, w, cutoff),
        BoundKind::Improved => lb_improved(a, b, env_b, w, cutoff),
        BoundKind::New => lb_new(a, b, w, cutoff),
        BoundKind::Enhanced { v } => lb_enhanced(a, b, env_b, w, v, cutoff),
    }
}

/// Evaluates bounds in the given order, returning as soon as any result
/// reaches the cutoff; otherwise returns the maximum value observed.
pub fn cascade_eval(
    kinds: &[BoundKind],
    a: &TimeSeries,
    b: &TimeSeries,
    env_b: &Envelope,
    w: WindowSpec,
    cutoff: f64,
) -> Result<BoundResult> {
    if kinds.is_empty() {
        return Err(Error::InvalidBound("cascade must be nonempty".into()));
    }
    let mut best = 0.0_f64;
    for &kind in kinds {
        let r = eval_kind(kind, a, b, env_b, w, cutoff)?;
        if r.aborted || r.squared >= cutoff {
            return Ok(BoundResult::aborted(r.squared));
        }
        best = best.max(r.squared);
    }
    Ok(BoundResult::exact(best))
}

/// Evaluates any [`BoundSpec`] in the `a` vs `b` direction.
pub fn evaluate(
    spec: &BoundSpec,
    a: &TimeSeries,
    b: &TimeSeries,
    env_b: &Envelope,
    w: WindowSpec,
    cutoff: f64,
) -> Result<BoundResult> {
    match spec {
        BoundSpec::Single(kind) => eval_kind(*kind, a, b, env_b, w, cutoff),
        BoundSpec::Cascade(kinds) => cascade_eval(kinds, a, b, env_b, w, cutoff),
    }
}

/// Larger of the bound evaluated in both directions. Needs both envelopes;
/// still admissible because DTW is symmetric.
pub fn lb_symmetric_max(
    spec: &BoundSpec,
    a: &TimeSeries,
    b: &TimeSeries,
    env_a: &Envelope,
    env_b: &Envelope,
    w: WindowSpec,
    cutoff: f64,
) -> Result<BoundResult> {
    let forward = evaluate(spec, a, b, env_b, w, cutoff)?;
    if forward.aborted {
        return Ok(forward);
    }
    let backward = evaluate(spec, b, a, env_a, w, cutoff)?;
    if backward.aborted {
        return Ok(backward);
    }
    Ok(BoundResult::exact(forward.squared.max(backward.squared)))
}
