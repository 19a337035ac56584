//! Series and warping-window types used by every distance routine.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A univariate time series: one or more finite `f64` samples plus an
/// optional class label and an optional source row id.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    label: Option<String>,
    id: Option<usize>,
}

impl TimeSeries {
    /// Builds an unlabeled series. Rejects empty input and non-finite values.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(position) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { position });
        }
        Ok(Self {
            values,
            label: None,
            id: None,
        })
    }

    /// Builds a labeled series. Labels are opaque tokens; no numeric parsing.
    pub fn with_label(values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        let mut s = Self::new(values)?;
        s.label = Some(label.into());
        Ok(s)
    }

    pub fn set_id(&mut self, id: usize) {
        self.id = Some(id);
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = Some(label.into());
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: construction rejects empty value vectors.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn id(&self) -> Option<usize> {
        self.id
    }

    /// Returns a copy normalized to zero mean and unit variance.
    /// A constant series normalizes to all zeros.
    pub fn znormalized(&self) -> Self {
        let n = self.values.len() as f64;
        let mean = self.values.iter().sum::<f64>() / n;
        let var = self.values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        let std = var.sqrt();
        let values = if std > 0.0 {
            self.values.iter().map(|v| (v - mean) / std).collect()
        } else {
            vec![0.0; self.values.len()]
        };
        Self {
            values,
            label: self.label.clone(),
            id: self.id,
        }
    }
}

/// Warping-window width, either as an absolute band half-width or as a
/// fraction of the series length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowSpec {
    /// Band half-width in samples; clamped to `len - 1` on resolve.
    Absolute(usize),
    /// Fraction of the series length in `[0, 1]`; resolves to
    /// `min(len - 1, ceil(f * len))`.
    Fractional(f64),
}

impl WindowSpec {
    pub fn absolute(w: usize) -> Self {
        WindowSpec::Absolute(w)
    }

    /// Validates that the fraction lies in `[0, 1]`.
    pub fn fractional(f: f64) -> Result<Self> {
        if !f.is_finite() || !(0.0..=1.0).contains(&f) {
            return Err(Error::InvalidWindow(format!(
                "fraction {f} is outside [0, 1]"
            )));
        }
        Ok(WindowSpec::Fractional(f))
    }

    /// Unconstrained window: every alignment allowed at any length.
    pub fn full() -> Self {
        WindowSpec::Fractional(1.0)
    }

    /// Effective band half-width for series of length `len`.
    /// Always lies in `[0, len - 1]`.
    pub fn resolve(&self, len: usize) -> usize {
        let cap = len.saturating_sub(1);
        match *self {
            WindowSpec::Absolute(w) => w.min(cap),
            WindowSpec::Fractional(f) => ((f * len as f64).ceil() as usize).min(cap),
        }
    }
}

/// Prints in the form the CLI accepts: absolute widths as integers,
/// fractions with a decimal point (`1.0` stays fractional on re-parse).
impl fmt::Display for WindowSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowSpec::Absolute(w) => write!(f, "{w}"),
            WindowSpec::Fractional(frac) => write!(f, "{frac:?}"),
        }
    }
}

/// `"5"` parses as an absolute width, `"0.1"` (any decimal point) as a
/// fraction. `"1"` is absolute; `"1.0"` is the full window.
impl FromStr for WindowSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidWindow("empty window".into()));
        }
        if s.contains('.') {
            let f: f64 = s
                .parse()
                .map_err(|_| Error::InvalidWindow(format!("cannot parse fraction {s:?}")))?;
            WindowSpec::fractional(f)
        } else {
            let w: usize = s
                .parse()
                .map_err(|_| Error::InvalidWindow(format!("cannot parse width {s:?}")))?;
            Ok(WindowSpec::Absolute(w))
        }
    }
}
