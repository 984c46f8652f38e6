use crate::scalar::{fmt_rational, parse_rational, serde_rational};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(ConfigError::Format(s.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("lmax must be at least 2, got {0}")]
    Lmax(u32),
    #[error("tolerance must be positive and finite, got {0}")]
    Tolerance(f64),
    #[error("casimir floor must be positive and finite, got {0}")]
    Floor(f64),
    #[error("jobs must be at least 1")]
    Jobs,
    #[error("unknown format `{0}` (expected text, json or csv)")]
    Format(String),
    #[error("bad range `{0}`: expected START:STOP:STEP with exact numbers")]
    RangeSyntax(String),
    #[error("range `{0}` is empty or has a non-positive step")]
    RangeEmpty(String),
    #[error("range `{0}` has more than {1} points")]
    RangeTooLarge(String, usize),
}

/// A closed grid `start, start + step, …, ≤ stop` of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Range {
    #[serde(with = "serde_rational")]
    pub start: BigRational,
    #[serde(with = "serde_rational")]
    pub stop: BigRational,
    #[serde(with = "serde_rational")]
    pub step: BigRational,
}

/// Upper bound on the points of one range axis.
pub const MAX_RANGE_POINTS: usize = 100_000;

impl Range {
    pub fn new(start: BigRational, stop: BigRational, step: BigRational) -> Result<Self, ConfigError> {
        let r = Range { start, stop, step };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !self.step.is_positive() || self.stop < self.start {
            return Err(ConfigError::RangeEmpty(self.to_string()));
        }
        if self.len_unchecked() > MAX_RANGE_POINTS {
            return Err(ConfigError::RangeTooLarge(self.to_string(), MAX_RANGE_POINTS));
        }
        Ok(())
    }

    fn len_unchecked(&self) -> usize {
        ((&self.stop - &self.start) / &self.step)
            .floor()
            .to_integer()
            .to_usize()
            .map_or(usize::MAX, |n| n.saturating_add(1))
    }

    pub fn len(&self) -> usize {
        self.len_unchecked()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<BigRational> {
        (0..self.len())
            .map(|k| &self.start + &self.step * BigRational::from_integer(k.into()))
            .collect()
    }

    /// A single-point range.
    pub fn point(x: BigRational) -> Self {
        Range {
            start: x.clone(),
            stop: x,
            step: BigRational::from_integer(1.into()),
        }
    }
}

impl FromStr for Range {
    type Err = ConfigError;

    /// `START:STOP:STEP` or a single value.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| parse_rational(t).ok_or_else(|| ConfigError::RangeSyntax(s.to_string()));
        match parts.as_slice() {
            [x] => Ok(Range::point(num(x)?)),
            [a, b, c] => {
                let step = num(c)?;
                if step.is_zero() {
                    return Err(ConfigError::RangeEmpty(s.to_string()));
                }
                Range::new(num(a)?, num(b)?, step)
            }
            _ => Err(ConfigError::RangeSyntax(s.to_string())),
        }
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", fmt_rational(&self.start), fmt_rational(&self.stop), fmt_rational(&self.step))
    }
}

/// Settings shared by every command; echoed into reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub lmax: u32,
    pub tolerance: f64,
    pub casimir_floor: f64,
    pub format: Format,
    pub seed: u64,
    pub jobs: usize,
    pub reproducible: bool,
    /// Explicit parameter values, as given.
    pub params: Vec<(String, String)>,
    pub a_range: Option<Range>,
    pub b_range: Option<Range>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: String::new(),
            lmax: crate::sphere::DEFAULT_LMAX,
            tolerance: crate::sphere::DEFAULT_TOLERANCE,
            casimir_floor: 1e-6,
            format: Format::Text,
            seed: 17,
            jobs: 1,
            reproducible: false,
            params: Vec::new(),
            a_range: None,
            b_range: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.lmax < 2 {
            return Err(ConfigError::Lmax(self.lmax));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(ConfigError::Tolerance(self.tolerance));
        }
        if !(self.casimir_floor > 0.0 && self.casimir_floor.is_finite()) {
            return Err(ConfigError::Floor(self.casimir_floor));
        }
        if self.jobs == 0 {
            return Err(ConfigError::Jobs);
        }
        for r in self.a_range.iter().chain(&self.b_range) {
            r.validate()?;
        }
        Ok(())
    }
}
