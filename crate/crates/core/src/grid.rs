//! Inclusive linear grids (`start:stop:count`).

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct GridError(String);

impl Grid {
    /// `count == 1` requires `start == stop`; otherwise `count >= 2` and
    /// `start < stop`.
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self, GridError> {
        if !start.is_finite() || !stop.is_finite() {
            return Err(GridError("grid endpoints must be finite".into()));
        }
        match count {
            0 => Err(GridError("grid count must be at least 1".into())),
            1 if start != stop => Err(GridError("a single-point grid needs start == stop".into())),
            1 => Ok(Self { start, stop, count }),
            _ if start >= stop => Err(GridError(format!(
                "grid start {start} must be below stop {stop}"
            ))),
            _ => Ok(Self { start, stop, count }),
        }
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, GridError> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(GridError(format!("expected start:stop:count, got `{s}`")));
        };
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| GridError(format!("`{x}` is not a number")))
        };
        let count = n
            .trim()
            .parse::<usize>()
            .map_err(|_| GridError(format!("`{n}` is not a count")))?;
        Self::new(num(a)?, num(b)?, count)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.count)
    }
}
