use std::fmt;

use crate::error::{Error, Result};

/// Parameter grid for the verification suites.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub p_values: Vec<f64>,
    pub q_values: Vec<f64>,
    pub r_values: Vec<f64>,
    /// Symmetric parameter steps for Turán ratios and difference quotients.
    pub deltas: Vec<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        let pq = vec![1.25, 1.5, 2.0, 2.25, 3.0, 4.0];
        GridSpec {
            p_values: pq.clone(),
            q_values: pq,
            r_values: (1..=9).map(|i| i as f64 / 10.0).collect(),
            deltas: vec![0.25, 0.5],
        }
    }
}

fn ascending(name: &str, xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::domain("GridSpec", format!("{name} is empty")));
    }
    if xs.windows(2).any(|w| !(w[0] < w[1])) || xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::domain("GridSpec", format!("{name} must be finite and strictly ascending")));
    }
    Ok(())
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        ascending("p_values", &self.p_values)?;
        ascending("q_values", &self.q_values)?;
        ascending("r_values", &self.r_values)?;
        ascending("deltas", &self.deltas)?;
        if self.p_values[0] <= 1.0 || self.q_values[0] <= 1.0 {
            return Err(Error::domain("GridSpec", "p and q values must exceed 1"));
        }
        if self.r_values[0] <= 0.0 || *self.r_values.last().unwrap() >= 1.0 {
            return Err(Error::domain("GridSpec", "r values must lie in (0, 1)"));
        }
        if self.deltas[0] <= 0.0 {
            return Err(Error::domain("GridSpec", "deltas must be positive"));
        }
        Ok(())
    }

    pub fn pq_pairs(&self) -> Vec<(f64, f64)> {
        self.p_values.iter().flat_map(|&p| self.q_values.iter().map(move |&q| (p, q))).collect()
    }
}

fn list(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p = {{{}}}; q = {{{}}}; r = {{{}}}; delta = {{{}}}",
            list(&self.p_values),
            list(&self.q_values),
            list(&self.r_values),
            list(&self.deltas)
        )
    }
}

/// Parse `start:stop:step` into the inclusive list `start + i·step`.
pub fn parse_range(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::domain("range", format!("expected start:stop:step, got {spec:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> =
        parts.iter().map(|s| s.trim().parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(start.is_finite() && stop.is_finite() && step.is_finite() && step > 0.0 && stop >= start) {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    if count > 10_000_000 {
        return Err(Error::domain("range", format!("{spec:?} has too many points")));
    }
    Ok((0..=count).map(|i| start + i as f64 * step).collect())
}
