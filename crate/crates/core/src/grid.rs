use serde::Serialize;

use crate::error::{Error, Result};

/// Geometrically spaced hyper-radius grid, uniform in `ln(rho)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogGrid {
    rho_min: f64,
    rho_max: f64,
    values: Vec<f64>,
}

impl LogGrid {
    pub fn new(rho_min: f64, rho_max: f64, points: usize) -> Result<Self> {
        if !(rho_min.is_finite() && rho_min > 0.0) {
            return Err(Error::invalid(
                "rho_min",
                format!("must be > 0, got {rho_min}"),
            ));
        }
        if !(rho_max.is_finite() && rho_max > rho_min) {
            return Err(Error::invalid(
                "rho_max",
                format!("must exceed rho_min = {rho_min}, got {rho_max}"),
            ));
        }
        if points < 2 {
            return Err(Error::invalid("points", "need at least 2 grid points"));
        }
        let t0 = rho_min.ln();
        let step = (rho_max.ln() - t0) / (points - 1) as f64;
        let mut values: Vec<f64> = (0..points).map(|i| (t0 + step * i as f64).exp()).collect();
        values[0] = rho_min;
        values[points - 1] = rho_max;
        Ok(Self {
            rho_min,
            rho_max,
            values,
        })
    }

    /// Grid starting at `rho_min` with a fixed number of points per unit of `ln(rho)`.
    pub fn with_density(rho_min: f64, rho_max: f64, points_per_unit: f64) -> Result<Self> {
        if !(points_per_unit.is_finite() && points_per_unit > 0.0) {
            return Err(Error::invalid("points_per_unit", "must be > 0"));
        }
        let span = (rho_max / rho_min).ln();
        let points = ((span * points_per_unit).ceil() as usize).max(1) + 1;
        Self::new(rho_min, rho_max, points)
    }

    pub fn rho_min(&self) -> f64 {
        self.rho_min
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Spacing in `ln(rho)`.
    pub fn log_step(&self) -> f64 {
        (self.rho_max.ln() - self.rho_min.ln()) / (self.values.len() - 1) as f64
    }

    /// Same span with the log-spacing halved.
    pub fn refined(&self) -> Self {
        Self::new(self.rho_min, self.rho_max, 2 * self.values.len() - 1)
            .expect("refining a valid grid")
    }
}
