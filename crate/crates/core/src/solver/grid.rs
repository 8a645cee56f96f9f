use crate::error::{Error, Result};

/// Uniform cell-centred grid on `[0, length]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    length: f64,
    nx: usize,
}

impl Grid1D {
    pub const MIN_CELLS: usize = 8;

    pub fn new(length: f64, nx: usize) -> Result<Self> {
        if !length.is_finite() || length <= 0.0 {
            return Err(Error::invalid("grid.L", format!("must be > 0, got {length}")));
        }
        if nx < Self::MIN_CELLS {
            return Err(Error::invalid(
                "grid.nx",
                format!("must be at least {}, got {nx}", Self::MIN_CELLS),
            ));
        }
        Ok(Self { length, nx })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn dx(&self) -> f64 {
        self.length / self.nx as f64
    }

    /// Centre of cell `k`, `(k + 1/2) dx`.
    pub fn center(&self, k: usize) -> f64 {
        (k as f64 + 0.5) * self.dx()
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.nx).map(|k| self.center(k)).collect()
    }
}
