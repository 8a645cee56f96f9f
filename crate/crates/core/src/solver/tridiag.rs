//! Thomas elimination for the implicit diffusion systems.

use crate::error::{Error, Result};

/// Tridiagonal matrix stored by diagonals. `lower[0]` and `upper[n-1]` are
/// unused.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Tridiagonal {
    /// `I - r Δ_h + diag(extra)` with zero-flux (mirror ghost) boundary rows,
    /// where `Δ_h` is the three-point Laplacian scaled by `dx^2`.
    pub fn implicit_diffusion(n: usize, r: f64, extra: impl Fn(usize) -> f64) -> Self {
        let mut lower = vec![-r; n];
        let mut upper = vec![-r; n];
        let mut diag: Vec<f64> = (0..n).map(|k| 1.0 + 2.0 * r + extra(k)).collect();
        lower[0] = 0.0;
        upper[n - 1] = 0.0;
        diag[0] -= r;
        diag[n - 1] -= r;
        Self { lower, diag, upper }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Solves `A x = rhs` in place, reusing `scratch` for the modified upper
    /// diagonal.
    ///
    /// Fails if the matrix is not weakly diagonally dominant with positive
    /// pivots, which cannot happen for the diffusion systems built above.
    pub fn solve_in_place(&self, rhs: &mut [f64], scratch: &mut Vec<f64>) -> Result<()> {
        let n = self.len();
        if rhs.len() != n {
            return Err(Error::Numerical(format!(
                "right-hand side has length {}, matrix has {n}",
                rhs.len()
            )));
        }
        for k in 0..n {
            let off = self.lower[k].abs() + self.upper[k].abs();
            if !(self.diag[k] > 0.0 && self.diag[k] >= off) {
                return Err(Error::Numerical(format!(
                    "tridiagonal row {k} is not diagonally dominant"
                )));
            }
        }
        scratch.clear();
        scratch.resize(n, 0.0);
        let mut pivot = self.diag[0];
        scratch[0] = self.upper[0] / pivot;
        rhs[0] /= pivot;
        for k in 1..n {
            pivot = self.diag[k] - self.lower[k] * scratch[k - 1];
            if !(pivot > 0.0) {
                return Err(Error::Numerical(format!("zero pivot at row {k}")));
            }
            scratch[k] = self.upper[k] / pivot;
            rhs[k] = (rhs[k] - self.lower[k] * rhs[k - 1]) / pivot;
        }
        for k in (0..n - 1).rev() {
            rhs[k] -= scratch[k] * rhs[k + 1];
        }
        Ok(())
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let mut x = rhs.to_vec();
        self.solve_in_place(&mut x, &mut Vec::new())?;
        Ok(x)
    }

    pub fn mul(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|k| {
                let mut v = self.diag[k] * x[k];
                if k > 0 {
                    v += self.lower[k] * x[k - 1];
                }
                if k + 1 < n {
                    v += self.upper[k] * x[k + 1];
                }
                v
            })
            .collect()
    }
}
