//! Space-time intensity images.

use crate::error::{Error, Result};
use crate::params::Species;
use crate::solver::SimState;

/// Rows are snapshots, columns are cells. Each channel is divided by its own
/// global maximum, so both lie in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Kymograph {
    pub rows: usize,
    pub cols: usize,
    /// Species 1, row-major.
    pub green: Vec<f64>,
    /// Species 2, row-major.
    pub red: Vec<f64>,
}

impl Kymograph {
    pub fn green_at(&self, row: usize, col: usize) -> f64 {
        self.green[row * self.cols + col]
    }

    pub fn red_at(&self, row: usize, col: usize) -> f64 {
        self.red[row * self.cols + col]
    }

    pub fn channel(&self, species: Species) -> &[f64] {
        match species {
            Species::One => &self.green,
            Species::Two => &self.red,
        }
    }
}

/// Accumulates raw densities snapshot by snapshot.
#[derive(Debug, Clone, Default)]
pub struct KymographBuilder {
    cols: usize,
    rows: usize,
    green: Vec<f64>,
    red: Vec<f64>,
}

impl KymographBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, state: &SimState) -> Result<()> {
        if self.rows == 0 {
            self.cols = state.nx();
        } else if state.nx() != self.cols {
            return Err(Error::InvalidProfile(format!(
                "snapshot has {} cells, expected {}",
                state.nx(),
                self.cols
            )));
        }
        self.green.extend_from_slice(&state.rho1);
        self.red.extend_from_slice(&state.rho2);
        self.rows += 1;
        Ok(())
    }

    pub fn finish(mut self) -> Result<Kymograph> {
        if self.rows == 0 {
            return Err(Error::InsufficientData("kymograph needs at least one snapshot".into()));
        }
        normalize(&mut self.green);
        normalize(&mut self.red);
        Ok(Kymograph {
            rows: self.rows,
            cols: self.cols,
            green: self.green,
            red: self.red,
        })
    }
}

fn normalize(channel: &mut [f64]) {
    let max = channel.iter().copied().fold(0.0, f64::max);
    if max > 0.0 {
        channel.iter_mut().for_each(|v| *v = (*v / max).clamp(0.0, 1.0));
    } else {
        channel.iter_mut().for_each(|v| *v = 0.0);
    }
}

pub fn render_kymograph(snapshots: &[SimState]) -> Result<Kymograph> {
    let mut b = KymographBuilder::new();
    for s in snapshots {
        b.push(s)?;
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_normalizes_to_one() {
        let mut s = SimState::zeros(5);
        s.rho1[2] = 7.0;
        let k = render_kymograph(&[s]).unwrap();
        assert_eq!(k.rows, 1);
        for c in 0..5 {
            assert_eq!(k.green_at(0, c), if c == 2 { 1.0 } else { 0.0 });
            assert_eq!(k.red_at(0, c), 0.0);
        }
    }

    #[test]
    fn empty_channel_is_zero() {
        let mut a = SimState::zeros(4);
        a.rho1[0] = 1.0;
        let k = render_kymograph(&[a.clone(), a]).unwrap();
        assert!(k.red.iter().all(|&v| v == 0.0));
        assert_eq!(k.rows, 2);
    }

    #[test]
    fn no_snapshots() {
        assert!(render_kymograph(&[]).is_err());
    }
}
