use super::grid::Grid1D;
use crate::params::Species;

/// The four fields at one time level.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub t: f64,
    pub rho1: Vec<f64>,
    pub rho2: Vec<f64>,
    pub s: Vec<f64>,
    pub n: Vec<f64>,
}

impl SimState {
    pub fn zeros(nx: usize) -> Self {
        Self {
            t: 0.0,
            rho1: vec![0.0; nx],
            rho2: vec![0.0; nx],
            s: vec![0.0; nx],
            n: vec![0.0; nx],
        }
    }

    pub fn nx(&self) -> usize {
        self.rho1.len()
    }

    pub fn density(&self, species: Species) -> &[f64] {
        match species {
            Species::One => &self.rho1,
            Species::Two => &self.rho2,
        }
    }

    /// Discrete mass `Σ_k rho_k dx`.
    pub fn mass(&self, species: Species, grid: &Grid1D) -> f64 {
        self.density(species).iter().sum::<f64>() * grid.dx()
    }

    pub fn fields(&self) -> [&[f64]; 4] {
        [&self.rho1, &self.rho2, &self.s, &self.n]
    }

    /// All entries finite and non-negative.
    pub fn is_admissible(&self) -> bool {
        self.fields()
            .iter()
            .all(|f| f.iter().all(|v| v.is_finite() && *v >= 0.0))
    }
}
