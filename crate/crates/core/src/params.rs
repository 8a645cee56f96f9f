//! Model constants in CGS units.

use crate::error::{Error, Result};

/// Default nutrient consumption rate, per unit density per second.
///
/// The measured constants leave the consumption rate open. This value makes
/// `gamma * M_total / L = 0.01 /s` for the default channel (`L = 1.8 cm`) and
/// total mass (`M_total = 1`), so the mean nutrient depletes over ~100 s.
pub const DEFAULT_GAMMA: f64 = 0.018;

/// Bacterial subpopulation index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Species {
    One,
    Two,
}

impl Species {
    pub const BOTH: [Species; 2] = [Species::One, Species::Two];

    /// Zero-based slot (0 for species 1).
    pub fn slot(self) -> usize {
        match self {
            Species::One => 0,
            Species::Two => 1,
        }
    }

    /// One-based label as used in output files.
    pub fn label(self) -> usize {
        self.slot() + 1
    }

    pub fn other(self) -> Species {
        match self {
            Species::One => Species::Two,
            Species::Two => Species::One,
        }
    }
}

/// Constants of one subpopulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeciesParams {
    /// Effective diffusivity (cm²/s).
    pub d: f64,
    /// Drift magnitude toward the chemoattractant (cm/s).
    pub chi_s: f64,
    /// Drift magnitude toward the nutrient (cm/s).
    pub chi_n: f64,
    /// Nutrient consumption rate.
    pub gamma: f64,
}

impl SpeciesParams {
    /// Closed admissible speed interval `[chi_n - chi_s, chi_n + chi_s]`.
    pub fn interval(&self) -> crate::analysis::Interval {
        crate::analysis::Interval::new(self.chi_n - self.chi_s, self.chi_n + self.chi_s)
    }
}

/// All constants of the two-species system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub d1: f64,
    pub d2: f64,
    /// Chemoattractant diffusivity (cm²/s).
    pub ds: f64,
    /// Nutrient diffusivity (cm²/s).
    pub dn: f64,
    /// Chemoattractant degradation rate (1/s).
    pub alpha: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub chi1_s: f64,
    pub chi2_s: f64,
    pub chi1_n: f64,
    pub chi2_n: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self::table1()
    }
}

impl PhysicalParams {
    /// Measured and fitted values for the GFP (slow, species 1) and mCherry
    /// (fast, species 2) strains, with [`DEFAULT_GAMMA`] for both
    /// consumption rates.
    pub fn table1() -> Self {
        Self {
            d1: 1.79e-6,
            d2: 3.29e-6,
            ds: 8e-6,
            dn: 8e-6,
            alpha: 5e-2,
            gamma1: DEFAULT_GAMMA,
            gamma2: DEFAULT_GAMMA,
            chi1_s: 6.49e-5,
            chi2_s: 2.88e-4,
            chi1_n: 2.57e-4,
            chi2_n: 4.74e-4,
        }
    }

    /// `(name, value)` pairs in a fixed order, names as used in config files.
    pub fn named_fields(&self) -> [(&'static str, f64); 11] {
        [
            ("D1", self.d1),
            ("D2", self.d2),
            ("DS", self.ds),
            ("DN", self.dn),
            ("alpha", self.alpha),
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("chi1S", self.chi1_s),
            ("chi2S", self.chi2_s),
            ("chi1N", self.chi1_n),
            ("chi2N", self.chi2_n),
        ]
    }

    /// Every field must be strictly positive and finite.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in self.named_fields() {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::invalid(
                    name,
                    format!("must be strictly positive and finite, got {value}"),
                ));
            }
        }
        Ok(())
    }

    pub fn species(&self, species: Species) -> SpeciesParams {
        match species {
            Species::One => SpeciesParams {
                d: self.d1,
                chi_s: self.chi1_s,
                chi_n: self.chi1_n,
                gamma: self.gamma1,
            },
            Species::Two => SpeciesParams {
                d: self.d2,
                chi_s: self.chi2_s,
                chi_n: self.chi2_n,
                gamma: self.gamma2,
            },
        }
    }

    pub fn with_species(mut self, species: Species, sp: SpeciesParams) -> Self {
        match species {
            Species::One => {
                self.d1 = sp.d;
                self.chi1_s = sp.chi_s;
                self.chi1_n = sp.chi_n;
                self.gamma1 = sp.gamma;
            }
            Species::Two => {
                self.d2 = sp.d;
                self.chi2_s = sp.chi_s;
                self.chi2_n = sp.chi_n;
                self.gamma2 = sp.gamma;
            }
        }
        self
    }

    /// Same system with the two subpopulations exchanged.
    pub fn swapped(&self) -> Self {
        self.with_species(Species::One, self.species(Species::Two))
            .with_species(Species::Two, self.species(Species::One))
    }

    /// Largest advection speed any subpopulation can reach, `max_i (chi_i^S + chi_i^N)`.
    pub fn max_drift(&self) -> f64 {
        (self.chi1_s + self.chi1_n).max(self.chi2_s + self.chi2_n)
    }

    /// `sqrt(sigma^2 + 4 alpha D_S)`, the root shared by every closed form.
    pub fn kernel_root(&self, sigma: f64) -> f64 {
        (sigma * sigma + 4.0 * self.alpha * self.ds).sqrt()
    }
}
