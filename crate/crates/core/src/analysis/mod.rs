//! Closed-form traveling-pulse analysis.

pub mod bifurcation;
pub mod dispersion;
pub mod fit;
mod interval;
pub mod profiles;
pub mod roots;

pub use bifurcation::{
    admissible_set, big_h, g_function, h_factored, h_func, h_polynomial, phi_star, sigma_two,
    Admissibility, BifurcationData, TwoSpeciesSpeed, G_SCAN_POINTS, H_FORMS_TOLERANCE,
};
pub use dispersion::{g_value, lambda_pm, sigma_single, species_speed, DecayRates};
pub use fit::{fit_parameters, FittedParams};
pub use interval::Interval;
pub use profiles::{
    analytic_profiles, c_coefficient, c_coefficient_expanded, kernel, sprime_at_zero, Profiles, PulseComponent, SPrime,
    WaveSolution,
};
