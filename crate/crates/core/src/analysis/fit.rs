//! Recovering drift magnitudes and the degradation rate from a measured
//! pulse shape and speed.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FittedParams {
    pub chi_s: f64,
    pub chi_n: f64,
    pub alpha: f64,
}

/// Inverts the decay-rate formulas and the one-species speed relation.
///
/// `chi^S = D (lambda^- - lambda^+) / 2`, `chi^N = sigma + D (lambda^+ + lambda^-) / 2`,
/// `alpha = sigma^2 (-lambda^+ lambda^-) / (D_S (lambda^+ + lambda^-)^2)`.
///
/// A pulse whose front decays faster than its back (`lambda^- + lambda^+ < 0`)
/// would need `chi^N < sigma`, which no single-species pulse satisfies, so it
/// is rejected as an invalid profile.
pub fn fit_parameters(
    lambda_minus: f64,
    lambda_plus: f64,
    sigma: f64,
    d: f64,
    ds: f64,
) -> Result<FittedParams> {
    for (name, v) in [("sigma", sigma), ("D", d), ("DS", ds)] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::invalid(name, format!("must be finite and > 0, got {v}")));
        }
    }
    if !lambda_minus.is_finite() || lambda_minus <= 0.0 {
        return Err(Error::InvalidProfile(format!(
            "back rate lambda_minus must be > 0, got {lambda_minus}"
        )));
    }
    if !lambda_plus.is_finite() || lambda_plus >= 0.0 {
        return Err(Error::InvalidProfile(format!(
            "front rate lambda_plus must be < 0, got {lambda_plus}"
        )));
    }
    let sum = lambda_plus + lambda_minus;
    if sum == 0.0 {
        return Err(Error::SingularFit);
    }
    if sum < 0.0 {
        return Err(Error::InvalidProfile(format!(
            "front decays faster than back (lambda_minus + lambda_plus = {sum:e} < 0)"
        )));
    }
    Ok(FittedParams {
        chi_s: d * (lambda_minus - lambda_plus) / 2.0,
        chi_n: sigma + d * sum / 2.0,
        alpha: sigma * sigma * (-lambda_plus * lambda_minus) / (ds * sum * sum),
    })
}
