//! Two-species speed relation, the admissible set and the critical fraction.
//!
//! Everything here works on parameters labelled so that species 1 is the
//! slower pure population (`sigma_1 < sigma_2`). [`admissible_set`] applies
//! that relabelling and reports it; all later results refer to the ordered
//! labels, and fractions are always fractions of the faster population.

use super::dispersion::{g_value, rates_unchecked, species_speed};
use super::interval::Interval;
use super::roots::{bisect, golden_section_max};
use crate::error::{Error, HypothesisFailure, Result};
use crate::params::{PhysicalParams, Species, SpeciesParams};

/// Number of uniform samples used to scan `G` over the admissible set.
pub const G_SCAN_POINTS: usize = 100_000;

/// Admissibility data of a two-species system.
#[derive(Debug, Clone, PartialEq)]
pub struct Admissibility {
    /// Parameters in ordered labelling (species 1 slower).
    pub params: PhysicalParams,
    /// True when the caller's species 1 and 2 were exchanged.
    pub relabeled: bool,
    pub sigma1: f64,
    pub sigma2: f64,
    pub i1: Interval,
    pub i2: Interval,
    pub intersection: Interval,
    /// `(sigma_1, sigma_2) ∩ I_1 ∩ I_2`, open at `sigma_1`. Empty when the
    /// pure speeds coincide.
    pub omega: Interval,
    /// First violated clause of the existence hypothesis, if any.
    pub failure: Option<HypothesisFailure>,
}

impl Admissibility {
    pub fn hypothesis_holds(&self) -> bool {
        self.failure.is_none()
    }

    fn require_hypothesis(&self) -> Result<()> {
        match self.failure {
            None => Ok(()),
            Some(f) => Err(Error::Hypothesis(f)),
        }
    }

    fn sp(&self, species: Species) -> SpeciesParams {
        self.params.species(species)
    }

    /// `G` without domain checks. Finite on the closure of `omega`.
    pub(crate) fn g_unchecked(&self, sigma: f64) -> f64 {
        let p = &self.params;
        let (s1, s2) = (self.sp(Species::One), self.sp(Species::Two));
        let g1 = g_value(p, &s1, sigma);
        let g2 = g_value(p, &s2, sigma);
        let h1 = h_polynomial(p, &s1, sigma);
        let h2 = h_polynomial(p, &s2, sigma);
        -(s2.chi_s * s2.d) / (s1.chi_s * s1.d) * (g1 / g2) * (h2 / h1) * mass_factor(&s1, sigma)
            / mass_factor(&s2, sigma)
    }

    /// `G(sigma)`, defined on the closure of `omega` where no denominator
    /// vanishes.
    pub fn g(&self, sigma: f64) -> Result<f64> {
        let domain_err = |reason: &str| Error::Domain {
            sigma,
            reason: reason.into(),
        };
        if self.omega.is_empty() {
            return Err(domain_err("admissible set is empty"));
        }
        if !self.omega.contains(sigma) {
            return Err(domain_err("outside the admissible set"));
        }
        let p = &self.params;
        let (s1, s2) = (self.sp(Species::One), self.sp(Species::Two));
        if g_value(p, &s2, sigma) == 0.0 {
            return Err(domain_err("g_2 vanishes"));
        }
        if h_polynomial(p, &s1, sigma) == 0.0 {
            return Err(domain_err("h_1 vanishes"));
        }
        if mass_factor(&s2, sigma) == 0.0 {
            return Err(domain_err("species 2 profile does not decay"));
        }
        Ok(self.g_unchecked(sigma))
    }

    /// Samples `G` on `n` uniform points spanning the closure of `omega`.
    pub fn scan(&self, n: usize) -> Vec<(f64, f64)> {
        if self.omega.is_empty() || n < 2 {
            return Vec::new();
        }
        let (lo, hi) = (self.omega.lo, self.omega.hi);
        let step = (hi - lo) / (n - 1) as f64;
        (0..n)
            .map(|k| {
                let s = if k == n - 1 { hi } else { lo + k as f64 * step };
                (s, self.g_unchecked(s))
            })
            .collect()
    }
}

/// `(chi^S)^2 - (sigma - chi^N)^2`, positive exactly on the open interval.
fn mass_factor(sp: &SpeciesParams, sigma: f64) -> f64 {
    sp.chi_s * sp.chi_s - (sigma - sp.chi_n) * (sigma - sp.chi_n)
}

/// Interval data, pure speeds and the existence hypothesis.
pub fn admissible_set(params: &PhysicalParams) -> Result<Admissibility> {
    params.validate()?;
    let s_one = species_speed(params, Species::One)?;
    let s_two = species_speed(params, Species::Two)?;
    let (ordered, relabeled, sigma1, sigma2) = if s_one > s_two {
        (params.swapped(), true, s_two, s_one)
    } else {
        (*params, false, s_one, s_two)
    };
    let i1 = ordered.species(Species::One).interval();
    let i2 = ordered.species(Species::Two).interval();
    let intersection = i1.intersect(&i2);

    let omega = if intersection.is_empty() || sigma1 >= sigma2 {
        Interval::EMPTY
    } else {
        let lo = sigma1.max(intersection.lo);
        let hi = sigma2.min(intersection.hi);
        if lo < hi {
            Interval::new(lo, hi)
        } else {
            Interval::EMPTY
        }
    };

    let failure = if intersection.is_empty() {
        Some(HypothesisFailure::DisjointIntervals)
    } else if intersection.contains(sigma2) {
        Some(HypothesisFailure::FastSpeedInside)
    } else if intersection.contains(ordered.chi2_n - ordered.chi2_s) {
        Some(HypothesisFailure::FastLowerEndInside)
    } else {
        None
    };

    Ok(Admissibility {
        params: ordered,
        relabeled,
        sigma1,
        sigma2,
        i1,
        i2,
        intersection,
        omega,
        failure,
    })
}

/// Polynomial form of `h_i`, without admissibility checks.
pub fn h_polynomial(p: &PhysicalParams, sp: &SpeciesParams, sigma: f64) -> f64 {
    let r = p.ds / sp.d;
    let q = p.kernel_root(sigma);
    sigma * sigma * (r - 1.0) + (1.0 - 2.0 * r) * sigma * sp.chi_n - sp.chi_s * q
        + r * (sp.chi_n * sp.chi_n - sp.chi_s * sp.chi_s)
        - p.alpha * sp.d
}

/// Factored form of `h_i` from the decay rates, divided by `4 D_S / D_i`.
pub fn h_factored(p: &PhysicalParams, sp: &SpeciesParams, sigma: f64) -> f64 {
    let rates = rates_unchecked(sp, sigma);
    let q = p.kernel_root(sigma);
    let a = -sigma - q - 2.0 * p.ds * rates.minus;
    let b = -sigma + q - 2.0 * p.ds * rates.plus;
    a * b / (4.0 * p.ds / sp.d)
}

/// Relative tolerance between the two algebraic forms of `h_i`.
pub const H_FORMS_TOLERANCE: f64 = 1e-10;

/// `h_i(sigma)`, strictly negative on the interior of `I_i`.
///
/// Evaluated in polynomial form and cross-checked against the factored form.
pub fn h_func(params: &PhysicalParams, sigma: f64, species: Species) -> Result<f64> {
    let sp = params.species(species);
    super::dispersion::check_admissible(&sp, species, sigma)?;
    let poly = h_polynomial(params, &sp, sigma);
    let fact = h_factored(params, &sp, sigma);
    let scale = poly.abs().max(fact.abs());
    if (poly - fact).abs() > H_FORMS_TOLERANCE * scale {
        return Err(Error::Numerical(format!(
            "h_{} forms disagree at sigma = {sigma:e}: {poly:e} vs {fact:e}",
            species.label()
        )));
    }
    Ok(poly)
}

/// `H(sigma)`: the factor coupling the two species in the speed relation.
///
/// Requires `sigma` inside both open intervals.
pub fn big_h(params: &PhysicalParams, sigma: f64) -> Result<f64> {
    let (s1, s2) = (params.species(Species::One), params.species(Species::Two));
    let h1 = h_func(params, sigma, Species::One)?;
    let h2 = h_func(params, sigma, Species::Two)?;
    Ok((s1.chi_s * s1.d) / (s2.chi_s * s2.d) * mass_factor(&s2, sigma) / mass_factor(&s1, sigma)
        * h1
        / h2)
}

/// `G(sigma)` for the ordered labelling of `params`.
pub fn g_function(params: &PhysicalParams, sigma: f64) -> Result<f64> {
    admissible_set(params)?.g(sigma)
}

/// Full bifurcation data: admissible set plus the maximum of `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationData {
    pub admissibility: Admissibility,
    /// Maximum of `G` over the scan grid.
    pub lambda_star_grid: f64,
    /// Maximum of `G` after golden-section refinement.
    pub lambda_star: f64,
    /// Speed at which the refined maximum is attained.
    pub sigma_star: f64,
    /// `lambda* / (1 + lambda*)`.
    pub phi_star: f64,
}

/// Critical fraction of the fast population beyond which no single-speed
/// pulse exists.
pub fn phi_star(params: &PhysicalParams) -> Result<BifurcationData> {
    let adm = admissible_set(params)?;
    adm.require_hypothesis()?;
    let samples = adm.scan(G_SCAN_POINTS);
    let (imax, &(s_grid, lambda_grid)) = samples
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .ok_or_else(|| Error::Numerical("empty G scan".into()))?;
    if !lambda_grid.is_finite() || lambda_grid <= 0.0 {
        return Err(Error::Numerical(format!(
            "G has no positive finite maximum on the admissible set (max {lambda_grid:e})"
        )));
    }
    let a = samples[imax.saturating_sub(1)].0;
    let b = samples[(imax + 1).min(samples.len() - 1)].0;
    let step = (adm.omega.hi - adm.omega.lo) / (G_SCAN_POINTS - 1) as f64;
    let (s_ref, lambda_ref) = golden_section_max(|s| adm.g_unchecked(s), a, b, step * 1e-6);
    let (sigma_star, lambda_star) = if lambda_ref >= lambda_grid {
        (s_ref, lambda_ref)
    } else {
        (s_grid, lambda_grid)
    };
    Ok(BifurcationData {
        admissibility: adm,
        lambda_star_grid: lambda_grid,
        lambda_star,
        sigma_star,
        phi_star: lambda_star / (1.0 + lambda_star),
    })
}

/// Outcome of solving the two-species speed relation.
#[derive(Debug, Clone, PartialEq)]
pub enum TwoSpeciesSpeed {
    /// A single-speed pulse exists. `sigma` is the smallest root; `roots`
    /// lists every bracketed root in increasing order.
    Pulse { sigma: f64, roots: Vec<f64> },
    /// The fraction exceeds `phi_star`: no single-speed pulse.
    NoPulse { phi_star: f64 },
}

impl TwoSpeciesSpeed {
    pub fn sigma(&self) -> Option<f64> {
        match self {
            Self::Pulse { sigma, .. } => Some(*sigma),
            Self::NoPulse { .. } => None,
        }
    }
}

impl BifurcationData {
    /// Solves `G(sigma) = phi / (1 - phi)` for a fast-population fraction
    /// `phi` in `[0, 1)`.
    pub fn sigma_two(&self, phi_fast: f64) -> Result<TwoSpeciesSpeed> {
        if !(0.0..1.0).contains(&phi_fast) {
            return Err(Error::invalid(
                "phi_red",
                format!("must lie in [0, 1), got {phi_fast}"),
            ));
        }
        let adm = &self.admissibility;
        if phi_fast == 0.0 {
            return Ok(TwoSpeciesSpeed::Pulse {
                sigma: adm.sigma1,
                roots: vec![adm.sigma1],
            });
        }
        if phi_fast > self.phi_star {
            return Ok(TwoSpeciesSpeed::NoPulse {
                phi_star: self.phi_star,
            });
        }
        let target = phi_fast / (1.0 - phi_fast);
        let residual = |s: f64| adm.g_unchecked(s) - target;
        let samples = adm.scan(G_SCAN_POINTS);
        let mut roots = Vec::new();
        for w in samples.windows(2) {
            let (a, fa) = (w[0].0, w[0].1 - target);
            let (b, fb) = (w[1].0, w[1].1 - target);
            if fa == 0.0 {
                roots.push(a);
            } else if fa.signum() != fb.signum() && fb != 0.0 {
                if let Some(r) = bisect(residual, a, b) {
                    roots.push(r);
                }
            }
        }
        if let Some(&(s, last)) = samples.last() {
            if last - target == 0.0 {
                roots.push(s);
            }
        }
        if roots.is_empty() {
            // Tangency at the maximum: the scan cannot see a sign change.
            roots.push(self.sigma_star);
        }
        Ok(TwoSpeciesSpeed::Pulse {
            sigma: roots[0],
            roots,
        })
    }
}

/// Speed of a mixed pulse with fast-population fraction `phi_fast`.
pub fn sigma_two(params: &PhysicalParams, phi_fast: f64) -> Result<TwoSpeciesSpeed> {
    phi_star(params)?.sigma_two(phi_fast)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table1() -> PhysicalParams {
        PhysicalParams::table1()
    }

    #[test]
    fn identical_species_fail_hypothesis() {
        let p = table1();
        let p = p.with_species(Species::Two, p.species(Species::One));
        let adm = admissible_set(&p).unwrap();
        assert_eq!(adm.sigma1, adm.sigma2);
        assert!(adm.omega.is_empty());
        assert!(!adm.hypothesis_holds());
        assert!(matches!(phi_star(&p), Err(Error::Hypothesis(_))));
        assert!(matches!(sigma_two(&p, 0.2), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn relabels_when_given_fast_species_first() {
        let adm = admissible_set(&table1().swapped()).unwrap();
        assert!(adm.relabeled);
        assert!(adm.sigma1 < adm.sigma2);
        assert_eq!(adm.params, table1());
    }

    #[test]
    fn shifted_fast_lower_end_breaks_hypothesis() {
        // chi_2^N - chi_2^S = 2.5e-4 falls inside I_1 ∩ I_2 = [1.921e-4, 3.219e-4].
        let p = PhysicalParams {
            chi2_n: 2.5e-4 + 2.88e-4,
            ..table1()
        };
        let adm = admissible_set(&p).unwrap();
        assert!(!adm.relabeled);
        assert_eq!(adm.failure, Some(HypothesisFailure::FastLowerEndInside));
    }

    #[test]
    fn disjoint_intervals() {
        let p = PhysicalParams {
            chi2_n: 2e-3,
            chi2_s: 1e-4,
            ..table1()
        };
        let adm = admissible_set(&p).unwrap();
        assert_eq!(adm.failure, Some(HypothesisFailure::DisjointIntervals));
        assert!(adm.omega.is_empty());
    }

    #[test]
    fn g_vanishes_at_slow_speed_and_is_positive_inside() {
        let adm = admissible_set(&table1()).unwrap();
        assert_eq!(adm.g(adm.sigma1).unwrap(), 0.0);
        let mid = adm.omega.midpoint().unwrap();
        assert!(adm.g(mid).unwrap() > 0.0);
        assert!(matches!(adm.g(adm.sigma2), Err(Error::Domain { .. })));
        assert!(matches!(adm.g(adm.sigma1 * 0.9), Err(Error::Domain { .. })));
    }

    #[test]
    fn h_negative_on_interval() {
        let p = table1();
        for sp in Species::BOTH {
            let i = p.species(sp).interval();
            for k in 1..50 {
                let s = i.lo + i.width() * k as f64 / 50.0;
                assert!(h_func(&p, s, sp).unwrap() < 0.0);
            }
        }
    }

    #[test]
    fn h_forms_agree_with_equal_diffusivities() {
        let mut p = table1();
        p.d1 = p.ds;
        let sigma = p.chi1_n;
        let sp = p.species(Species::One);
        let poly = h_polynomial(&p, &sp, sigma);
        let fact = h_factored(&p, &sp, sigma);
        assert!((poly - fact).abs() <= 1e-10 * poly.abs());
        h_func(&p, sigma, Species::One).unwrap();
    }

    #[test]
    fn zero_fraction_returns_slow_speed() {
        let b = phi_star(&table1()).unwrap();
        assert_eq!(b.sigma_two(0.0).unwrap().sigma(), Some(b.admissibility.sigma1));
    }

    #[test]
    fn beyond_threshold_has_no_pulse() {
        let b = phi_star(&table1()).unwrap();
        let out = b.sigma_two((b.phi_star + 1.0) / 2.0).unwrap();
        assert!(matches!(out, TwoSpeciesSpeed::NoPulse { .. }));
        assert!(b.sigma_two(1.0).is_err());
    }

    #[test]
    fn g_big_h_relation() {
        // G = -g_1 / (H g_2) on the interior of omega.
        let adm = admissible_set(&table1()).unwrap();
        let p = adm.params;
        let s = adm.omega.lo + 0.37 * adm.omega.width();
        let g1 = g_value(&p, &p.species(Species::One), s);
        let g2 = g_value(&p, &p.species(Species::Two), s);
        let expect = -g1 / (big_h(&p, s).unwrap() * g2);
        let got = adm.g(s).unwrap();
        assert!((got - expect).abs() <= 1e-12 * got.abs());
    }
}
