//! Two-sided bounds on the Bogoliubov coefficients and the transmission
//! probability, controlled by the single quadrature
//!
//! ```text
//! Theta_bound = 1/2 * integral |k^2 - k0^2| |psi0|^2 dx
//! ```
//!
//! Upper bounds always exist; the lower bound on |alpha| (hence the upper
//! bound on T) is informative only while `Theta_bound < Theta0`, and the
//! report carries explicit validity flags instead of failing.

use crate::comparison::{acosh1p, ComparisonSolution};
use crate::error::{Error, Result};
use crate::potential::{Potential, WaveNumberProfile};
use crate::quadrature;
use crate::solver::{truncation_domain, SolverSettings};

/// All bound values for one (potential, comparison, energy) triple.
#[derive(Debug, Clone, Copy)]
pub struct BoundReport {
    pub theta_bound: f64,
    /// `arccosh |alpha0|` of the comparison.
    pub theta0: f64,
    pub alpha_upper: f64,
    pub beta_upper: f64,
    /// Clamps to the trivial `|alpha| >= 1` when `theta_bound >= theta0`.
    pub alpha_lower: f64,
    /// Clamps to the trivial `|beta| >= 0` when `theta_bound >= theta0`.
    pub beta_lower: f64,
    pub t_lower: f64,
    /// Equals 1 (the trivial bound) when `upper_valid` is false.
    pub t_upper: f64,
    pub upper_valid: bool,
    pub lower_nontrivial: bool,
}

/// `Theta_bound` by adaptive quadrature over the truncated domain, plus the
/// exact contribution `|weight| |psi0(x)|^2 / 2` of every net point mass.
pub fn theta_bound(
    spec: &Potential,
    comparison: &ComparisonSolution,
    energy: f64,
    quad_tol: f64,
) -> Result<f64> {
    if comparison.energy() != energy {
        return Err(Error::EnergyMismatch {
            comparison_energy: comparison.energy(),
            energy,
        });
    }
    let profile = WaveNumberProfile::new(spec, energy)?;
    let settings = SolverSettings::default();
    let cp = comparison.potential();
    let (lo, hi) = truncation_domain(spec, Some(cp), energy, &settings)?;

    let mut breaks = spec.breakpoints();
    breaks.extend(cp.breakpoints());
    let smooth = quadrature::integrate(
        |x| (profile.k_squared(x) - comparison.k0_squared(x)).abs() * comparison.psi(x).norm_sqr(),
        lo,
        hi,
        &breaks,
        quad_tol,
    )?;

    let mut point_masses = 0.0;
    let mut net: Vec<(f64, f64)> = Vec::new();
    for pm in spec.point_masses() {
        net.push((pm.position, pm.weight));
    }
    for pm in cp.point_masses() {
        if let Some(e) = net.iter_mut().find(|(p, _)| *p == pm.position) {
            e.1 -= pm.weight;
        } else {
            net.push((pm.position, -pm.weight));
        }
    }
    for (pos, w) in net {
        point_masses += w.abs() * comparison.psi(pos).norm_sqr();
    }

    Ok(0.5 * (smooth + point_masses))
}

/// Fills a [`BoundReport`] from `Theta_bound` and the comparison data,
/// using the hyperbolic-sum forms
/// `|alpha| <= cosh(Theta0 + Theta_bound)`, `T >= sech^2(Theta0 + Theta_bound)`,
/// and, while `Theta_bound < Theta0`, `|alpha| >= cosh(Theta0 - Theta_bound)`
/// and `T <= sech^2(Theta0 - Theta_bound)`.
pub fn bogoliubov_bounds(theta_bound: f64, comparison: &ComparisonSolution) -> BoundReport {
    let theta0 = comparison.theta0();
    let nontrivial = theta_bound < theta0;

    let up = theta0 + theta_bound;
    let down = theta0 - theta_bound;

    let sech2 = |t: f64| {
        let c = t.cosh();
        1.0 / (c * c)
    };

    BoundReport {
        theta_bound,
        theta0,
        alpha_upper: up.cosh(),
        beta_upper: up.sinh(),
        alpha_lower: if nontrivial { down.cosh() } else { 1.0 },
        beta_lower: if nontrivial { down.sinh() } else { 0.0 },
        t_lower: sech2(up),
        t_upper: if nontrivial { sech2(down) } else { 1.0 },
        upper_valid: nontrivial,
        lower_nontrivial: nontrivial,
    }
}

/// The same transmission bounds written algebraically in `T0`:
///
/// ```text
/// T >= T0 / [cosh(Tb) + sqrt(1-T0) sinh(Tb)]^2
/// T <= T0 / [cosh(Tb) - sqrt(1-T0) sinh(Tb)]^2   while tanh(Tb) < sqrt(1-T0)
/// ```
///
/// Returns `(t_lower, t_upper, upper_valid)`; identical to the `sech^2`
/// forms of [`bogoliubov_bounds`] to rounding.
pub fn transmission_bounds_algebraic(theta_bound: f64, t0: f64) -> (f64, f64, bool) {
    let root = (1.0 - t0).max(0.0).sqrt();
    let (ch, sh) = (theta_bound.cosh(), theta_bound.sinh());

    let lower_denom = ch + root * sh;
    let t_lower = t0 / (lower_denom * lower_denom);

    // tanh(Tb) < sqrt(1-T0) = tanh(Theta0) is exactly Theta_bound < Theta0
    let upper_valid = theta_bound.tanh() < root;
    let t_upper = if upper_valid {
        let upper_denom = ch - root * sh;
        (t0 / (upper_denom * upper_denom)).min(1.0)
    } else {
        1.0
    };
    (t_lower, t_upper, upper_valid)
}

/// Free-comparison specialization for potentials with equal asymptotes:
/// `|alpha| <= cosh{ (1/2 k0) * integral |k^2 - k0^2| dx }`.
pub fn case1_bound(spec: &Potential, energy: f64, quad_tol: f64) -> Result<f64> {
    let (vm, vp) = (spec.v_minus_inf(), spec.v_plus_inf());
    if vm != vp {
        return Err(Error::UnequalAsymptotes {
            v_minus: vm,
            v_plus: vp,
        });
    }
    let profile = WaveNumberProfile::new(spec, energy)?;
    let k0 = profile.k_minus_inf();
    let k0_squared = energy - vm;
    let settings = SolverSettings::default();
    let (lo, hi) = truncation_domain(spec, None, energy, &settings)?;

    let smooth = quadrature::integrate(
        |x| (profile.k_squared(x) - k0_squared).abs(),
        lo,
        hi,
        &spec.breakpoints(),
        quad_tol,
    )?;
    let point_masses: f64 = spec.point_masses().iter().map(|pm| pm.weight.abs()).sum();

    Ok(((smooth + point_masses) / (2.0 * k0)).cosh())
}

pub(crate) fn sech_squared(t: f64) -> f64 {
    let c = t.cosh();
    1.0 / (c * c)
}

#[allow(dead_code)]
pub(crate) fn theta0_from_t0(t0: f64) -> f64 {
    let u = (1.0 - t0) / (t0.sqrt() * (1.0 + t0.sqrt()));
    acosh1p(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn theta_bound_square_barrier_closed_form() {
        // |k^2 - k0^2| = V0 on the barrier, |psi0|^2 = 1/k0 for the free
        // comparison, so Theta_bound = V0 L / (2 k0) = 1/(2 sqrt(2))
        let spec = Potential::square_barrier(1.0, 1.0, 0.0);
        let c = ComparisonSolution::free(2.0).unwrap();
        let tb = theta_bound(&spec, &c, 2.0, 1e-12).unwrap();
        let exact = 1.0 / (2.0 * 2.0f64.sqrt());
        assert!((tb - exact).abs() < 1e-9, "tb = {tb}");
    }

    #[test]
    fn theta_bound_vanishes_on_itself() {
        let c = ComparisonSolution::square_barrier(1.0, 1.0, 2.0).unwrap();
        let spec = c.potential().clone();
        let tb = theta_bound(&spec, &c, 2.0, 1e-12).unwrap();
        assert_eq!(tb, 0.0);
    }

    #[test]
    fn theta_bound_delta_point_mass_rule() {
        let spec = Potential::delta(1.0, 0.0);
        let c = ComparisonSolution::free(1.0).unwrap();
        let tb = theta_bound(&spec, &c, 1.0, 1e-12).unwrap();
        assert!((tb - 0.5).abs() < 1e-14, "tb = {tb}");
    }

    #[test]
    fn bounds_collapse_at_zero_theta_bound() {
        let c = ComparisonSolution::square_barrier(1.0, 1.0, 2.0).unwrap();
        let r = bogoliubov_bounds(0.0, &c);
        assert!((r.alpha_upper - c.alpha0.norm()).abs() < 1e-14);
        assert!((r.alpha_lower - c.alpha0.norm()).abs() < 1e-14);
        assert!((r.t_lower - c.t0).abs() < 1e-14);
        assert!((r.t_upper - c.t0).abs() < 1e-14);
        assert!(r.upper_valid);
    }

    #[test]
    fn bounds_free_comparison() {
        let c = ComparisonSolution::free(2.0).unwrap();
        let r = bogoliubov_bounds(0.5, &c);
        assert!((r.alpha_upper - 0.5f64.cosh()).abs() < 1e-15);
        assert_eq!(r.alpha_lower, 1.0);
        assert!((r.t_lower - sech_squared(0.5)).abs() < 1e-15);
        assert!(!r.upper_valid);
        assert_eq!(r.t_upper, 1.0);
        assert!(!r.lower_nontrivial);
    }

    #[test]
    fn bounds_nontrivial_upper() {
        // step comparison with T0 = 8/9 has Theta0 = ln(sqrt 2) ~ 0.3466
        let c = ComparisonSolution::step(0.75, 1.0).unwrap();
        let r = bogoliubov_bounds(0.1, &c);
        assert!((r.theta0 - 0.5f64 * 2.0f64.ln()).abs() < 1e-14);
        assert!(r.lower_nontrivial);
        assert!(r.upper_valid);
        assert!((r.t_upper - sech_squared(r.theta0 - 0.1)).abs() < 1e-15);
        assert!(r.t_lower <= c.t0 && c.t0 <= r.t_upper);
    }

    #[test]
    fn algebraic_examples() {
        let (lo, up, valid) = transmission_bounds_algebraic(0.0, 0.8);
        assert!((lo - 0.8).abs() < 1e-15);
        assert!((up - 0.8).abs() < 1e-15);
        assert!(valid);

        let (lo, up, valid) = transmission_bounds_algebraic(0.5, 1.0);
        assert!((lo - sech_squared(0.5)).abs() < 1e-15);
        assert_eq!(up, 1.0);
        assert!(!valid);

        let (lo, _, _) = transmission_bounds_algebraic(0.5, 0.8);
        let direct = 0.8 / (0.5f64.cosh() + 0.2f64.sqrt() * 0.5f64.sinh()).powi(2);
        assert!((lo - direct).abs() < 1e-15);
        assert!((lo - sech_squared(theta0_from_t0(0.8) + 0.5)).abs() < 1e-12);
    }

    #[test]
    fn case1_square_barrier() {
        let spec = Potential::square_barrier(1.0, 1.0, 0.0);
        let v = case1_bound(&spec, 2.0, 1e-12).unwrap();
        assert!((v - (1.0 / (2.0 * 2.0f64.sqrt())).cosh()).abs() < 1e-9);

        let c = ComparisonSolution::free(2.0).unwrap();
        let tb = theta_bound(&spec, &c, 2.0, 1e-12).unwrap();
        let general = bogoliubov_bounds(tb, &c).alpha_upper;
        assert!((v - general).abs() < 1e-12);
    }

    #[test]
    fn case1_delta_and_free() {
        let v = case1_bound(&Potential::delta(1.0, 0.0), 1.0, 1e-12).unwrap();
        assert!((v - 0.5f64.cosh()).abs() < 1e-14);
        let f = case1_bound(&Potential::Free, 2.0, 1e-12).unwrap();
        assert!((f - 1.0).abs() < 1e-15);
    }

    #[test]
    fn case1_rejects_unequal_asymptotes() {
        assert!(matches!(
            case1_bound(&Potential::step(0.5), 2.0, 1e-10),
            Err(Error::UnequalAsymptotes { .. })
        ));
    }

    proptest! {
        #[test]
        fn sech_and_algebraic_forms_agree(tb in 0.0f64..3.0, t0 in 0.01f64..1.0) {
            let theta0 = theta0_from_t0(t0);
            let lower_sech = sech_squared(theta0 + tb);
            let upper_sech = if tb < theta0 { sech_squared(theta0 - tb) } else { 1.0 };
            let (lo, up, valid) = transmission_bounds_algebraic(tb, t0);
            prop_assert!((lo - lower_sech).abs() < 1e-12);
            prop_assert!((up - upper_sech).abs() < 1e-12);
            prop_assert_eq!(valid, tb < theta0);
        }

        #[test]
        fn monotone_in_theta_bound(t0 in 0.05f64..1.0, tb1 in 0.0f64..2.0, d in 0.0f64..1.0) {
            let tb2 = tb1 + d;
            let (lo1, _, _) = transmission_bounds_algebraic(tb1, t0);
            let (lo2, _, _) = transmission_bounds_algebraic(tb2, t0);
            prop_assert!(lo2 <= lo1 + 1e-15);
            let theta0 = theta0_from_t0(t0);
            prop_assert!((theta0 + tb2).cosh() >= (theta0 + tb1).cosh());
        }

        #[test]
        fn lower_bound_never_exceeds_t0(t0 in 0.01f64..1.0, tb in 0.0f64..3.0) {
            let (lo, up, valid) = transmission_bounds_algebraic(tb, t0);
            prop_assert!(lo <= t0 + 1e-15);
            if valid {
                prop_assert!(lo <= up + 1e-15);
            }
        }
    }
}
