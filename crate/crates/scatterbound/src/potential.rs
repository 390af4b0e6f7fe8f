//! Potential definitions and wave-number profiles.
//!
//! Natural units `2m = hbar = 1` are used throughout, so the local
//! wave number obeys `k(x)^2 = E - V(x)`. Every potential must tend to
//! finite (possibly distinct) constants on the far left and far right;
//! scattering is only defined for `E` above both asymptotes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Dirac point mass embedded in a potential: `weight * delta(x - position)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMass {
    pub position: f64,
    /// Strength in energy * length units.
    pub weight: f64,
}

/// Analytic description of a one-dimensional potential with finite asymptotes.
///
/// Point-mass (delta) contributions are carried as explicit `(position, weight)`
/// data rather than pointwise values; see [`Potential::point_masses`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Potential {
    /// V(x) = 0 everywhere.
    Free,
    /// V(x) = 0 for x < center, `v_plus` for x >= center.
    Step {
        v_plus: f64,
        #[serde(default)]
        center: f64,
    },
    /// V(x) = `v0` on `[center - width/2, center + width/2]`, 0 outside.
    /// Negative `v0` gives a square well.
    SquareBarrier {
        v0: f64,
        width: f64,
        #[serde(default)]
        center: f64,
    },
    /// V(x) = `strength * delta(x - center)`.
    Delta {
        strength: f64,
        #[serde(default)]
        center: f64,
    },
    /// V(x) = `v0 * exp(-(x - center)^2 / (2 sigma^2))`.
    Gaussian {
        v0: f64,
        sigma: f64,
        #[serde(default)]
        center: f64,
    },
    /// Piecewise-linear interpolation of `(xs, vs)` samples, with constant
    /// extrapolation equal to the declared asymptotes outside the table.
    Tabulated {
        xs: Vec<f64>,
        vs: Vec<f64>,
        v_minus_inf: f64,
        v_plus_inf: f64,
    },
    /// V(x) = base(x) + epsilon * delta_v(x).
    Shifted {
        base: Box<Potential>,
        delta_v: Box<Potential>,
        epsilon: f64,
    },
}

impl Potential {
    pub fn square_barrier(v0: f64, width: f64, center: f64) -> Self {
        Potential::SquareBarrier { v0, width, center }
    }

    pub fn gaussian(v0: f64, sigma: f64, center: f64) -> Self {
        Potential::Gaussian { v0, sigma, center }
    }

    pub fn delta(strength: f64, center: f64) -> Self {
        Potential::Delta { strength, center }
    }

    pub fn step(v_plus: f64) -> Self {
        Potential::Step { v_plus, center: 0.0 }
    }

    pub fn shifted(base: Potential, delta_v: Potential, epsilon: f64) -> Self {
        Potential::Shifted {
            base: Box::new(base),
            delta_v: Box::new(delta_v),
            epsilon,
        }
    }

    /// Asymptotic value as x -> -inf.
    pub fn v_minus_inf(&self) -> f64 {
        match self {
            Potential::Free
            | Potential::Step { .. }
            | Potential::SquareBarrier { .. }
            | Potential::Delta { .. }
            | Potential::Gaussian { .. } => 0.0,
            Potential::Tabulated { v_minus_inf, .. } => *v_minus_inf,
            Potential::Shifted {
                base,
                delta_v,
                epsilon,
            } => base.v_minus_inf() + epsilon * delta_v.v_minus_inf(),
        }
    }

    /// Asymptotic value as x -> +inf.
    pub fn v_plus_inf(&self) -> f64 {
        match self {
            Potential::Free
            | Potential::SquareBarrier { .. }
            | Potential::Delta { .. }
            | Potential::Gaussian { .. } => 0.0,
            Potential::Step { v_plus, .. } => *v_plus,
            Potential::Tabulated { v_plus_inf, .. } => *v_plus_inf,
            Potential::Shifted {
                base,
                delta_v,
                epsilon,
            } => base.v_plus_inf() + epsilon * delta_v.v_plus_inf(),
        }
    }

    pub fn max_asymptote(&self) -> f64 {
        self.v_minus_inf().max(self.v_plus_inf())
    }

    /// Strict pointwise evaluation of V(x).
    ///
    /// Errors for pure point-mass kinds (the value is not a function there)
    /// and for x outside a tabulated range. Exact for analytic kinds.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        match self {
            Potential::Delta { .. } => Err(Error::PointMassEvaluation),
            Potential::Tabulated { xs, .. } => {
                let (lo, hi) = (xs[0], xs[xs.len() - 1]);
                if x < lo || x > hi {
                    Err(Error::TabulatedOutOfRange { x, lo, hi })
                } else {
                    Ok(self.regular_part(x))
                }
            }
            Potential::Shifted {
                base,
                delta_v,
                epsilon,
            } => Ok(base.evaluate(x)? + epsilon * delta_v.evaluate(x)?),
            _ => Ok(self.regular_part(x)),
        }
    }

    /// The regular (non-point-mass) part of V(x), defined on all of R.
    ///
    /// Tabulated kinds extrapolate with their declared asymptotes; delta
    /// kinds contribute nothing. This is the evaluation used by the
    /// integrators, which account for point masses separately.
    pub fn regular_part(&self, x: f64) -> f64 {
        match self {
            Potential::Free | Potential::Delta { .. } => 0.0,
            Potential::Step { v_plus, center } => {
                if x < *center {
                    0.0
                } else {
                    *v_plus
                }
            }
            // half-open [lo, hi), matching the region convention of the
            // closed-form comparison solutions
            Potential::SquareBarrier { v0, width, center } => {
                if x >= center - 0.5 * width && x < center + 0.5 * width {
                    *v0
                } else {
                    0.0
                }
            }
            Potential::Gaussian { v0, sigma, center } => {
                let u = (x - center) / sigma;
                v0 * (-0.5 * u * u).exp()
            }
            Potential::Tabulated {
                xs,
                vs,
                v_minus_inf,
                v_plus_inf,
            } => {
                let n = xs.len();
                if x <= xs[0] {
                    if x < xs[0] {
                        return *v_minus_inf;
                    }
                    return vs[0];
                }
                if x >= xs[n - 1] {
                    if x > xs[n - 1] {
                        return *v_plus_inf;
                    }
                    return vs[n - 1];
                }
                let i = match xs.binary_search_by(|p| p.partial_cmp(&x).unwrap()) {
                    Ok(i) => return vs[i],
                    Err(i) => i,
                };
                let t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
                vs[i - 1] + t * (vs[i] - vs[i - 1])
            }
            Potential::Shifted {
                base,
                delta_v,
                epsilon,
            } => base.regular_part(x) + epsilon * delta_v.regular_part(x),
        }
    }

    /// All point masses carried by this potential, outermost first.
    pub fn point_masses(&self) -> Vec<PointMass> {
        let mut out = Vec::new();
        self.collect_point_masses(1.0, &mut out);
        out.sort_by(|a, b| a.position.partial_cmp(&b.position).unwrap());
        out
    }

    fn collect_point_masses(&self, scale: f64, out: &mut Vec<PointMass>) {
        match self {
            Potential::Delta { strength, center } => out.push(PointMass {
                position: *center,
                weight: scale * strength,
            }),
            Potential::Shifted {
                base,
                delta_v,
                epsilon,
            } => {
                base.collect_point_masses(scale, out);
                delta_v.collect_point_masses(scale * epsilon, out);
            }
            _ => {}
        }
    }

    /// Positions where the regular part is non-smooth (kinks, jumps) or a
    /// point mass sits. Integrators split the domain here.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.collect_breakpoints(&mut out);
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup();
        out
    }

    fn collect_breakpoints(&self, out: &mut Vec<f64>) {
        match self {
            Potential::Free | Potential::Gaussian { .. } => {}
            Potential::Step { center, .. } | Potential::Delta { center, .. } => out.push(*center),
            Potential::SquareBarrier { width, center, .. } => {
                out.push(center - 0.5 * width);
                out.push(center + 0.5 * width);
            }
            Potential::Tabulated { xs, .. } => out.extend_from_slice(xs),
            Potential::Shifted { base, delta_v, .. } => {
                base.collect_breakpoints(out);
                delta_v.collect_breakpoints(out);
            }
        }
    }

    /// Hull of the region where |V(x) - asymptote| may exceed `threshold`.
    /// `None` means the potential is flat to within `threshold` everywhere.
    pub fn support_window(&self, threshold: f64) -> Option<(f64, f64)> {
        match self {
            Potential::Free => None,
            Potential::Step { center, .. } | Potential::Delta { center, .. } => {
                Some((*center, *center))
            }
            Potential::SquareBarrier { v0, width, center } => {
                if v0.abs() <= threshold {
                    None
                } else {
                    Some((center - 0.5 * width, center + 0.5 * width))
                }
            }
            Potential::Gaussian { v0, sigma, center } => {
                if v0.abs() <= threshold {
                    None
                } else {
                    let half = sigma * (2.0 * (v0.abs() / threshold).ln()).sqrt();
                    Some((center - half, center + half))
                }
            }
            Potential::Tabulated { xs, .. } => Some((xs[0], xs[xs.len() - 1])),
            Potential::Shifted {
                base,
                delta_v,
                epsilon,
            } => {
                let b = base.support_window(threshold);
                let d = if *epsilon == 0.0 {
                    None
                } else {
                    delta_v.support_window(threshold / epsilon.abs())
                };
                hull(b, d)
            }
        }
    }

    /// Validates structural invariants: finite asymptotes, positive widths,
    /// strictly increasing tabulated abscissae.
    pub fn validate(&self) -> Result<()> {
        let (vm, vp) = (self.v_minus_inf(), self.v_plus_inf());
        if !vm.is_finite() || !vp.is_finite() {
            return Err(Error::InvalidPotential(format!(
                "asymptotes must be finite, got ({vm}, {vp})"
            )));
        }
        match self {
            Potential::SquareBarrier { width, .. } if *width <= 0.0 => Err(
                Error::InvalidPotential(format!("square barrier width {width} must be positive")),
            ),
            Potential::Gaussian { sigma, .. } if *sigma <= 0.0 => Err(Error::InvalidPotential(
                format!("gaussian sigma {sigma} must be positive"),
            )),
            Potential::Tabulated { xs, vs, .. } => {
                if xs.len() < 2 || xs.len() != vs.len() {
                    return Err(Error::InvalidPotential(
                        "tabulated potential needs matching xs/vs with at least 2 samples".into(),
                    ));
                }
                if xs.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidPotential(
                        "tabulated xs must be strictly increasing".into(),
                    ));
                }
                Ok(())
            }
            Potential::Shifted { base, delta_v, .. } => {
                base.validate()?;
                delta_v.validate()
            }
            _ => Ok(()),
        }
    }
}

fn hull(a: Option<(f64, f64)>, b: Option<(f64, f64)>) -> Option<(f64, f64)> {
    match (a, b) {
        (None, w) | (w, None) => w,
        (Some((a0, a1)), Some((b0, b1))) => Some((a0.min(b0), a1.max(b1))),
    }
}

/// Local wave-number profile `k(x)^2 = E - V(x)` for an open channel.
#[derive(Debug, Clone)]
pub struct WaveNumberProfile {
    potential: Potential,
    energy: f64,
    k_minus_inf: f64,
    k_plus_inf: f64,
}

impl WaveNumberProfile {
    /// Builds the profile, rejecting energies at or below either asymptote.
    pub fn new(potential: &Potential, energy: f64) -> Result<Self> {
        potential.validate()?;
        let (vm, vp) = (potential.v_minus_inf(), potential.v_plus_inf());
        if energy <= vm.max(vp) {
            return Err(Error::NoOpenChannel {
                energy,
                v_minus: vm,
                v_plus: vp,
            });
        }
        Ok(WaveNumberProfile {
            potential: potential.clone(),
            energy,
            k_minus_inf: (energy - vm).sqrt(),
            k_plus_inf: (energy - vp).sqrt(),
        })
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    /// `k(x)^2 = E - V(x)` using the regular part of the potential.
    pub fn k_squared(&self, x: f64) -> f64 {
        self.energy - self.potential.regular_part(x)
    }

    pub fn k_minus_inf(&self) -> f64 {
        self.k_minus_inf
    }

    pub fn k_plus_inf(&self) -> f64 {
        self.k_plus_inf
    }
}

/// Exact scattering data for one energy: overall Bogoliubov coefficients
/// and the transmission/reflection probabilities they imply.
#[derive(Debug, Clone, Copy)]
pub struct ScatterResult {
    pub alpha: Complex64,
    pub beta: Complex64,
    /// Transmission probability `1/|alpha|^2`.
    pub t: f64,
    /// Reflection probability `1 - T`.
    pub r: f64,
}

impl ScatterResult {
    pub fn from_bogoliubov(alpha: Complex64, beta: Complex64) -> Self {
        let t = 1.0 / alpha.norm_sqr();
        ScatterResult {
            alpha,
            beta,
            t,
            r: 1.0 - t,
        }
    }

    /// `|alpha|^2 - |beta|^2 - 1`; zero for exact flux conservation.
    pub fn flux_defect(&self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr() - 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_barrier_values() {
        let p = Potential::square_barrier(1.0, 1.0, 0.0);
        assert_eq!(p.evaluate(0.0).unwrap(), 1.0);
        assert_eq!(p.evaluate(10.0).unwrap(), 0.0);
        assert_eq!(p.evaluate(-0.5).unwrap(), 1.0); // half-open edges
        assert_eq!(p.evaluate(0.5).unwrap(), 0.0);
    }

    #[test]
    fn gaussian_value() {
        let p = Potential::gaussian(1.0, 1.0, 0.0);
        let v = p.evaluate(1.0).unwrap();
        assert!((v - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn delta_has_no_pointwise_value() {
        let p = Potential::delta(1.0, 0.0);
        assert!(matches!(p.evaluate(0.0), Err(Error::PointMassEvaluation)));
        let pm = p.point_masses();
        assert_eq!(pm.len(), 1);
        assert_eq!(pm[0].weight, 1.0);
    }

    #[test]
    fn tabulated_interpolation_and_range() {
        let p = Potential::Tabulated {
            xs: vec![-1.0, 0.0, 1.0],
            vs: vec![0.0, 2.0, 0.0],
            v_minus_inf: 0.0,
            v_plus_inf: 0.0,
        };
        assert_eq!(p.evaluate(-0.5).unwrap(), 1.0);
        assert!(matches!(
            p.evaluate(2.0),
            Err(Error::TabulatedOutOfRange { .. })
        ));
        // constant extrapolation outside the table
        assert_eq!(p.regular_part(5.0), 0.0);
    }

    #[test]
    fn shifted_combines_parts() {
        let p = Potential::shifted(
            Potential::step(0.5),
            Potential::gaussian(1.0, 1.0, 0.0),
            0.25,
        );
        assert!((p.evaluate(0.0).unwrap() - (0.5 + 0.25)).abs() < 1e-15);
        assert_eq!(p.v_minus_inf(), 0.0);
        assert_eq!(p.v_plus_inf(), 0.5);
    }

    #[test]
    fn wave_numbers() {
        let free = WaveNumberProfile::new(&Potential::Free, 2.0).unwrap();
        assert_eq!(free.k_squared(3.7), 2.0);
        assert!((free.k_minus_inf() - 2.0f64.sqrt()).abs() < 1e-15);

        let sb = WaveNumberProfile::new(&Potential::square_barrier(1.0, 1.0, 0.0), 2.0).unwrap();
        assert_eq!(sb.k_squared(0.0), 1.0);
        assert_eq!(sb.k_squared(3.0), 2.0);

        let step = WaveNumberProfile::new(&Potential::step(0.5), 1.0).unwrap();
        assert!((step.k_minus_inf() - 1.0).abs() < 1e-15);
        assert!((step.k_plus_inf() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn closed_channel_rejected() {
        assert!(matches!(
            WaveNumberProfile::new(&Potential::step(2.0), 1.5),
            Err(Error::NoOpenChannel { .. })
        ));
        assert!(matches!(
            WaveNumberProfile::new(&Potential::Free, 0.0),
            Err(Error::NoOpenChannel { .. })
        ));
    }

    #[test]
    fn support_windows_reach_asymptotes() {
        let tol = 1e-10;
        for p in [
            Potential::square_barrier(1.0, 1.0, 0.3),
            Potential::gaussian(-2.0, 0.7, -1.0),
            Potential::shifted(
                Potential::square_barrier(1.0, 1.0, 0.0),
                Potential::gaussian(1.0, 0.5, 0.2),
                0.01,
            ),
        ] {
            let (lo, hi) = p.support_window(tol).unwrap();
            assert!((p.regular_part(lo - 1e-9) - p.v_minus_inf()).abs() <= tol);
            assert!((p.regular_part(hi + 1e-9) - p.v_plus_inf()).abs() <= tol);
        }
    }

    #[test]
    fn k_squared_monotone_in_energy() {
        let p = Potential::gaussian(1.0, 1.0, 0.0);
        let lo = WaveNumberProfile::new(&p, 1.5).unwrap();
        let hi = WaveNumberProfile::new(&p, 2.5).unwrap();
        for i in 0..50 {
            let x = -5.0 + 0.2 * i as f64;
            assert!(hi.k_squared(x) > lo.k_squared(x));
        }
    }
}
