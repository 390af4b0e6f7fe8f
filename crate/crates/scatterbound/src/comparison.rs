//! Exactly solvable comparison problems.
//!
//! Each [`ComparisonSolution`] carries a closed-form, flux-normalized
//! wavefunction `psi0` for a piecewise-constant (or point-mass) potential,
//! together with its Bogoliubov coefficients `alpha0`, `beta0` and
//! transmission `T0`. The normalization convention is unit incident flux
//! from the left:
//!
//! ```text
//! psi0(x -> -inf) = exp(i k_- x) / sqrt(k_-)
//! psi0(x -> +inf) = [alpha0 exp(i k_+ x) + beta0 exp(-i k_+ x)] / sqrt(k_+)
//! ```
//!
//! so the probability current Im{psi0* psi0'} equals 1 everywhere and
//! `|alpha0|^2 - |beta0|^2 = 1` exactly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::potential::Potential;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// One maximal interval on which `k0^2` is constant.
///
/// The wavefunction there is `c_plus e^{i kappa x} + c_minus e^{-i kappa x}`
/// with `kappa = sqrt(k0^2)` taken on the principal branch, so an
/// under-barrier region (`k0^2 < 0`) gets `kappa = i * |kappa|` and the
/// basis turns into real exponentials automatically.
#[derive(Debug, Clone, Copy)]
struct Region {
    x_hi: f64, // right edge; the last region extends to +inf
    k0_squared: f64,
    kappa: Complex64,
    c_plus: Complex64,
    c_minus: Complex64,
}

impl Region {
    fn psi(&self, x: f64) -> Complex64 {
        let phase = I * self.kappa * x;
        self.c_plus * phase.exp() + self.c_minus * (-phase).exp()
    }

    fn dpsi(&self, x: f64) -> Complex64 {
        let phase = I * self.kappa * x;
        I * self.kappa * (self.c_plus * phase.exp() - self.c_minus * (-phase).exp())
    }
}

/// Closed-form scattering solution of an exactly solvable potential.
#[derive(Debug, Clone)]
pub struct ComparisonSolution {
    potential: Potential,
    energy: f64,
    regions: Vec<Region>,
    pub alpha0: Complex64,
    pub beta0: Complex64,
    /// Transmission probability `1/|alpha0|^2`.
    pub t0: f64,
}

impl ComparisonSolution {
    /// Free particle: `psi0 = exp(i k0 x)/sqrt(k0)`, `alpha0 = 1`, `beta0 = 0`.
    pub fn free(energy: f64) -> Result<Self> {
        let mut solution = Self::from_interfaces(Potential::Free, energy, &[], &[energy])?;
        // pin the coefficients exactly; the matcher leaves 1-ulp residue
        solution.alpha0 = Complex64::new(1.0, 0.0);
        solution.beta0 = Complex64::new(0.0, 0.0);
        solution.t0 = 1.0;
        Ok(solution)
    }

    /// Square barrier (or well for `v0 < 0`) of height `v0` and width
    /// `width`, centered at the origin. Rejects `energy == v0` where the
    /// interior solution degenerates to a linear function.
    pub fn square_barrier(v0: f64, width: f64, energy: f64) -> Result<Self> {
        if width <= 0.0 {
            return Err(Error::InvalidPotential(format!(
                "square barrier width {width} must be positive"
            )));
        }
        if energy == v0 {
            return Err(Error::DegenerateEnergy { energy });
        }
        let potential = Potential::square_barrier(v0, width, 0.0);
        let half = 0.5 * width;
        Self::from_interfaces(
            potential,
            energy,
            &[(-half, 0.0), (half, 0.0)],
            &[energy, energy - v0, energy],
        )
    }

    /// Attractive or repulsive point potential `strength * delta(x)`.
    pub fn delta(strength: f64, energy: f64) -> Result<Self> {
        Self::from_interfaces(
            Potential::delta(strength, 0.0),
            energy,
            &[(0.0, strength)],
            &[energy, energy],
        )
    }

    /// Potential step at the origin: 0 on the left, `v_plus` on the right.
    pub fn step(v_plus: f64, energy: f64) -> Result<Self> {
        Self::from_interfaces(
            Potential::step(v_plus),
            energy,
            &[(0.0, 0.0)],
            &[energy, energy - v_plus],
        )
    }

    /// Propagates the flux-normalized left plane wave through a list of
    /// interfaces. `interfaces[i]` is `(position, point-mass weight)` and
    /// `k0_squared` has one entry per region (one more than interfaces).
    fn from_interfaces(
        potential: Potential,
        energy: f64,
        interfaces: &[(f64, f64)],
        k0_squared: &[f64],
    ) -> Result<Self> {
        debug_assert_eq!(k0_squared.len(), interfaces.len() + 1);
        let (vm, vp) = (potential.v_minus_inf(), potential.v_plus_inf());
        if energy <= vm.max(vp) || k0_squared[0] <= 0.0 || k0_squared[k0_squared.len() - 1] <= 0.0 {
            return Err(Error::NoOpenChannel {
                energy,
                v_minus: vm,
                v_plus: vp,
            });
        }

        let k_minus = k0_squared[0].sqrt();
        let mut regions = Vec::with_capacity(k0_squared.len());
        let mut c_plus = Complex64::new(1.0 / k_minus.sqrt(), 0.0);
        let mut c_minus = Complex64::new(0.0, 0.0);
        let mut kappa = Complex64::new(k_minus, 0.0);

        for (i, &(x0, weight)) in interfaces.iter().enumerate() {
            regions.push(Region {
                x_hi: x0,
                k0_squared: k0_squared[i],
                kappa,
                c_plus,
                c_minus,
            });
            let left = regions.last().unwrap();
            let psi = left.psi(x0);
            let dpsi = left.dpsi(x0) + weight * psi;

            let k2_next = Complex64::new(k0_squared[i + 1], 0.0);
            let kappa_next = k2_next.sqrt();
            let phase = (I * kappa_next * x0).exp();
            c_plus = 0.5 * (psi + dpsi / (I * kappa_next)) / phase;
            c_minus = 0.5 * (psi - dpsi / (I * kappa_next)) * phase;
            kappa = kappa_next;
        }
        regions.push(Region {
            x_hi: f64::INFINITY,
            k0_squared: k0_squared[k0_squared.len() - 1],
            kappa,
            c_plus,
            c_minus,
        });

        let k_plus = k0_squared[k0_squared.len() - 1].sqrt();
        let scale = k_plus.sqrt();
        let alpha0 = c_plus * scale;
        let beta0 = c_minus * scale;
        let t0 = 1.0 / alpha0.norm_sqr();

        Ok(ComparisonSolution {
            potential,
            energy,
            regions,
            alpha0,
            beta0,
            t0,
        })
    }

    fn region_at(&self, x: f64) -> &Region {
        let idx = self
            .regions
            .iter()
            .position(|r| x < r.x_hi)
            .unwrap_or(self.regions.len() - 1);
        &self.regions[idx]
    }

    pub fn psi(&self, x: f64) -> Complex64 {
        self.region_at(x).psi(x)
    }

    pub fn dpsi(&self, x: f64) -> Complex64 {
        self.region_at(x).dpsi(x)
    }

    /// `k0(x)^2 = E - V0(x)`, constant per region.
    pub fn k0_squared(&self, x: f64) -> f64 {
        self.region_at(x).k0_squared
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    /// Asymptotic wave number on the left.
    pub fn k_minus_inf(&self) -> f64 {
        self.regions[0].k0_squared.sqrt()
    }

    /// Asymptotic wave number on the right.
    pub fn k_plus_inf(&self) -> f64 {
        self.regions[self.regions.len() - 1].k0_squared.sqrt()
    }

    /// Probability current Im{psi0* psi0'}; equals 1 by construction.
    pub fn flux_at(&self, x: f64) -> f64 {
        (self.psi(x).conj() * self.dpsi(x)).im
    }

    /// `Theta0 = arccosh|alpha0|`, evaluated in a cancellation-free form.
    pub fn theta0(&self) -> f64 {
        // |alpha0| = 1/sqrt(T0); write |alpha0| = 1 + u with exact u.
        let t0 = self.t0;
        let u = (1.0 - t0) / (t0.sqrt() * (1.0 + t0.sqrt()));
        acosh1p(u)
    }
}

/// `arccosh(1 + u)` without cancellation near `u = 0`. Sub-ulp negative
/// inputs from rounding are treated as zero.
pub(crate) fn acosh1p(u: f64) -> f64 {
    let u = u.max(0.0);
    (u + (u * (2.0 + u)).sqrt()).ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Textbook transmission through a rectangular barrier, handling both
    /// over- and under-barrier energies. Independent of the region matcher.
    fn square_barrier_t_oracle(v0: f64, width: f64, energy: f64) -> f64 {
        let denom = 4.0 * energy * (energy - v0);
        let q = (energy - v0).abs().sqrt() * width;
        let s = if energy > v0 { q.sin() } else { q.sinh() };
        1.0 / (1.0 + v0 * v0 * s * s / denom.abs())
    }

    fn sample_points() -> Vec<f64> {
        (0..100).map(|i| -7.0 + 0.141 * i as f64).collect()
    }

    /// Second derivative by Richardson-extrapolated central differences.
    fn d2_fd(f: impl Fn(f64) -> Complex64, x: f64) -> Complex64 {
        let h = 1e-2;
        let d2 = |h: f64| (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        (4.0 * d2(0.5 * h) - d2(h)) / 3.0
    }

    /// First derivative by Richardson-extrapolated central differences.
    fn d1_fd(f: impl Fn(f64) -> Complex64, x: f64) -> Complex64 {
        let h = 1e-3;
        let d1 = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
        (4.0 * d1(0.5 * h) - d1(h)) / 3.0
    }

    #[test]
    fn free_particle() {
        let c = ComparisonSolution::free(1.0).unwrap();
        for x in sample_points() {
            assert!((c.psi(x).norm_sqr() - 1.0).abs() < 1e-14);
        }
        let c4 = ComparisonSolution::free(4.0).unwrap();
        assert!((c4.psi(0.3).norm_sqr() - 0.5).abs() < 1e-14);
        assert_eq!(c4.alpha0, Complex64::new(1.0, 0.0));
        assert_eq!(c4.beta0, Complex64::new(0.0, 0.0));
        assert_eq!(c4.t0, 1.0);
    }

    #[test]
    fn free_flux_by_finite_difference() {
        // independent numerical-differentiation oracle for the current
        let c = ComparisonSolution::free(2.0).unwrap();
        let x = 0.3;
        let dpsi = d1_fd(|x| c.psi(x), x);
        let j = (c.psi(x).conj() * dpsi).im;
        assert!((j - 1.0).abs() < 1e-10, "J = {j}");
    }

    #[test]
    fn square_barrier_transmission() {
        let c = ComparisonSolution::square_barrier(1.0, 1.0, 2.0).unwrap();
        let oracle = square_barrier_t_oracle(1.0, 1.0, 2.0);
        assert!((oracle - 0.918_687_706_882_706_6).abs() < 1e-15);
        assert!((c.t0 - oracle).abs() < 1e-12, "t0 = {}", c.t0);
        assert!((c.alpha0.norm_sqr() - c.beta0.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn square_barrier_under_barrier() {
        let c = ComparisonSolution::square_barrier(2.0, 1.0, 1.0).unwrap();
        let oracle = square_barrier_t_oracle(2.0, 1.0, 1.0);
        assert!((oracle - 0.419_974_341_614_026_1).abs() < 1e-15);
        assert!((c.t0 - oracle).abs() < 1e-12);
        // unit flux holds through the classically forbidden region
        for x in sample_points() {
            assert!((c.flux_at(x) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn square_barrier_free_limit() {
        let c = ComparisonSolution::square_barrier(1e-12, 1.0, 2.0).unwrap();
        assert!((c.alpha0 - Complex64::new(1.0, 0.0)).norm() < 1e-11);
        assert!(c.beta0.norm() < 1e-12);
        assert!((c.t0 - 1.0).abs() < 1e-11);
    }

    #[test]
    fn square_barrier_degenerate_energy() {
        assert!(matches!(
            ComparisonSolution::square_barrier(2.0, 1.0, 2.0),
            Err(Error::DegenerateEnergy { .. })
        ));
    }

    #[test]
    fn delta_transmission() {
        let c = ComparisonSolution::delta(1.0, 1.0).unwrap();
        assert!((c.t0 - 0.8).abs() < 1e-14);
        assert!((c.beta0.norm() - 0.5).abs() < 1e-14);
        assert!((c.beta0.norm() - (1.0 / c.t0 - 1.0).sqrt()).abs() < 1e-14);

        let none = ComparisonSolution::delta(0.0, 1.0).unwrap();
        assert!((none.t0 - 1.0).abs() < 1e-15);
        assert!(none.beta0.norm() < 1e-15);
    }

    #[test]
    fn step_transmission() {
        let c = ComparisonSolution::step(0.75, 1.0).unwrap();
        // closed-form step transmission 4 k- k+ / (k- + k+)^2
        let (km, kp) = (1.0f64, 0.5f64);
        let oracle = 4.0 * km * kp / ((km + kp) * (km + kp));
        assert!((oracle - 8.0 / 9.0).abs() < 1e-15);
        assert!((c.t0 - oracle).abs() < 1e-14);
        assert!((c.alpha0.norm_sqr() - c.beta0.norm_sqr() - 1.0).abs() < 1e-13);

        let trivial = ComparisonSolution::step(0.0, 1.0).unwrap();
        let free = ComparisonSolution::free(1.0).unwrap();
        for x in [-2.0, 0.0, 1.3] {
            assert!((trivial.psi(x) - free.psi(x)).norm() < 1e-14);
        }
    }

    #[test]
    fn unit_flux_everywhere() {
        let cases: Vec<ComparisonSolution> = vec![
            ComparisonSolution::free(1.7).unwrap(),
            ComparisonSolution::square_barrier(1.0, 1.0, 2.0).unwrap(),
            ComparisonSolution::square_barrier(2.0, 1.5, 0.8).unwrap(),
            ComparisonSolution::square_barrier(-1.0, 2.0, 1.0).unwrap(),
            ComparisonSolution::delta(1.0, 1.0).unwrap(),
            ComparisonSolution::delta(-0.7, 2.0).unwrap(),
            ComparisonSolution::step(0.75, 1.0).unwrap(),
            ComparisonSolution::step(-0.5, 1.0).unwrap(),
        ];
        for c in &cases {
            for x in sample_points() {
                assert!(
                    (c.flux_at(x) - 1.0).abs() < 1e-10,
                    "flux defect at x = {x} for {:?}",
                    c.potential()
                );
            }
            assert!((c.alpha0.norm_sqr() - c.beta0.norm_sqr() - 1.0).abs() < 1e-12);
            assert!((c.t0 - 1.0 / c.alpha0.norm_sqr()).abs() < 1e-14);
        }
    }

    #[test]
    fn schrodinger_residual_by_finite_difference() {
        let cases = vec![
            ComparisonSolution::free(2.0).unwrap(),
            ComparisonSolution::square_barrier(1.0, 1.0, 2.0).unwrap(),
            ComparisonSolution::square_barrier(2.0, 1.0, 1.0).unwrap(),
            ComparisonSolution::step(0.75, 1.0).unwrap(),
            ComparisonSolution::delta(1.0, 1.0).unwrap(),
        ];
        for c in &cases {
            for x in sample_points() {
                // stay away from matching interfaces and point masses
                if c.potential()
                    .breakpoints()
                    .iter()
                    .any(|b| (x - b).abs() < 0.05)
                {
                    continue;
                }
                let res = d2_fd(|x| c.psi(x), x) + c.k0_squared(x) * c.psi(x);
                assert!(res.norm() < 1e-8, "residual {} at x = {x}", res.norm());
            }
        }
    }

    #[test]
    fn dpsi_matches_finite_difference() {
        let c = ComparisonSolution::square_barrier(1.0, 1.0, 2.0).unwrap();
        for x in [-3.0, -0.2, 0.2, 4.0] {
            let fd = d1_fd(|x| c.psi(x), x);
            assert!((fd - c.dpsi(x)).norm() < 1e-9);
        }
    }

    #[test]
    fn theta0_is_stable_near_unit_transmission() {
        let c = ComparisonSolution::square_barrier(1e-7, 1.0, 2.0).unwrap();
        let theta0 = c.theta0();
        // cosh(theta0) must reproduce |alpha0| to full precision
        assert!((theta0.cosh() - c.alpha0.norm()).abs() < 1e-15);
        let free = ComparisonSolution::free(2.0).unwrap();
        assert_eq!(free.theta0(), 0.0);
    }
}
