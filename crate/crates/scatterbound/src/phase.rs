//! Magnitude/phase diagnostics for amplitude trajectories.
//!
//! Writing `|a| = cosh(Theta)`, `|b| = sinh(Theta)` and collecting the
//! phases into the net phase `Delta = arg a - arg b + 2 arg psi0`, the
//! growth of the pair is governed by
//!
//! ```text
//! Theta(x) = 1/2 * integral of (k^2 - k0^2) |psi0|^2 sin(Delta) dx
//! Delta'   = (k^2 - k0^2) |psi0|^2 + 2 phi0'
//!            + (k^2 - k0^2) |psi0|^2 cos(Delta) coth(2 Theta)
//! ```
//!
//! Both relations are verified as residuals on computed trajectories; the
//! `Delta` equation is singular at the launch point where `b = 0`, so it is
//! never integrated forward.

use crate::comparison::ComparisonSolution;
use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::solver::AbTrajectory;

/// Largest tolerated phase step between adjacent stored nodes; beyond this
/// the nearest-branch continuation is ambiguous.
const MAX_PHASE_JUMP: f64 = 3.0;

/// Amplitudes with |b| below this carry no usable phase.
const B_FLOOR: f64 = 1e-12;

/// Unwrapped phase data at one trajectory node.
#[derive(Debug, Clone, Copy)]
pub struct PhaseState {
    pub x: f64,
    /// `arccosh |a|`, so `cosh(theta) = |a|` and `sinh(theta) = |b|`.
    pub theta: f64,
    /// Net phase `arg a - arg b + 2 arg psi0`, continued across nodes.
    pub delta: f64,
    /// Unwrapped phase of the comparison wavefunction.
    pub phi0: f64,
}

fn unwrap_step(prev: f64, raw: f64, x_prev: f64, x: f64) -> Result<f64> {
    let mut d = (raw - prev) % std::f64::consts::TAU;
    if d > std::f64::consts::PI {
        d -= std::f64::consts::TAU;
    } else if d < -std::f64::consts::PI {
        d += std::f64::consts::TAU;
    }
    if d.abs() > MAX_PHASE_JUMP {
        return Err(Error::PhaseUnwrap {
            jump: d.abs(),
            x_prev,
            x,
        });
    }
    Ok(prev + d)
}

/// Computes `Theta`, unwrapped phases, and the net phase `Delta` at every
/// stored node of an amplitude trajectory.
///
/// `b` vanishes at the launch point; its phase there is back-filled from
/// the first node where `|b|` is resolvable, which is exact in the limit
/// because `arg b` is locally constant across a simple zero.
pub fn phase_trajectory(
    trajectory: &AbTrajectory,
    comparison: &ComparisonSolution,
) -> Result<Vec<PhaseState>> {
    let states = &trajectory.states;
    let n = states.len();

    let mut phi_a = vec![0.0; n];
    let mut phi_b = vec![0.0; n];
    let mut phi0 = vec![0.0; n];
    let mut theta = vec![0.0; n];

    phi_a[0] = states[0].a.arg();
    phi0[0] = comparison.psi(states[0].x).arg();
    theta[0] = acosh_clamped(states[0].a.norm());
    for i in 1..n {
        theta[i] = acosh_clamped(states[i].a.norm());
        phi_a[i] = unwrap_step(
            phi_a[i - 1],
            states[i].a.arg(),
            states[i - 1].x,
            states[i].x,
        )?;
        phi0[i] = unwrap_step(
            phi0[i - 1],
            comparison.psi(states[i].x).arg(),
            states[i - 1].x,
            states[i].x,
        )?;
    }

    let first_b = states.iter().position(|s| s.b.norm() > B_FLOOR);
    if let Some(j) = first_b {
        phi_b[j] = states[j].b.arg();
        for i in (0..j).rev() {
            phi_b[i] = phi_b[j];
        }
        for i in j + 1..n {
            if states[i].b.norm() > B_FLOOR {
                phi_b[i] = unwrap_step(
                    phi_b[i - 1],
                    states[i].b.arg(),
                    states[i - 1].x,
                    states[i].x,
                )?;
            } else {
                phi_b[i] = phi_b[i - 1];
            }
        }
    }

    Ok((0..n)
        .map(|i| PhaseState {
            x: states[i].x,
            theta: theta[i],
            delta: phi_a[i] - phi_b[i] + 2.0 * phi0[i],
            phi0: phi0[i],
        })
        .collect())
}

fn acosh_clamped(v: f64) -> f64 {
    if v <= 1.0 {
        0.0
    } else {
        v.acosh()
    }
}

/// Running trapezoid accumulation of
/// `1/2 * integral (k^2 - k0^2) |psi0|^2 sin(Delta) dx`, one value per node.
///
/// `k^2 - k0^2` can jump exactly at a stored node (barrier edges are always
/// nodes), so that factor is sampled at the panel midpoint, which always
/// lies in a single smooth piece; the continuous `|psi0|^2 sin(Delta)`
/// factor is trapezoid-averaged over the panel ends.
pub fn theta_running_integral(
    phases: &[PhaseState],
    comparison: &ComparisonSolution,
    spec: &Potential,
) -> Vec<f64> {
    let energy = comparison.energy();
    let smooth = |p: &PhaseState| 0.5 * comparison.psi(p.x).norm_sqr() * p.delta.sin();
    let mut out = Vec::with_capacity(phases.len());
    let mut acc = 0.0;
    let mut prev: Option<(&PhaseState, f64)> = None;
    for p in phases {
        let s = smooth(p);
        if let Some((q, s_prev)) = prev {
            let xm = 0.5 * (q.x + p.x);
            let d = (energy - spec.regular_part(xm)) - comparison.k0_squared(xm);
            acc += d * 0.5 * (s + s_prev) * (p.x - q.x);
        }
        prev = Some((p, s));
        out.push(acc);
    }
    out
}

/// Maximum finite-difference residual of the net-phase equation
///
/// ```text
/// Delta' - [(k^2-k0^2)|psi0|^2 + 2 phi0'] - (k^2-k0^2)|psi0|^2 cos(Delta) coth(2 Theta)
/// ```
///
/// restricted to interior nodes with `sinh(2 Theta) > 1e-3`, where the
/// equation is regular. Nodes whose three-point stencil touches a potential
/// breakpoint are skipped too: `Delta'` jumps there and no finite-difference
/// value exists. Errors if fewer than 3 nodes qualify.
pub fn nett_phase_residual(
    phases: &[PhaseState],
    comparison: &ComparisonSolution,
    spec: &Potential,
) -> Result<f64> {
    let energy = comparison.energy();
    let mut breaks = spec.breakpoints();
    breaks.extend(comparison.potential().breakpoints());
    let mut worst = 0.0f64;
    let mut usable = 0usize;

    for w in phases.windows(3) {
        let (l, m, r) = (&w[0], &w[1], &w[2]);
        let s2t = (2.0 * m.theta).sinh();
        if s2t <= 1e-3 {
            continue;
        }
        let h1 = m.x - l.x;
        let h2 = r.x - m.x;
        if h1 <= 0.0 || h2 <= 0.0 {
            continue;
        }
        if breaks.iter().any(|&b| l.x <= b && b <= r.x) {
            continue;
        }
        usable += 1;

        // second-order first derivative on a non-uniform stencil
        let d_delta = -h2 / (h1 * (h1 + h2)) * l.delta
            + (h2 - h1) / (h1 * h2) * m.delta
            + h1 / (h2 * (h1 + h2)) * r.delta;

        let g = ((energy - spec.regular_part(m.x)) - comparison.k0_squared(m.x))
            * comparison.psi(m.x).norm_sqr();
        // unit flux makes phi0' = 1/|psi0|^2 exactly
        let phi0_prime = 1.0 / comparison.psi(m.x).norm_sqr();
        let rhs = g + 2.0 * phi0_prime + g * m.delta.cos() * (2.0 * m.theta).cosh() / s2t;

        worst = worst.max((d_delta - rhs).abs());
    }

    if usable < 3 {
        return Err(Error::InsufficientNodes {
            count: usable,
            needed: 3,
        });
    }
    Ok(worst)
}
