//! Embedded Dormand-Prince 5(4) integrator with adaptive step control.
//!
//! The systems solved here are small (4 real components), smooth and
//! non-stiff, so a fixed-size explicit pair with FSAL is the right tool.

use crate::error::{Error, Result};

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// 5th-order weights equal the last A row (FSAL); 4th-order weights below.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub(crate) struct StepControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
}

/// Remaining step budget, shared across segments of one solve.
pub(crate) struct StepBudget {
    pub remaining: usize,
    pub max_steps: usize,
}

impl StepBudget {
    pub fn new(max_steps: usize) -> Self {
        StepBudget {
            remaining: max_steps,
            max_steps,
        }
    }

    fn take(&mut self, x: f64) -> Result<()> {
        if self.remaining == 0 {
            return Err(Error::StepLimit {
                max_steps: self.max_steps,
                x,
            });
        }
        self.remaining -= 1;
        Ok(())
    }
}

/// Integrates `y' = f(x, y)` from `x0` to `x1` (either direction),
/// returning the state at `x1`. Accepted interior steps are not reported;
/// callers wanting trajectories split the span into recording segments.
pub(crate) fn integrate<const N: usize, F>(
    f: &F,
    x0: f64,
    x1: f64,
    y0: [f64; N],
    ctrl: StepControl,
    budget: &mut StepBudget,
) -> Result<[f64; N]>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let span = x1 - x0;
    if span == 0.0 {
        return Ok(y0);
    }
    let dir = span.signum();
    let mut x = x0;
    let mut y = y0;
    let mut k1 = f(x, &y);
    let mut h = span / 16.0;

    while (x1 - x) * dir > 0.0 {
        budget.take(x)?;
        if h.abs() > (x1 - x).abs() {
            h = x1 - x;
        }
        if x + h == x {
            return Err(Error::StepUnderflow { x });
        }

        let mut k = [[0.0; N]; 7];
        k[0] = k1;
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                for i in 0..N {
                    ys[i] += h * A[s][j] * kj[i];
                }
            }
            k[s] = f(x + C[s] * h, &ys);
        }
        // k[6] was evaluated at the 5th-order solution point (FSAL)
        let mut y5 = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            for i in 0..N {
                y5[i] += h * A[6][j] * kj[i];
            }
        }

        let mut err_sq = 0.0;
        for i in 0..N {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += (A[6].get(j).copied().unwrap_or(0.0) - B4[j]) * kj[i];
            }
            e *= h;
            let scale = ctrl.abs_tol + ctrl.rel_tol * y[i].abs().max(y5[i].abs());
            err_sq += (e / scale) * (e / scale);
        }
        let err = (err_sq / N as f64).sqrt();

        if err <= 1.0 {
            x += h;
            y = y5;
            k1 = k[6];
        } else {
            k1 = k[0];
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }
    Ok(y)
}
