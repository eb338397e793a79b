//! Fixed-step classical fourth-order Runge-Kutta integration over flat
//! state arrays, with a per-step observer hook for diagnostics.
//!
//! The integrator is deliberately minimal: no adaptivity, no dense output,
//! no allocation per step, and bitwise-deterministic results.

use crate::error::{GeodesicError, Result};

/// Uniform subdivision of an arc of length `s_total` into `n` steps of size
/// `ds = s_total / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepPlan {
    pub s_total: f64,
    pub n: usize,
    pub ds: f64,
}

impl StepPlan {
    pub fn new(s_total: f64, n: usize) -> Result<Self> {
        if !s_total.is_finite() || s_total < 0.0 {
            return Err(GeodesicError::InvalidPlan {
                reason: "arc length must be finite and non-negative",
            });
        }
        if n == 0 {
            return Err(GeodesicError::InvalidPlan {
                reason: "step count must be at least 1",
            });
        }
        Ok(Self {
            s_total,
            n,
            ds: s_total / n as f64,
        })
    }
}

/// One classical RK4 update of `y` by `ds` under the autonomous derivative
/// map `field`.
pub fn rk4_step<const N: usize, F>(field: &F, y: &[f64; N], ds: f64) -> [f64; N]
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    let k1 = field(y);
    let mut stage = [0.0; N];
    for i in 0..N {
        stage[i] = y[i] + 0.5 * ds * k1[i];
    }
    let k2 = field(&stage);
    for i in 0..N {
        stage[i] = y[i] + 0.5 * ds * k2[i];
    }
    let k3 = field(&stage);
    for i in 0..N {
        stage[i] = y[i] + ds * k3[i];
    }
    let k4 = field(&stage);
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = y[i] + ds / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Apply [`rk4_step`] `plan.n` times starting from `y0` and return the final
/// state.
///
/// The observer is called once with the initial state and once after every
/// step, as `(step index, arc position, state)`; the arc position is
/// recomputed as `i * ds` rather than accumulated. A non-finite state
/// component aborts with the failing step index.
pub fn integrate<const N: usize, F, O>(
    field: F,
    y0: [f64; N],
    plan: &StepPlan,
    mut observer: O,
) -> Result<[f64; N]>
where
    F: Fn(&[f64; N]) -> [f64; N],
    O: FnMut(usize, f64, &[f64; N]),
{
    let mut y = y0;
    observer(0, 0.0, &y);
    for i in 1..=plan.n {
        y = rk4_step(&field, &y, plan.ds);
        if y.iter().any(|v| !v.is_finite()) {
            return Err(GeodesicError::NumericOverflow { step: i });
        }
        observer(i, i as f64 * plan.ds, &y);
    }
    Ok(y)
}
