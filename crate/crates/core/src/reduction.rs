//! Reduction of scalar high-order equations to first-order systems, and
//! fixed shifts of the independent variable.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{Interval, OdeSystem, Trajectory};
use crate::steppers::{integrate_leg, MethodSpec};

/// Coefficient `p_i(x, state)` multiplying `y^(i)`.
pub type Coefficient = Arc<dyn Fn(f64, &[f64]) -> f64 + Send + Sync>;
/// Forcing term `f(x)`.
pub type Forcing = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `leading * y^(n) + sum_{i<n} p_i(x, state) * y^(i) = f(x)`
///
/// `state` is `(y, y', ..., y^(n-1))`. Coefficients see the whole state so
/// that nonlinear (state-dependent) coefficients can be expressed.
#[derive(Clone)]
pub struct HighOrderPolyOde {
    order: usize,
    leading: f64,
    coefficients: Vec<Coefficient>,
    forcing: Forcing,
}

impl fmt::Debug for HighOrderPolyOde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HighOrderPolyOde")
            .field("order", &self.order)
            .field("leading", &self.leading)
            .finish_non_exhaustive()
    }
}

impl HighOrderPolyOde {
    /// `coefficients[i]` multiplies `y^(i)`; there must be exactly `order` of them.
    pub fn new(order: usize, leading: f64, coefficients: Vec<Coefficient>, forcing: Forcing) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("order must be at least 1".into()));
        }
        if !(leading != 0.0 && leading.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "leading coefficient must be finite and nonzero, got {leading}"
            )));
        }
        if coefficients.len() != order {
            return Err(Error::DimensionMismatch { expected: order, got: coefficients.len() });
        }
        Ok(HighOrderPolyOde { order, leading, coefficients, forcing })
    }

    /// Constant coefficients and constant forcing.
    pub fn constant(leading: f64, coefficients: &[f64], forcing: f64) -> Result<Self> {
        let coeffs = coefficients
            .iter()
            .map(|&c| Arc::new(move |_x: f64, _s: &[f64]| c) as Coefficient)
            .collect();
        Self::new(coefficients.len(), leading, coeffs, Arc::new(move |_x| forcing))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn leading(&self) -> f64 {
        self.leading
    }

    pub fn coefficient(&self, i: usize, x: f64, state: &[f64]) -> f64 {
        (self.coefficients[i])(x, state)
    }

    pub fn forcing(&self, x: f64) -> f64 {
        (self.forcing)(x)
    }

    /// `y^(n)` implied by the equation at `(x, state)`.
    pub fn highest_derivative(&self, x: f64, state: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in (0..self.order).rev() {
            acc -= (self.coefficients[i])(x, state) * state[i];
        }
        acc += (self.forcing)(x);
        acc / self.leading
    }
}

/// State-variable form: `x_1 = y, ..., x_n = y^(n-1)` with `x_i' = x_{i+1}`
/// and `x_n' = (f - sum p_i x_{i+1}) / leading`.
pub fn reduce_to_first_order(high: &HighOrderPolyOde) -> OdeSystem {
    let high = high.clone();
    let n = high.order;
    OdeSystem::new(n, move |x: f64, s: &[f64], d: &mut [f64]| {
        d[..n - 1].copy_from_slice(&s[1..n]);
        d[n - 1] = high.highest_derivative(x, s);
    })
    .expect("order is positive")
}

/// Solves the reduced system backward from `(y, y', ..., y^(n-1))` given at
/// the right end of `interval`.
pub fn solve_high_order_fvp(
    high: &HighOrderPolyOde,
    final_values: &[f64],
    interval: Interval,
    method: &MethodSpec,
    h: f64,
) -> Result<Trajectory> {
    if final_values.len() != high.order {
        return Err(Error::DimensionMismatch { expected: high.order, got: final_values.len() });
    }
    let system = reduce_to_first_order(high);
    integrate_leg(&system, interval.hi(), final_values, interval.lo(), method, h)
}

/// A fixed shift `T` of the independent variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelaySpec {
    shift: f64,
}

impl DelaySpec {
    pub fn new(shift: f64) -> Result<Self> {
        if !shift.is_finite() {
            return Err(Error::InvalidArgument(format!("delay must be finite, got {shift}")));
        }
        Ok(DelaySpec { shift })
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }
}

/// The system `dy/dx = f(x + T, y)`. Segment break points of a piecewise
/// system move to `b - T`.
pub fn shift_delay(system: &OdeSystem, delay: DelaySpec) -> Result<OdeSystem> {
    system.shifted(delay.shift)
}
