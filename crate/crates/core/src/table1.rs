//! The reference experiment: `dy/dx = y - 2x/y` on `[0, 1]` with exact
//! solution `sqrt(1 + 2x)`, integrated with RK4 at `h = 0.1` forward from
//! `y(0) = 1` and backward from `y(1) = sqrt(3)`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{AvpProblem, BoundaryCondition, Interval, OdeSystem};
use crate::steppers::{integrate_leg, MethodSpec};

/// Published `(x, y, |error|)` rows, six decimals, forward leg.
pub const FORWARD_REFERENCE: [(f64, f64, f64); 11] = [
    (0.0, 1.000000, 0.000000),
    (0.1, 1.095446, 0.000000),
    (0.2, 1.183217, 0.000001),
    (0.3, 1.264912, 0.000001),
    (0.4, 1.341642, 0.000002),
    (0.5, 1.414216, 0.000002),
    (0.6, 1.483242, 0.000003),
    (0.7, 1.549196, 0.000003),
    (0.8, 1.612455, 0.000004),
    (0.9, 1.673325, 0.000005),
    (1.0, 1.732056, 0.000006),
];

/// Published rows for the backward leg, in integration order.
#[allow(clippy::approx_constant)] // published digits, not the constant
pub const BACKWARD_REFERENCE: [(f64, f64, f64); 11] = [
    (1.0, 1.732051, 0.000000),
    (0.9, 1.673320, 0.000000),
    (0.8, 1.612451, 0.000000),
    (0.7, 1.549193, 0.000000),
    (0.6, 1.483239, 0.000000),
    (0.5, 1.414213, 0.000001),
    (0.4, 1.341640, 0.000001),
    (0.3, 1.264910, 0.000001),
    (0.2, 1.183215, 0.000001),
    (0.1, 1.095444, 0.000001),
    (0.0, 0.999999, 0.000001),
];

pub const STEP: f64 = 0.1;
/// Allowed distance between a computed value and its published counterpart.
pub const VALUE_TOLERANCE: f64 = 2e-6;
/// Allowed true error at any row.
pub const ERROR_TOLERANCE: f64 = 1e-5;

pub fn system() -> OdeSystem {
    OdeSystem::new(1, |x: f64, y: &[f64], d: &mut [f64]| d[0] = y[0] - 2.0 * x / y[0]).expect("scalar system")
}

pub fn exact(x: f64) -> f64 {
    (1.0 + 2.0 * x).sqrt()
}

pub fn exact_vec(x: f64) -> Vec<f64> {
    vec![exact(x)]
}

pub fn interval() -> Interval {
    Interval::new(0.0, 1.0).expect("unit interval")
}

/// The problem with its condition at `x_b`, taken from the exact solution.
pub fn problem_at(x_b: f64) -> Result<AvpProblem> {
    AvpProblem::new(system(), interval(), BoundaryCondition::new(x_b, vec![exact(x_b)]))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub x: f64,
    pub y: f64,
    pub exact: f64,
    pub error: f64,
    pub published_y: f64,
    pub published_error: f64,
}

impl Row {
    pub fn value_gap(&self) -> f64 {
        (self.y - self.published_y).abs()
    }

    pub fn matches(&self) -> bool {
        self.value_gap() <= VALUE_TOLERANCE && self.error <= ERROR_TOLERANCE
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub forward: Vec<Row>,
    pub backward: Vec<Row>,
}

impl Report {
    pub fn mismatches(&self) -> Vec<(&'static str, &Row)> {
        let fwd = self.forward.iter().map(|r| ("forward", r));
        let bwd = self.backward.iter().map(|r| ("backward", r));
        fwd.chain(bwd).filter(|(_, r)| !r.matches()).collect()
    }

    pub fn reproduced(&self) -> bool {
        self.mismatches().is_empty()
    }
}

fn leg(from: f64, to: f64, reference: &[(f64, f64, f64)]) -> Result<Vec<Row>> {
    let traj = integrate_leg(&system(), from, &[exact(from)], to, &MethodSpec::rk4(), STEP)?;
    Ok(traj
        .iter()
        .zip(reference)
        .map(|((x, y), &(_, py, pe))| Row {
            x,
            y: y[0],
            exact: exact(x),
            error: (y[0] - exact(x)).abs(),
            published_y: py,
            published_error: pe,
        })
        .collect())
}

/// Runs both legs; rows are in integration order.
pub fn run() -> Result<Report> {
    Ok(Report {
        forward: leg(0.0, 1.0, &FORWARD_REFERENCE)?,
        backward: leg(1.0, 0.0, &BACKWARD_REFERENCE)?,
    })
}
