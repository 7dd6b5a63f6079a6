//! One-step schemes for backward (final value) integration and their
//! forward mirrors, plus the leg integrator that drives them over a grid.
//!
//! Every backward scheme is its forward counterpart evaluated with a
//! negative step: departing from `(x_{n+1}, y_{n+1})` it produces
//! `y_n = y_{n+1} - h * phi(x_{n+1}, y_{n+1}, h)`. Internally all kernels take
//! a signed step `dh` (`+h` forward, `-h` backward) so the two directions
//! share one implementation.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, LegTag, Result};
use crate::grid::{grid_for_length, grid_points};
use crate::model::{Direction, OdeSystem, Rhs, Trajectory};

pub const DEFAULT_CORRECTOR_TOL: f64 = 1e-12;
pub const DEFAULT_CORRECTOR_MAX_ITERS: usize = 50;

/// Explicit Runge-Kutta tableau.
///
/// Stage `i` is evaluated at `x + alpha_i * dh` with state
/// `y + dh * sum_{j<i} beta_ij K_j`, and the step is
/// `y + dh / den * sum_i num_i K_i`. Weights are stored as numerators over a
/// common denominator so that tableaus like classical RK4 (`[1, 2, 2, 1] / 6`)
/// round exactly like their textbook formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableauSpec", into = "TableauSpec")]
pub struct RkTableau {
    weights: Vec<f64>,
    denominator: f64,
    offsets: Vec<f64>,
    coefficients: Vec<Vec<f64>>,
}

/// Serialized form of [`RkTableau`]; validated on conversion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableauSpec {
    pub weights: Vec<f64>,
    #[serde(default = "unit")]
    pub denominator: f64,
    /// `alpha_2..alpha_r`.
    pub offsets: Vec<f64>,
    pub coefficients: Vec<Vec<f64>>,
}

fn unit() -> f64 {
    1.0
}

impl TryFrom<TableauSpec> for RkTableau {
    type Error = Error;

    fn try_from(spec: TableauSpec) -> Result<Self> {
        RkTableau::with_denominator(spec.weights, spec.denominator, spec.offsets, spec.coefficients)
    }
}

impl From<RkTableau> for TableauSpec {
    fn from(t: RkTableau) -> Self {
        TableauSpec {
            weights: t.weights,
            denominator: t.denominator,
            offsets: t.offsets[1..].to_vec(),
            coefficients: t.coefficients,
        }
    }
}

impl RkTableau {
    /// `weights` are `c_1..c_r`, `offsets` are `alpha_2..alpha_r`, and row
    /// `k` of `coefficients` holds `beta_{k+2, 1..=k+1}`.
    pub fn new(weights: Vec<f64>, offsets: Vec<f64>, coefficients: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_denominator(weights, 1.0, offsets, coefficients)
    }

    pub fn with_denominator(
        numerators: Vec<f64>,
        denominator: f64,
        offsets: Vec<f64>,
        coefficients: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let r = numerators.len();
        if r == 0 {
            return Err(Error::InvalidArgument("tableau needs at least one stage".into()));
        }
        if !(denominator.is_finite() && denominator != 0.0) {
            return Err(Error::InvalidArgument("weight denominator must be finite and nonzero".into()));
        }
        if offsets.len() != r - 1 || coefficients.len() != r - 1 {
            return Err(Error::InvalidArgument(format!(
                "a {r}-stage tableau needs {} offsets and {} coefficient rows",
                r - 1,
                r - 1
            )));
        }
        for (k, row) in coefficients.iter().enumerate() {
            if row.len() != k + 1 {
                return Err(Error::InvalidArgument(format!(
                    "coefficient row for stage {} must have {} entries, found {}",
                    k + 2,
                    k + 1,
                    row.len()
                )));
            }
        }
        let all = numerators
            .iter()
            .chain(offsets.iter())
            .chain(coefficients.iter().flatten());
        if all.clone().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("tableau entries must be finite".into()));
        }
        let sum: f64 = numerators.iter().sum::<f64>() / denominator;
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("weights sum to {sum}, not 1")));
        }
        let mut full_offsets = Vec::with_capacity(r);
        full_offsets.push(0.0);
        full_offsets.extend(offsets);
        Ok(RkTableau {
            weights: numerators,
            denominator,
            offsets: full_offsets,
            coefficients,
        })
    }

    pub fn classical_rk4() -> Self {
        RkTableau::with_denominator(
            vec![1.0, 2.0, 2.0, 1.0],
            6.0,
            vec![0.5, 0.5, 1.0],
            vec![vec![0.5], vec![0.0, 0.5], vec![0.0, 0.0, 1.0]],
        )
        .expect("classical tableau is valid")
    }

    pub fn explicit_euler() -> Self {
        RkTableau::new(vec![1.0], vec![], vec![]).expect("one-stage tableau is valid")
    }

    pub fn stages(&self) -> usize {
        self.weights.len()
    }

    /// Effective weight `c_i` (0-based stage index).
    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i] / self.denominator
    }

    pub fn offset(&self, i: usize) -> f64 {
        self.offsets[i]
    }

    /// `beta_ij` for `j < i` (0-based).
    pub fn coefficient(&self, i: usize, j: usize) -> f64 {
        self.coefficients[i - 1][j]
    }

    /// One step of the scalar test model `y' = lambda y` maps `y` to
    /// `R(z) y` with `z = dh * lambda`. Returns `R(z)`.
    pub fn amplification(&self, z: f64) -> f64 {
        let r = self.stages();
        let mut k = vec![0.0; r];
        for i in 0..r {
            let mut acc = 0.0;
            for (j, kj) in k.iter().enumerate().take(i) {
                acc += self.coefficient(i, j) * kj;
            }
            k[i] = 1.0 + z * acc;
        }
        let mut acc = 0.0;
        for (w, ki) in self.weights.iter().zip(&k) {
            acc += w * ki;
        }
        1.0 + z / self.denominator * acc
    }

    /// Lipschitz constant of the decrement function given that of `f`,
    /// by chaining `|K_i(y1) - K_i(y2)| <= L (1 + h sum_j |beta_ij| L_j / L) |y1 - y2|`.
    pub fn decrement_lipschitz(&self, h: f64, lipschitz: f64) -> f64 {
        let r = self.stages();
        let mut stage = vec![0.0; r];
        for i in 0..r {
            let mut acc = 0.0;
            for (j, sj) in stage.iter().enumerate().take(i) {
                acc += self.coefficient(i, j).abs() * sj;
            }
            stage[i] = lipschitz * (1.0 + h * acc);
        }
        stage
            .iter()
            .enumerate()
            .map(|(i, s)| self.weight(i).abs() * s)
            .sum()
    }
}

/// How a predictor-corrector step solves its implicit corrector equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrectorSolver {
    /// Functional iteration `y <- corrector(y)`; converges only while the
    /// corrector map contracts (`hL < 1` for Euler, `hL/2 < 1` for trapezoid).
    #[default]
    FixedPoint,
    /// Newton iteration on the corrector residual with a finite-difference
    /// Jacobian. Reaches the same fixed point when functional iteration
    /// converges, and also when it does not.
    Newton,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MethodKind {
    ExplicitEuler,
    EulerPc,
    TrapezoidPc,
    ClassicalRk4,
    GeneralRk(RkTableau),
}

impl MethodKind {
    pub fn name(&self) -> &'static str {
        match self {
            MethodKind::ExplicitEuler => "explicit-euler",
            MethodKind::EulerPc => "euler-pc",
            MethodKind::TrapezoidPc => "trapezoid-pc",
            MethodKind::ClassicalRk4 => "rk4",
            MethodKind::GeneralRk(_) => "general-rk",
        }
    }

    pub fn is_predictor_corrector(&self) -> bool {
        matches!(self, MethodKind::EulerPc | MethodKind::TrapezoidPc)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSpec {
    pub kind: MethodKind,
    pub corrector_tol: f64,
    pub corrector_max_iters: usize,
    #[serde(default)]
    pub corrector_solver: CorrectorSolver,
}

impl MethodSpec {
    pub fn new(kind: MethodKind) -> Self {
        MethodSpec {
            kind,
            corrector_tol: DEFAULT_CORRECTOR_TOL,
            corrector_max_iters: DEFAULT_CORRECTOR_MAX_ITERS,
            corrector_solver: CorrectorSolver::FixedPoint,
        }
    }

    pub fn explicit_euler() -> Self {
        Self::new(MethodKind::ExplicitEuler)
    }

    pub fn euler_pc() -> Self {
        Self::new(MethodKind::EulerPc)
    }

    pub fn trapezoid_pc() -> Self {
        Self::new(MethodKind::TrapezoidPc)
    }

    pub fn rk4() -> Self {
        Self::new(MethodKind::ClassicalRk4)
    }

    pub fn general_rk(tableau: RkTableau) -> Self {
        Self::new(MethodKind::GeneralRk(tableau))
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.corrector_tol = tol;
        self
    }

    pub fn with_max_iters(mut self, iters: usize) -> Self {
        self.corrector_max_iters = iters;
        self
    }

    pub fn with_solver(mut self, solver: CorrectorSolver) -> Self {
        self.corrector_solver = solver;
        self
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn validate(&self) -> Result<()> {
        if self.kind.is_predictor_corrector() {
            if self.corrector_tol.is_nan() || self.corrector_tol <= 0.0 {
                return Err(Error::InvalidArgument("corrector tolerance must be positive".into()));
            }
            if self.corrector_max_iters == 0 {
                return Err(Error::InvalidArgument("corrector needs at least one iteration".into()));
            }
        }
        Ok(())
    }
}

/// Result of a single step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub y_out: Vec<f64>,
    /// Corrector iterations performed (0 for explicit schemes).
    pub iterations: usize,
    /// False when the corrector stopped at its iteration cap.
    pub converged: bool,
    /// Max-norm of each successive corrector update.
    pub deltas: Vec<f64>,
}

impl StepRecord {
    fn explicit(y_out: Vec<f64>) -> Self {
        StepRecord { y_out, iterations: 0, converged: true, deltas: Vec::new() }
    }
}

fn check_finite(v: &[f64], x: f64) -> Result<()> {
    if v.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::NumericOverflow { x })
    }
}

fn check_step(h: f64, y: &[f64], system: &OdeSystem) -> Result<()> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidStep { h, length: f64::NAN });
    }
    if y.len() != system.dimension() {
        return Err(Error::DimensionMismatch { expected: system.dimension(), got: y.len() });
    }
    Ok(())
}

fn eval_checked(rhs: &dyn Rhs, x: f64, y: &[f64], out: &mut [f64]) -> Result<()> {
    check_finite(y, x)?;
    rhs.eval(x, y, out);
    check_finite(out, x)
}

fn euler_kernel(rhs: &dyn Rhs, x0: f64, y0: &[f64], dh: f64) -> Result<Vec<f64>> {
    let mut k = vec![0.0; y0.len()];
    eval_checked(rhs, x0, y0, &mut k)?;
    let out: Vec<f64> = y0.iter().zip(&k).map(|(y, k)| y + dh * k).collect();
    check_finite(&out, x0 + dh)?;
    Ok(out)
}

/// Classical RK4 stages written out; returns `(K1 + 2K2 + 2K3 + K4)`.
fn rk4_stage_sum(rhs: &dyn Rhs, x0: f64, y0: &[f64], dh: f64) -> Result<Vec<f64>> {
    let n = y0.len();
    let half = dh / 2.0;
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut arg = vec![0.0; n];

    eval_checked(rhs, x0, y0, &mut k1)?;
    for i in 0..n {
        arg[i] = y0[i] + half * k1[i];
    }
    eval_checked(rhs, x0 + half, &arg, &mut k2)?;
    for i in 0..n {
        arg[i] = y0[i] + half * k2[i];
    }
    eval_checked(rhs, x0 + half, &arg, &mut k3)?;
    for i in 0..n {
        arg[i] = y0[i] + dh * k3[i];
    }
    eval_checked(rhs, x0 + dh, &arg, &mut k4)?;

    Ok((0..n).map(|i| k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]).collect())
}

fn rk4_kernel(rhs: &dyn Rhs, x0: f64, y0: &[f64], dh: f64) -> Result<Vec<f64>> {
    let sum = rk4_stage_sum(rhs, x0, y0, dh)?;
    let sixth = dh / 6.0;
    let out: Vec<f64> = y0.iter().zip(&sum).map(|(y, s)| y + sixth * s).collect();
    check_finite(&out, x0 + dh)?;
    Ok(out)
}

/// Returns `sum_i num_i K_i` (to be scaled by `dh / den`).
fn tableau_stage_sum(rhs: &dyn Rhs, tableau: &RkTableau, x0: f64, y0: &[f64], dh: f64) -> Result<Vec<f64>> {
    let n = y0.len();
    let r = tableau.stages();
    let mut ks: Vec<Vec<f64>> = Vec::with_capacity(r);
    let mut arg = vec![0.0; n];
    for i in 0..r {
        let mut k = vec![0.0; n];
        if i == 0 {
            eval_checked(rhs, x0, y0, &mut k)?;
        } else {
            for c in 0..n {
                let mut acc = 0.0;
                for (j, kj) in ks.iter().enumerate() {
                    acc += tableau.coefficient(i, j) * kj[c];
                }
                arg[c] = y0[c] + dh * acc;
            }
            eval_checked(rhs, x0 + tableau.offset(i) * dh, &arg, &mut k)?;
        }
        ks.push(k);
    }
    Ok((0..n)
        .map(|c| {
            let mut acc = 0.0;
            for (w, k) in tableau.weights.iter().zip(&ks) {
                acc += w * k[c];
            }
            acc
        })
        .collect())
}

fn tableau_kernel(rhs: &dyn Rhs, tableau: &RkTableau, x0: f64, y0: &[f64], dh: f64) -> Result<Vec<f64>> {
    let sum = tableau_stage_sum(rhs, tableau, x0, y0, dh)?;
    let scale = dh / tableau.denominator;
    let out: Vec<f64> = y0.iter().zip(&sum).map(|(y, s)| y + scale * s).collect();
    check_finite(&out, x0 + dh)?;
    Ok(out)
}

#[derive(Clone, Copy)]
enum Corrector {
    /// `y = y0 + dh f(x1, y)`
    Euler,
    /// `y = y0 + dh/2 [f(x1, y) + f(x0, y0)]`
    Trapezoid,
}

struct CorrectorSettings {
    tol: f64,
    max_iters: usize,
    solver: CorrectorSolver,
}

fn pc_kernel(
    rhs: &dyn Rhs,
    corrector: Corrector,
    x0: f64,
    y0: &[f64],
    dh: f64,
    settings: &CorrectorSettings,
) -> Result<StepRecord> {
    let n = y0.len();
    let x1 = x0 + dh;
    let mut f0 = vec![0.0; n];
    eval_checked(rhs, x0, y0, &mut f0)?;
    let mut y: Vec<f64> = y0.iter().zip(&f0).map(|(y, k)| y + dh * k).collect();
    check_finite(&y, x1)?;

    let apply = |y_in: &[f64], out: &mut [f64]| -> Result<()> {
        let mut f1 = vec![0.0; n];
        eval_checked(rhs, x1, y_in, &mut f1)?;
        match corrector {
            Corrector::Euler => {
                for i in 0..n {
                    out[i] = y0[i] + dh * f1[i];
                }
            }
            Corrector::Trapezoid => {
                let half = dh / 2.0;
                for i in 0..n {
                    out[i] = y0[i] + half * (f1[i] + f0[i]);
                }
            }
        }
        check_finite(out, x1)
    };

    let mut deltas = Vec::new();
    let mut next = vec![0.0; n];
    match settings.solver {
        CorrectorSolver::FixedPoint => {
            for s in 1..=settings.max_iters {
                apply(&y, &mut next)?;
                let delta = max_abs_diff(&next, &y);
                std::mem::swap(&mut y, &mut next);
                deltas.push(delta);
                if delta < settings.tol {
                    return Ok(StepRecord { y_out: y, iterations: s, converged: true, deltas });
                }
            }
        }
        CorrectorSolver::Newton => {
            let theta = match corrector {
                Corrector::Euler => 1.0,
                Corrector::Trapezoid => 0.5,
            };
            let mut residual = vec![0.0; n];
            for s in 1..=settings.max_iters {
                // g(y) = y - C(y); J = I - theta dh df/dy
                apply(&y, &mut next)?;
                for i in 0..n {
                    residual[i] = y[i] - next[i];
                }
                let jac = fd_jacobian(rhs, x1, &y)?;
                let mut m = DMatrix::<f64>::identity(n, n);
                for r in 0..n {
                    for c in 0..n {
                        m[(r, c)] -= theta * dh * jac[(r, c)];
                    }
                }
                let rhs_vec = DVector::from_iterator(n, residual.iter().map(|g| -g));
                let Some(step) = m.lu().solve(&rhs_vec) else {
                    break;
                };
                for i in 0..n {
                    y[i] += step[i];
                }
                check_finite(&y, x1)?;
                let delta = step.amax();
                deltas.push(delta);
                if delta < settings.tol {
                    return Ok(StepRecord { y_out: y, iterations: s, converged: true, deltas });
                }
            }
        }
    }
    let iterations = deltas.len();
    Ok(StepRecord { y_out: y, iterations, converged: false, deltas })
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
}

/// Central-difference Jacobian `df/dy` with per-component probe
/// `eps = max(1e-6, 1e-6 |y_j|)`.
pub(crate) fn fd_jacobian(rhs: &dyn Rhs, x: f64, y: &[f64]) -> Result<DMatrix<f64>> {
    let n = y.len();
    let mut jac = DMatrix::<f64>::zeros(n, n);
    let mut probe = y.to_vec();
    let mut fp = vec![0.0; n];
    let mut fm = vec![0.0; n];
    for j in 0..n {
        let eps = f64::max(1e-6, 1e-6 * y[j].abs());
        let (up, down) = (y[j] + eps, y[j] - eps);
        probe[j] = up;
        eval_checked(rhs, x, &probe, &mut fp)?;
        probe[j] = down;
        eval_checked(rhs, x, &probe, &mut fm)?;
        probe[j] = y[j];
        // Divide by the spacing actually realized in floating point.
        let width = up - down;
        for i in 0..n {
            jac[(i, j)] = (fp[i] - fm[i]) / width;
        }
    }
    Ok(jac)
}

/// One step of `method` from `(x0, y0)` with signed step `dh`.
pub fn advance(method: &MethodSpec, system: &OdeSystem, x0: f64, y0: &[f64], dh: f64) -> Result<StepRecord> {
    let active = system.rhs_for_step(x0, x0 + dh);
    let rhs: &dyn Rhs = &active;
    let settings = || CorrectorSettings {
        tol: method.corrector_tol,
        max_iters: method.corrector_max_iters,
        solver: method.corrector_solver,
    };
    match &method.kind {
        MethodKind::ExplicitEuler => euler_kernel(rhs, x0, y0, dh).map(StepRecord::explicit),
        MethodKind::ClassicalRk4 => rk4_kernel(rhs, x0, y0, dh).map(StepRecord::explicit),
        MethodKind::GeneralRk(t) => tableau_kernel(rhs, t, x0, y0, dh).map(StepRecord::explicit),
        MethodKind::EulerPc => pc_kernel(rhs, Corrector::Euler, x0, y0, dh, &settings()),
        MethodKind::TrapezoidPc => pc_kernel(rhs, Corrector::Trapezoid, x0, y0, dh, &settings()),
    }
}

/// `y_n = y_{n+1} - h f(x_{n+1}, y_{n+1})`.
pub fn step_explicit_euler_backward(x_next: f64, y_next: &[f64], h: f64, system: &OdeSystem) -> Result<Vec<f64>> {
    check_step(h, y_next, system)?;
    euler_kernel(&system.rhs_for_step(x_next - h, x_next), x_next, y_next, -h)
}

pub fn step_explicit_euler_forward(x_prev: f64, y_prev: &[f64], h: f64, system: &OdeSystem) -> Result<Vec<f64>> {
    check_step(h, y_prev, system)?;
    euler_kernel(&system.rhs_for_step(x_prev, x_prev + h), x_prev, y_prev, h)
}

/// Backward Euler predictor-corrector: explicit Euler predictor, then
/// `y^(s+1) = y_{n+1} - h f(x_{n+1} - h, y^(s))` until the update drops
/// below `tol` or `max_iters` is reached.
pub fn step_euler_pc_backward(
    x_next: f64,
    y_next: &[f64],
    h: f64,
    system: &OdeSystem,
    tol: f64,
    max_iters: usize,
) -> Result<StepRecord> {
    pc_entry(MethodSpec::euler_pc(), x_next, y_next, -h, system, tol, max_iters)
}

pub fn step_euler_pc_forward(
    x_prev: f64,
    y_prev: &[f64],
    h: f64,
    system: &OdeSystem,
    tol: f64,
    max_iters: usize,
) -> Result<StepRecord> {
    pc_entry(MethodSpec::euler_pc(), x_prev, y_prev, h, system, tol, max_iters)
}

/// Backward trapezoid predictor-corrector: explicit Euler predictor, then
/// `y^(s+1) = y_{n+1} - h/2 [f(x_{n+1} - h, y^(s)) + f(x_{n+1}, y_{n+1})]`.
pub fn step_trapezoid_pc_backward(
    x_next: f64,
    y_next: &[f64],
    h: f64,
    system: &OdeSystem,
    tol: f64,
    max_iters: usize,
) -> Result<StepRecord> {
    pc_entry(MethodSpec::trapezoid_pc(), x_next, y_next, -h, system, tol, max_iters)
}

pub fn step_trapezoid_pc_forward(
    x_prev: f64,
    y_prev: &[f64],
    h: f64,
    system: &OdeSystem,
    tol: f64,
    max_iters: usize,
) -> Result<StepRecord> {
    pc_entry(MethodSpec::trapezoid_pc(), x_prev, y_prev, h, system, tol, max_iters)
}

fn pc_entry(
    method: MethodSpec,
    x0: f64,
    y0: &[f64],
    dh: f64,
    system: &OdeSystem,
    tol: f64,
    max_iters: usize,
) -> Result<StepRecord> {
    check_step(dh.abs(), y0, system)?;
    let method = method.with_tolerance(tol).with_max_iters(max_iters);
    method.validate()?;
    advance(&method, system, x0, y0, dh)
}

/// Classical fourth-order Runge-Kutta stepping from `x_{n+1}` to `x_{n+1} - h`:
///
/// ```text
/// K1 = f(x, y)
/// K2 = f(x - h/2, y - h/2 K1)
/// K3 = f(x - h/2, y - h/2 K2)
/// K4 = f(x - h,   y - h K3)
/// y_n = y - h/6 (K1 + 2 K2 + 2 K3 + K4)
/// ```
///
/// For systems each stage perturbs every component by its own slope.
pub fn step_rk4_backward(x_next: f64, y_next: &[f64], h: f64, system: &OdeSystem) -> Result<Vec<f64>> {
    check_step(h, y_next, system)?;
    rk4_kernel(&system.rhs_for_step(x_next - h, x_next), x_next, y_next, -h)
}

pub fn step_rk4_forward(x_prev: f64, y_prev: &[f64], h: f64, system: &OdeSystem) -> Result<Vec<f64>> {
    check_step(h, y_prev, system)?;
    rk4_kernel(&system.rhs_for_step(x_prev, x_prev + h), x_prev, y_prev, h)
}

/// Backward step of an arbitrary explicit tableau:
/// `K_i = f(x - alpha_i h, y - h sum_j beta_ij K_j)`, `y_n = y - h sum c_i K_i`.
pub fn step_general_rk_backward(
    x_next: f64,
    y_next: &[f64],
    h: f64,
    system: &OdeSystem,
    tableau: &RkTableau,
) -> Result<Vec<f64>> {
    check_step(h, y_next, system)?;
    tableau_kernel(&system.rhs_for_step(x_next - h, x_next), tableau, x_next, y_next, -h)
}

pub fn step_general_rk_forward(
    x_prev: f64,
    y_prev: &[f64],
    h: f64,
    system: &OdeSystem,
    tableau: &RkTableau,
) -> Result<Vec<f64>> {
    check_step(h, y_prev, system)?;
    tableau_kernel(&system.rhs_for_step(x_prev, x_prev + h), tableau, x_prev, y_prev, h)
}

/// Decrement function `phi(x, y, h)` of an explicit backward scheme, i.e.
/// the backward step from `(x, y)` is `y - h phi`.
pub fn decrement_function(method: &MethodSpec, x: f64, y: &[f64], h: f64, system: &OdeSystem) -> Result<Vec<f64>> {
    check_step(h, y, system)?;
    let active = system.rhs_for_step(x - h, x);
    let rhs: &dyn Rhs = &active;
    match &method.kind {
        MethodKind::ExplicitEuler => {
            let mut k = vec![0.0; y.len()];
            eval_checked(rhs, x, y, &mut k)?;
            Ok(k)
        }
        MethodKind::ClassicalRk4 => Ok(rk4_stage_sum(rhs, x, y, -h)?.into_iter().map(|s| s / 6.0).collect()),
        MethodKind::GeneralRk(t) => Ok(tableau_stage_sum(rhs, t, x, y, -h)?
            .into_iter()
            .map(|s| s / t.denominator)
            .collect()),
        kind @ (MethodKind::EulerPc | MethodKind::TrapezoidPc) => Err(Error::UnsupportedMethod(kind.name())),
    }
}

/// Integrates from `(from_x, from_y)` to `to_x` on the uniform grid closest
/// to `h`. The leg runs backward when `to_x < from_x`; samples are stored in
/// the order they were produced.
pub fn integrate_leg(
    system: &OdeSystem,
    from_x: f64,
    from_y: &[f64],
    to_x: f64,
    method: &MethodSpec,
    h: f64,
) -> Result<Trajectory> {
    if !(from_x.is_finite() && to_x.is_finite()) || from_x == to_x {
        return Err(Error::InvalidArgument(format!(
            "leg endpoints must be finite and distinct, got {from_x} -> {to_x}"
        )));
    }
    if from_y.len() != system.dimension() {
        return Err(Error::DimensionMismatch { expected: system.dimension(), got: from_y.len() });
    }
    check_finite(from_y, from_x)?;
    method.validate()?;

    let direction = if to_x < from_x { Direction::Backward } else { Direction::Forward };
    let (h_actual, count) = grid_for_length((to_x - from_x).abs(), h)?;
    check_alignment(system, from_x, to_x, count, direction, h_actual)?;

    let xs = grid_points(from_x, to_x, count);
    let dh = direction.sign() * h_actual;
    let mut ys: Vec<Vec<f64>> = Vec::with_capacity(count + 1);
    ys.push(from_y.to_vec());
    let mut nonconverged = Vec::new();
    for i in 0..count {
        let record = advance(method, system, xs[i], &ys[i], dh)
            .map_err(|e| Error::AtStep { index: i + 1, source: Box::new(e) })?;
        if !record.converged {
            nonconverged.push(i + 1);
        }
        ys.push(record.y_out);
    }
    Ok(Trajectory::new(xs, ys, method.name().to_string(), h_actual, direction, nonconverged))
}

const ALIGNMENT_TOL: f64 = 1e-9;

fn check_alignment(
    system: &OdeSystem,
    from_x: f64,
    to_x: f64,
    count: usize,
    direction: Direction,
    h: f64,
) -> Result<()> {
    let (lo, hi) = if from_x < to_x { (from_x, to_x) } else { (to_x, from_x) };
    for bp in system.breakpoints() {
        if bp <= lo || bp >= hi {
            continue;
        }
        let pos = (bp - from_x) / (to_x - from_x) * count as f64;
        if (pos - pos.round()).abs() > ALIGNMENT_TOL * count as f64 {
            let leg = match direction {
                Direction::Backward => LegTag::Backward,
                Direction::Forward => LegTag::Forward,
            };
            return Err(Error::GridMisalignment { breakpoint: bp, leg, h });
        }
    }
    Ok(())
}
