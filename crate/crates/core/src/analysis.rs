//! Convergence and stability predicates, Lipschitz estimation, the global
//! error bound, and empirical order measurement.
//!
//! Stability here always refers to the backward test model
//! `dy/dx = lambda y` with `lambda > 0`: integrating toward decreasing `x`,
//! the exact solution decays, and a scheme is stable when its per-step
//! amplification `R(h lambda)` has magnitude below one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::grid_for_length;
use crate::model::{Interval, OdeSystem, Rhs, Trajectory};
use crate::parallel::Execution;
use crate::steppers::{fd_jacobian, integrate_leg, MethodKind, MethodSpec};

/// Lower bound on `hL` under which the RK4 decrement-function Lipschitz
/// constant stays positive.
pub const RK4_CONVERGENCE_BOUND: f64 = -2.7853;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LipschitzEstimate {
    /// `max(pairwise, jacobian)`.
    pub lipschitz: f64,
    pub pairwise: f64,
    pub jacobian: f64,
    pub sample_count: usize,
    pub x_range: Interval,
    pub y_box: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Less,
    Greater,
}

impl Relation {
    pub fn holds(self, lhs: f64, rhs: f64) -> bool {
        match self {
            Relation::Less => lhs < rhs,
            Relation::Greater => lhs > rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Less => "<",
            Relation::Greater => ">",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// An evaluated strict inequality `lhs <relation> rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub satisfied: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub inequality_text: String,
    /// Lipschitz constant of the decrement function, when one is defined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decrement_lipschitz: Option<f64>,
}

impl AnalysisReport {
    fn new(lhs: f64, relation: Relation, rhs: f64, label: &str) -> Self {
        AnalysisReport {
            satisfied: relation.holds(lhs, rhs),
            lhs,
            rhs,
            relation,
            inequality_text: format!("{label} = {lhs} {relation} {rhs}"),
            decrement_lipschitz: None,
        }
    }
}

/// Estimates a Lipschitz constant of `f` in `y` (max norm) over
/// `x_range × y_box` from a uniform lattice.
///
/// Two estimators run on the same lattice: difference quotients between
/// neighbouring lattice points at equal `x`, and central-difference
/// Jacobians at every lattice point (row-sum norm). The larger one wins.
pub fn estimate_lipschitz(
    system: &OdeSystem,
    x_range: Interval,
    y_box: &[(f64, f64)],
    samples_per_axis: usize,
) -> Result<LipschitzEstimate> {
    estimate_lipschitz_with(system, x_range, y_box, samples_per_axis, Execution::default())
}

pub fn estimate_lipschitz_with(
    system: &OdeSystem,
    x_range: Interval,
    y_box: &[(f64, f64)],
    samples_per_axis: usize,
    exec: Execution,
) -> Result<LipschitzEstimate> {
    let n = system.dimension();
    if y_box.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: y_box.len() });
    }
    if samples_per_axis < 2 {
        return Err(Error::InvalidArgument("samples_per_axis must be at least 2".into()));
    }
    if let Some(&(lo, hi)) = y_box.iter().find(|(lo, hi)| !(lo.is_finite() && hi.is_finite() && lo < hi)) {
        return Err(Error::InvalidArgument(format!("degenerate y range [{lo}, {hi}]")));
    }
    let s = samples_per_axis;
    let total = s
        .checked_pow(n as u32 + 1)
        .filter(|t| *t <= 50_000_000)
        .ok_or_else(|| Error::InvalidArgument("sampling lattice is too large".into()))?;

    let coord = |lo: f64, hi: f64, k: usize| lo + (hi - lo) * k as f64 / (s - 1) as f64;

    let per_point = |index: usize| -> Result<(f64, f64)> {
        // index -> (ix, iy_0, ..., iy_{n-1}) in base s
        let mut rem = index;
        let ix = rem % s;
        rem /= s;
        let mut ks = Vec::with_capacity(n);
        for _ in 0..n {
            ks.push(rem % s);
            rem /= s;
        }
        let x = coord(x_range.lo(), x_range.hi(), ix);
        let y: Vec<f64> = ks.iter().zip(y_box).map(|(&k, &(lo, hi))| coord(lo, hi, k)).collect();
        let rhs = system.rhs_at(x);
        let mut fy = vec![0.0; n];
        rhs.eval(x, &y, &mut fy);
        finite(&fy, x)?;

        let mut pairwise: f64 = 0.0;
        let mut other = y.clone();
        let mut fo = vec![0.0; n];
        let quotient = |other: &[f64], fo: &mut [f64]| -> Result<f64> {
            rhs.eval(x, other, fo);
            finite(fo, x)?;
            let dy = max_abs_diff(&y, other);
            Ok(max_abs_diff(&fy, fo) / dy)
        };
        for axis in 0..n {
            if ks[axis] + 1 < s {
                other[axis] = coord(y_box[axis].0, y_box[axis].1, ks[axis] + 1);
                pairwise = pairwise.max(quotient(&other, &mut fo)?);
                other[axis] = y[axis];
            }
        }
        if n > 1 && ks.iter().all(|&k| k + 1 < s) {
            for axis in 0..n {
                other[axis] = coord(y_box[axis].0, y_box[axis].1, ks[axis] + 1);
            }
            pairwise = pairwise.max(quotient(&other, &mut fo)?);
        }

        let jac = fd_jacobian(&rhs, x, &y)?;
        let row_norm = (0..n)
            .map(|r| (0..n).map(|c| jac[(r, c)].abs()).sum::<f64>())
            .fold(0.0, f64::max);
        Ok((pairwise, row_norm))
    };

    let results = exec.map_range(total, per_point);
    let mut pairwise: f64 = 0.0;
    let mut jacobian: f64 = 0.0;
    for r in results {
        let (p, j) = r?;
        pairwise = pairwise.max(p);
        jacobian = jacobian.max(j);
    }
    Ok(LipschitzEstimate {
        lipschitz: pairwise.max(jacobian),
        pairwise,
        jacobian,
        sample_count: total,
        x_range,
        y_box: y_box.to_vec(),
    })
}

fn finite(v: &[f64], x: f64) -> Result<()> {
    if v.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::NumericOverflow { x })
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
}

fn check_h(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("step size must be positive and finite, got {h}")))
    }
}

/// Convergence predicate for `method` at step `h` and Lipschitz constant `L`.
///
/// * Euler predictor-corrector: `hL < 1`
/// * trapezoid predictor-corrector: `hL/2 < 1`
/// * classical RK4: `hL > -2.7853`, which always holds
/// * explicit Euler and other tableaus: the decrement function's Lipschitz
///   constant is finite
pub fn convergence_condition(kind: &MethodKind, h: f64, lipschitz: f64) -> Result<AnalysisReport> {
    check_h(h)?;
    if !(lipschitz >= 0.0 && lipschitz.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "Lipschitz constant must be finite and nonnegative, got {lipschitz}"
        )));
    }
    let hl = h * lipschitz;
    let report = match kind {
        MethodKind::EulerPc => AnalysisReport::new(hl, Relation::Less, 1.0, "h*L"),
        MethodKind::TrapezoidPc => AnalysisReport::new(hl / 2.0, Relation::Less, 1.0, "h*L/2"),
        MethodKind::ClassicalRk4 => {
            let mut r = AnalysisReport::new(hl, Relation::Greater, RK4_CONVERGENCE_BOUND, "h*L");
            r.decrement_lipschitz = Some(rk4_decrement_lipschitz(h, lipschitz));
            r
        }
        MethodKind::ExplicitEuler => {
            let mut r = AnalysisReport::new(lipschitz, Relation::Less, f64::INFINITY, "decrement Lipschitz");
            r.decrement_lipschitz = Some(lipschitz);
            r
        }
        MethodKind::GeneralRk(t) => {
            let lt = t.decrement_lipschitz(h, lipschitz);
            let mut r = AnalysisReport::new(lt, Relation::Less, f64::INFINITY, "decrement Lipschitz");
            r.decrement_lipschitz = Some(lt);
            r
        }
    };
    Ok(report)
}

/// `L (1 + hL/2 + (hL)^2/6 + (hL)^3/24)`, the Lipschitz constant of the
/// backward RK4 decrement function.
pub fn rk4_decrement_lipschitz(h: f64, lipschitz: f64) -> f64 {
    let z = h * lipschitz;
    lipschitz * (1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0)
}

/// Per-step amplification of the backward scheme on `y' = lambda y`,
/// as a function of `z = h lambda`.
pub fn backward_amplification(kind: &MethodKind, z: f64) -> f64 {
    match kind {
        MethodKind::ExplicitEuler | MethodKind::EulerPc => 1.0 - z,
        MethodKind::TrapezoidPc => (1.0 - z / 2.0) / (1.0 + z / 2.0),
        MethodKind::ClassicalRk4 => rk4_backward_polynomial(z),
        MethodKind::GeneralRk(t) => t.amplification(-z),
    }
}

/// `1 - z + z^2/2 - z^3/6 + z^4/24`.
pub fn rk4_backward_polynomial(z: f64) -> f64 {
    1.0 - z + z * z / 2.0 - z * z * z / 6.0 + z * z * z * z / 24.0
}

/// Stability predicate `|R(h lambda)| < 1` on the backward test model.
pub fn stability_condition(kind: &MethodKind, h: f64, lambda: f64) -> Result<AnalysisReport> {
    check_h(h)?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "lambda must be positive for the backward test model dy/dx = lambda*y, got {lambda}"
        )));
    }
    let amp = backward_amplification(kind, h * lambda);
    Ok(AnalysisReport::new(amp.abs(), Relation::Less, 1.0, "|R(h*lambda)|"))
}

/// Bisection for a sign change of `g` on `[lo, hi]`.
pub fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let (mut glo, ghi) = (g(lo), g(hi));
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo.signum() == ghi.signum() {
        return Err(Error::InvalidArgument(format!("no sign change of g on [{lo}, {hi}]")));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 {
            return Ok(mid);
        }
        if gm.signum() == glo.signum() {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Positive `z` where the backward RK4 amplification reaches 1.
pub fn rk4_stability_boundary() -> f64 {
    bisect(|z| rk4_backward_polynomial(z) - 1.0, 1.0, 4.0, 1e-14).expect("sign change on [1, 4]")
}

/// Real root of `1 + z/2 + z^2/6 + z^3/24`, where the RK4 decrement
/// Lipschitz factor changes sign.
pub fn rk4_convergence_root() -> f64 {
    bisect(|z| 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0, -4.0, 0.0, 1e-14).expect("sign change on [-4, 0]")
}

/// `|e0| e^{TL} + (C h^p / L) (e^{TL} - 1)`.
pub fn global_error_bound(e0: f64, lipschitz: f64, c: f64, h: f64, p: u32, t: f64) -> Result<f64> {
    let positive = |name: &str, v: f64| -> Result<()> {
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{name} must be positive and finite, got {v}")))
        }
    };
    if !(e0 >= 0.0 && e0.is_finite()) {
        return Err(Error::InvalidArgument(format!("e0 must be nonnegative, got {e0}")));
    }
    positive("L", lipschitz)?;
    positive("C", c)?;
    positive("h", h)?;
    positive("T", t)?;
    if p == 0 {
        return Err(Error::InvalidArgument("order p must be positive".into()));
    }
    let growth = (t * lipschitz).exp();
    Ok(e0.abs() * growth + c * h.powi(p as i32) / lipschitz * (growth - 1.0))
}

/// Exact solution `x -> y(x)` used by order measurements.
pub type ExactSolution<'a> = &'a (dyn Fn(f64) -> Vec<f64> + Sync);

/// Empirical order `log2(err(h) / err(h/2))` over one leg, where `err` is the
/// max-norm deviation from `exact` over the coarse grid points.
pub fn observed_order(
    system: &OdeSystem,
    exact: ExactSolution<'_>,
    leg: (f64, &[f64], f64),
    method: &MethodSpec,
    h: f64,
) -> Result<f64> {
    observed_order_with(system, exact, leg, method, h, Execution::default())
}

pub fn observed_order_with(
    system: &OdeSystem,
    exact: ExactSolution<'_>,
    leg: (f64, &[f64], f64),
    method: &MethodSpec,
    h: f64,
    exec: Execution,
) -> Result<f64> {
    let (from_x, from_y, to_x) = leg;
    let (h_coarse, _) = grid_for_length((to_x - from_x).abs(), h)?;
    let (coarse, fine) = exec.join(
        || integrate_leg(system, from_x, from_y, to_x, method, h_coarse),
        || integrate_leg(system, from_x, from_y, to_x, method, h_coarse / 2.0),
    );
    let (coarse, fine) = (coarse?, fine?);
    let e_coarse = max_error(&coarse, exact, 1);
    let e_fine = max_error(&fine, exact, 2);
    if e_coarse == 0.0 {
        return Err(Error::DegenerateOrder { resolution: "coarse" });
    }
    if e_fine == 0.0 {
        return Err(Error::DegenerateOrder { resolution: "fine" });
    }
    Ok((e_coarse / e_fine).log2())
}

/// Observed orders for several base steps.
pub fn observed_orders(
    system: &OdeSystem,
    exact: ExactSolution<'_>,
    leg: (f64, &[f64], f64),
    method: &MethodSpec,
    steps: &[f64],
    exec: Execution,
) -> Vec<Result<f64>> {
    exec.map(steps, |&h| observed_order_with(system, exact, leg, method, h, Execution::Sequential))
}

/// Max-norm error against `exact` at every `stride`-th sample.
pub fn max_error(trajectory: &Trajectory, exact: ExactSolution<'_>, stride: usize) -> f64 {
    trajectory
        .iter()
        .step_by(stride)
        .map(|(x, y)| max_abs_diff(y, &exact(x)))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(lambda: f64) -> OdeSystem {
        OdeSystem::new(1, move |_x: f64, y: &[f64], d: &mut [f64]| d[0] = lambda * y[0]).unwrap()
    }

    fn table1() -> OdeSystem {
        OdeSystem::new(1, |x: f64, y: &[f64], d: &mut [f64]| d[0] = y[0] - 2.0 * x / y[0]).unwrap()
    }

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn lipschitz_of_linear_field() {
        let est = estimate_lipschitz(&linear(2.0), unit(), &[(-3.0, 5.0)], 9).unwrap();
        assert!((est.lipschitz - 2.0).abs() < 1e-9, "{est:?}");
        assert_eq!(est.sample_count, 81);
    }

    #[test]
    fn lipschitz_of_table1_field() {
        let est = estimate_lipschitz(&table1(), unit(), &[(1.0, 2.0)], 11).unwrap();
        assert!((est.lipschitz - 3.0).abs() < 1e-3, "{est:?}");
    }

    #[test]
    fn lipschitz_of_constant_field() {
        let c = OdeSystem::new(2, |_x: f64, _y: &[f64], d: &mut [f64]| d.copy_from_slice(&[4.0, -1.0])).unwrap();
        let est = estimate_lipschitz(&c, unit(), &[(0.0, 1.0), (-1.0, 1.0)], 4).unwrap();
        assert_eq!(est.lipschitz, 0.0);
    }

    #[test]
    fn lipschitz_of_coupled_system_uses_row_sums() {
        // f = (y2, -4 y1 + y2): row sums 1 and 5.
        let s = OdeSystem::new(2, |_x: f64, y: &[f64], d: &mut [f64]| {
            d[0] = y[1];
            d[1] = -4.0 * y[0] + y[1];
        })
        .unwrap();
        let est = estimate_lipschitz(&s, unit(), &[(-1.0, 1.0), (-1.0, 1.0)], 5).unwrap();
        assert!((est.lipschitz - 5.0).abs() < 1e-8, "{est:?}");
    }

    #[test]
    fn lipschitz_rejects_bad_input() {
        assert!(estimate_lipschitz(&linear(1.0), unit(), &[(0.0, 1.0)], 1).is_err());
        assert!(estimate_lipschitz(&linear(1.0), unit(), &[(1.0, 1.0)], 3).is_err());
        assert!(estimate_lipschitz(&linear(1.0), unit(), &[(0.0, 1.0), (0.0, 1.0)], 3).is_err());
        let bad = OdeSystem::new(1, |_x: f64, y: &[f64], d: &mut [f64]| d[0] = 1.0 / y[0]).unwrap();
        assert!(matches!(
            estimate_lipschitz(&bad, unit(), &[(0.0, 1.0)], 3),
            Err(Error::NumericOverflow { .. })
        ));
    }

    #[test]
    fn convergence_examples() {
        assert!(convergence_condition(&MethodKind::EulerPc, 0.1, 5.0).unwrap().satisfied);
        let r = convergence_condition(&MethodKind::EulerPc, 0.3, 5.0).unwrap();
        assert!(!r.satisfied);
        assert!((r.lhs - 1.5).abs() < 1e-15);
        assert!(convergence_condition(&MethodKind::TrapezoidPc, 0.3, 5.0).unwrap().satisfied);
        assert!(!convergence_condition(&MethodKind::TrapezoidPc, 0.5, 5.0).unwrap().satisfied);
        let rk = convergence_condition(&MethodKind::ClassicalRk4, 10.0, 100.0).unwrap();
        assert!(rk.satisfied);
        assert_eq!(rk.rhs, RK4_CONVERGENCE_BOUND);
        assert_eq!(rk.relation, Relation::Greater);
        assert!(convergence_condition(&MethodKind::ExplicitEuler, 1.0, 3.0).unwrap().satisfied);
        assert!(convergence_condition(&MethodKind::EulerPc, -0.1, 1.0).is_err());
        assert!(convergence_condition(&MethodKind::EulerPc, 0.1, -1.0).is_err());
    }

    #[test]
    fn convergence_root_matches_published_constant() {
        assert!((rk4_convergence_root() - RK4_CONVERGENCE_BOUND).abs() < 1e-4);
    }

    #[test]
    fn stability_examples() {
        let r = stability_condition(&MethodKind::ExplicitEuler, 0.5, 1.0).unwrap();
        assert!(r.satisfied);
        assert_eq!(r.lhs, 0.5);
        let r = stability_condition(&MethodKind::ExplicitEuler, 2.5, 1.0).unwrap();
        assert!(!r.satisfied);
        assert_eq!(r.lhs, 1.5);
        assert!(stability_condition(&MethodKind::TrapezoidPc, 100.0, 7.0).unwrap().satisfied);
        let r = stability_condition(&MethodKind::ClassicalRk4, 1.0, 1.0).unwrap();
        assert!(r.satisfied);
        assert!((r.lhs - 0.375).abs() < 1e-15);
        let r = stability_condition(&MethodKind::ClassicalRk4, 1.0, 3.0).unwrap();
        assert!(!r.satisfied);
        assert!((r.lhs - 1.375).abs() < 1e-14);
        assert!(matches!(
            stability_condition(&MethodKind::ExplicitEuler, 0.5, -1.0),
            Err(Error::InvalidArgument(msg)) if msg.contains("backward test model")
        ));
    }

    #[test]
    fn euler_stability_iff_hlambda_in_open_0_2() {
        for i in 1..400 {
            let z = i as f64 * 0.01;
            for lambda in [0.5, 1.0, 3.0] {
                let r = stability_condition(&MethodKind::ExplicitEuler, z / lambda, lambda).unwrap();
                let hl = (z / lambda) * lambda;
                assert_eq!(r.satisfied, hl > 0.0 && hl < 2.0, "z={z}");
            }
        }
    }

    #[test]
    fn general_tableau_stability_follows_its_amplification() {
        let t = crate::steppers::RkTableau::classical_rk4();
        for z in [0.5, 1.0, 2.7, 2.8, 3.0] {
            let a = stability_condition(&MethodKind::GeneralRk(t.clone()), z, 1.0).unwrap();
            let b = stability_condition(&MethodKind::ClassicalRk4, z, 1.0).unwrap();
            assert_eq!(a.satisfied, b.satisfied);
            assert!((a.lhs - b.lhs).abs() < 1e-13);
        }
    }

    #[test]
    fn stability_boundary_root() {
        assert!((rk4_stability_boundary() - 2.7853).abs() < 1e-3);
    }

    #[test]
    fn error_bound_examples() {
        let b = global_error_bound(0.0, 1.0, 1.0, 0.1, 4, 1.0).unwrap();
        assert!((b - 1e-4 * (std::f64::consts::E - 1.0)).abs() < 1e-18);
        let b2 = global_error_bound(0.0, 1.0, 1.0, 0.05, 4, 1.0).unwrap();
        assert!((b / b2 - 16.0).abs() < 1e-9);
        let b3 = global_error_bound(1e-3, 1.0, 1e-12, 0.1, 1, 2.0).unwrap();
        assert!((b3 - 1e-3 * 2f64.exp()).abs() < 1e-11);
        assert!(global_error_bound(0.0, 0.0, 1.0, 0.1, 1, 1.0).is_err());
        assert!(global_error_bound(-1.0, 1.0, 1.0, 0.1, 1, 1.0).is_err());
        assert!(global_error_bound(0.0, 1.0, 1.0, 0.1, 0, 1.0).is_err());
    }

    #[test]
    fn order_of_trapezoid_on_exponential() {
        let exact = |x: f64| vec![x.exp()];
        let e1 = 1f64.exp();
        let p = observed_order(
            &linear(1.0),
            &exact,
            (1.0, &[e1], 0.0),
            &MethodSpec::trapezoid_pc().with_tolerance(1e-14),
            0.1,
        )
        .unwrap();
        assert!((1.6..=2.4).contains(&p), "{p}");
    }

    #[test]
    fn order_is_degenerate_for_exact_schemes() {
        let zero = OdeSystem::new(1, |_x: f64, _y: &[f64], d: &mut [f64]| d[0] = 0.0).unwrap();
        let exact = |_x: f64| vec![2.0];
        let r = observed_order(&zero, &exact, (1.0, &[2.0], 0.0), &MethodSpec::rk4(), 0.1);
        assert!(matches!(r, Err(Error::DegenerateOrder { .. })));
    }

    #[test]
    fn order_sweep_policies_agree() {
        let exact = |x: f64| vec![(1.0 + 2.0 * x).sqrt()];
        let y1 = [3f64.sqrt()];
        let steps = [0.2, 0.1, 0.05];
        let seq = observed_orders(&table1(), &exact, (1.0, &y1, 0.0), &MethodSpec::rk4(), &steps, Execution::Sequential);
        let par = observed_orders(&table1(), &exact, (1.0, &y1, 0.0), &MethodSpec::rk4(), &steps, Execution::Parallel);
        let seq: Vec<f64> = seq.into_iter().map(Result::unwrap).collect();
        let par: Vec<f64> = par.into_iter().map(Result::unwrap).collect();
        assert_eq!(seq, par);
    }
}
