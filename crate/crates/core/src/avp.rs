//! Arbitrary value problems: a condition anywhere in `[a, c]` is solved as a
//! backward leg to `a` and a forward leg to `c`, both seeded at `(b, y_b)`,
//! then merged into one increasing-`x` solution.

use serde::Serialize;

use crate::error::{Error, LegTag, Result};
use crate::model::{classify_problem, AvpProblem, Direction, ProblemClass, Trajectory};
use crate::parallel::Execution;
use crate::steppers::{integrate_leg, MethodSpec};

#[derive(Debug, Clone, Serialize)]
pub struct AvpSolution {
    class: ProblemClass,
    xs: Vec<f64>,
    ys: Vec<Vec<f64>>,
    boundary_index: usize,
    backward: Option<Trajectory>,
    forward: Option<Trajectory>,
}

impl AvpSolution {
    pub fn class(&self) -> ProblemClass {
        self.class
    }

    /// Sample abscissae in increasing order.
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[Vec<f64>] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Index of the (shared) sample at the condition point.
    pub fn boundary_index(&self) -> usize {
        self.boundary_index
    }

    /// Raw backward leg, in integration order (decreasing `x`).
    pub fn backward_leg(&self) -> Option<&Trajectory> {
        self.backward.as_ref()
    }

    pub fn forward_leg(&self) -> Option<&Trajectory> {
        self.forward.as_ref()
    }

    pub fn legs(&self) -> impl Iterator<Item = &Trajectory> {
        self.backward.iter().chain(self.forward.iter())
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (f64, &[f64])> + ExactSizeIterator + '_ {
        self.xs.iter().copied().zip(self.ys.iter().map(Vec::as_slice))
    }

    /// Sample nearest to `x`.
    pub fn value_at(&self, x: f64) -> &[f64] {
        let idx = self
            .xs
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - x).abs().total_cmp(&(b.1 - x).abs()))
            .map(|(i, _)| i)
            .unwrap_or(0);
        &self.ys[idx]
    }
}

fn tag(e: Error, leg: LegTag) -> Error {
    match e {
        // already names its leg
        e @ Error::GridMisalignment { .. } => e,
        other => Error::Leg { leg, source: Box::new(other) },
    }
}

pub fn solve_avp(problem: &AvpProblem, method: &MethodSpec, h: f64) -> Result<AvpSolution> {
    solve_avp_with(problem, method, h, Execution::default())
}

/// As [`solve_avp`]; with a parallel policy the two legs of an
/// inner-interval problem run concurrently.
pub fn solve_avp_with(problem: &AvpProblem, method: &MethodSpec, h: f64, exec: Execution) -> Result<AvpSolution> {
    let class = classify_problem(problem);
    let system = problem.system();
    let (a, c) = (problem.interval().lo(), problem.interval().hi());
    let (b, yb) = (problem.condition().x, problem.condition().y.as_slice());

    let backward_leg = || integrate_leg(system, b, yb, a, method, h).map_err(|e| tag(e, LegTag::Backward));
    let forward_leg = || integrate_leg(system, b, yb, c, method, h).map_err(|e| tag(e, LegTag::Forward));

    let (backward, forward) = match class {
        ProblemClass::Final => (Some(backward_leg()?), None),
        ProblemClass::Initial => (None, Some(forward_leg()?)),
        ProblemClass::InnerInterval => {
            let (bw, fw) = exec.join(backward_leg, forward_leg);
            (Some(bw?), Some(fw?))
        }
    };

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    if let Some(bw) = &backward {
        debug_assert_eq!(bw.direction(), Direction::Backward);
        xs.extend(bw.xs().iter().rev().copied());
        ys.extend(bw.ys().iter().rev().cloned());
    }
    let boundary_index = xs.len().saturating_sub(1);
    if let Some(fw) = &forward {
        let skip = usize::from(backward.is_some());
        xs.extend(fw.xs().iter().skip(skip).copied());
        ys.extend(fw.ys().iter().skip(skip).cloned());
    }
    Ok(AvpSolution { class, xs, ys, boundary_index, backward, forward })
}

/// Inner-interval problem for a system with exactly two segments whose
/// shared end is the condition point. Each leg sees only its own segment.
pub fn solve_piecewise_avp(problem: &AvpProblem, method: &MethodSpec, h: f64) -> Result<AvpSolution> {
    let system = problem.system();
    let b = problem.condition().x;
    if system.segment_count() != 2 || system.breakpoints() != [b] {
        return Err(Error::InvalidProblem(format!(
            "piecewise solve needs two segments split at the condition point x = {b}"
        )));
    }
    if classify_problem(problem) != ProblemClass::InnerInterval {
        return Err(Error::InvalidProblem("piecewise solve needs an inner-interval condition".into()));
    }
    solve_avp(problem, method, h)
}

/// Solves a batch of problems with the same method and step.
pub fn solve_many(problems: &[AvpProblem], method: &MethodSpec, h: f64, exec: Execution) -> Vec<Result<AvpSolution>> {
    exec.map(problems, |p| solve_avp_with(p, method, h, Execution::Sequential))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::model::{BoundaryCondition, Interval, OdeSystem, Rhs};

    fn table1() -> OdeSystem {
        OdeSystem::new(1, |x: f64, y: &[f64], d: &mut [f64]| d[0] = y[0] - 2.0 * x / y[0]).unwrap()
    }

    fn constant(v: f64) -> Arc<dyn Rhs> {
        Arc::new(move |_x: f64, _y: &[f64], d: &mut [f64]| d[0] = v)
    }

    fn problem(sys: OdeSystem, b: f64, yb: f64) -> AvpProblem {
        AvpProblem::new(sys, Interval::new(0.0, 1.0).unwrap(), BoundaryCondition::new(b, vec![yb])).unwrap()
    }

    fn tent(left: f64, right: f64) -> OdeSystem {
        OdeSystem::piecewise(
            1,
            vec![
                (Interval::new(0.0, 0.5).unwrap(), constant(left)),
                (Interval::new(0.5, 1.0).unwrap(), constant(right)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn final_class_is_reversed_backward_leg() {
        let sol = solve_avp(&problem(table1(), 1.0, 3f64.sqrt()), &MethodSpec::rk4(), 0.1).unwrap();
        assert_eq!(sol.class(), ProblemClass::Final);
        assert_eq!(sol.len(), 11);
        assert_eq!(sol.boundary_index(), 10);
        let leg = sol.backward_leg().unwrap();
        let reversed: Vec<f64> = sol.xs().iter().rev().copied().collect();
        assert_eq!(reversed, leg.xs());
        for (i, y) in sol.ys().iter().rev().enumerate() {
            assert_eq!(y, &leg.ys()[i]);
        }
        assert!(sol.forward_leg().is_none());
    }

    #[test]
    fn initial_class_runs_forward() {
        let sol = solve_avp(&problem(table1(), 0.0, 1.0), &MethodSpec::rk4(), 0.1).unwrap();
        assert_eq!(sol.class(), ProblemClass::Initial);
        assert_eq!(sol.boundary_index(), 0);
        assert_eq!(sol.ys()[0], vec![1.0]);
        assert!((sol.ys()[10][0] - 1.732056).abs() < 1e-6);
    }

    #[test]
    fn inner_interval_split() {
        let sol = solve_avp(&problem(table1(), 0.5, 2f64.sqrt()), &MethodSpec::rk4(), 0.1).unwrap();
        assert_eq!(sol.class(), ProblemClass::InnerInterval);
        assert_eq!(sol.len(), 6 + 6 - 1);
        assert_eq!(sol.xs()[sol.boundary_index()], 0.5);
        assert_eq!(sol.ys()[sol.boundary_index()], vec![2f64.sqrt()]);
        assert!(sol.xs().windows(2).all(|w| w[0] < w[1]));
        assert!((sol.ys()[0][0] - 1.0).abs() < 1e-5);
        assert!((sol.ys()[10][0] - 3f64.sqrt()).abs() < 1e-5);
    }

    #[test]
    fn zero_field_gives_constant_solution() {
        let zero = OdeSystem::new(1, |_x: f64, _y: &[f64], d: &mut [f64]| d[0] = 0.0).unwrap();
        for b in [0.0, 0.3, 1.0] {
            let sol = solve_avp(&problem(zero.clone(), b, 7.0), &MethodSpec::rk4(), 0.1).unwrap();
            assert!(sol.ys().iter().all(|y| y[0] == 7.0));
        }
    }

    #[test]
    fn piecewise_tent() {
        let sol = solve_piecewise_avp(&problem(tent(1.0, -1.0), 0.5, 0.0), &MethodSpec::rk4(), 0.1).unwrap();
        assert!((sol.ys()[0][0] + 0.5).abs() < 1e-15);
        assert!((sol.ys()[sol.len() - 1][0] + 0.5).abs() < 1e-15);
        let flat = solve_piecewise_avp(&problem(tent(0.0, 0.0), 0.5, 3.0), &MethodSpec::rk4(), 0.1).unwrap();
        assert!(flat.ys().iter().all(|y| y[0] == 3.0));
    }

    #[test]
    fn piecewise_with_identical_segments_matches_unsplit() {
        let f: Arc<dyn Rhs> = Arc::new(|x: f64, y: &[f64], d: &mut [f64]| d[0] = y[0] - 2.0 * x / y[0]);
        let split = OdeSystem::piecewise(
            1,
            vec![(Interval::new(0.0, 0.5).unwrap(), f.clone()), (Interval::new(0.5, 1.0).unwrap(), f)],
        )
        .unwrap();
        let a = solve_piecewise_avp(&problem(split, 0.5, 2f64.sqrt()), &MethodSpec::rk4(), 0.1).unwrap();
        let b = solve_avp(&problem(table1(), 0.5, 2f64.sqrt()), &MethodSpec::rk4(), 0.1).unwrap();
        assert_eq!(a.xs(), b.xs());
        assert_eq!(a.ys(), b.ys());
    }

    #[test]
    fn misaligned_breakpoint_is_rejected() {
        let f = constant(1.0);
        let sys = OdeSystem::piecewise(
            1,
            vec![(Interval::new(0.0, 0.33).unwrap(), f.clone()), (Interval::new(0.33, 1.0).unwrap(), f)],
        )
        .unwrap();
        let err = solve_avp(&problem(sys, 1.0, 0.0), &MethodSpec::rk4(), 0.1).unwrap_err();
        match err {
            Error::GridMisalignment { breakpoint, leg, .. } => {
                assert_eq!(breakpoint, 0.33);
                assert_eq!(leg, LegTag::Backward);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn piecewise_solver_validates_configuration() {
        assert!(solve_piecewise_avp(&problem(table1(), 0.5, 1.0), &MethodSpec::rk4(), 0.1).is_err());
        assert!(solve_piecewise_avp(&problem(tent(1.0, 1.0), 1.0, 1.0), &MethodSpec::rk4(), 0.1).is_err());
    }

    #[test]
    fn leg_failures_are_tagged() {
        let sys = OdeSystem::new(1, |_x: f64, y: &[f64], d: &mut [f64]| d[0] = 1.0 / (y[0] - 1.0)).unwrap();
        let err = solve_avp(&problem(sys, 0.5, 1.0), &MethodSpec::rk4(), 0.1).unwrap_err();
        assert!(matches!(err, Error::Leg { .. }));
        assert!(matches!(err.root(), Error::NumericOverflow { .. }));
    }

    #[test]
    fn batch_policies_agree() {
        let problems: Vec<AvpProblem> = (0..=10)
            .map(|i| {
                let b = i as f64 / 10.0;
                problem(table1(), b, (1.0 + 2.0 * b).sqrt())
            })
            .collect();
        let seq = solve_many(&problems, &MethodSpec::rk4(), 0.05, Execution::Sequential);
        let par = solve_many(&problems, &MethodSpec::rk4(), 0.05, Execution::Parallel);
        for (s, p) in seq.into_iter().zip(par) {
            let (s, p) = (s.unwrap(), p.unwrap());
            assert_eq!(s.ys(), p.ys());
        }
    }
}
