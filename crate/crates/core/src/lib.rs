//! One-step ODE integration in either direction, for conditions placed at
//! the left end, the right end, or anywhere inside an interval.
//!
//! A backward step runs the same increment as a forward step with the sign
//! of `h` flipped, so every method here works in both directions. Problems
//! with the condition strictly inside the interval are split into a backward
//! and a forward leg that share the condition point.
//!
//! ```
//! use avp_core::{solve_avp, AvpProblem, BoundaryCondition, Interval, MethodSpec, OdeSystem};
//!
//! let system = OdeSystem::new(1, |x: f64, y: &[f64], d: &mut [f64]| d[0] = y[0] - 2.0 * x / y[0]).unwrap();
//! let problem = AvpProblem::new(
//!     system,
//!     Interval::new(0.0, 1.0).unwrap(),
//!     BoundaryCondition::new(1.0, vec![3f64.sqrt()]),
//! )
//! .unwrap();
//! let sol = solve_avp(&problem, &MethodSpec::rk4(), 0.1).unwrap();
//! assert!((sol.value_at(0.0)[0] - 1.0).abs() < 2e-6);
//! ```
//!
//! With the default `parallel` feature, [`Execution::Parallel`] uses rayon
//! for independent work (the two legs of an inner-interval problem, batches
//! of problems, Lipschitz sampling lattices, step-refinement runs). Without
//! it everything runs sequentially with identical results.

pub mod analysis;
pub mod avp;
pub mod error;
pub mod expr;
pub mod grid;
pub mod model;
pub mod parallel;
pub mod reduction;
pub mod steppers;
pub mod table1;

pub use analysis::{
    backward_amplification, bisect, convergence_condition, estimate_lipschitz, estimate_lipschitz_with,
    global_error_bound, observed_order, observed_order_with, observed_orders, rk4_convergence_root,
    rk4_stability_boundary, stability_condition, AnalysisReport, LipschitzEstimate, Relation,
};
pub use avp::{solve_avp, solve_avp_with, solve_many, solve_piecewise_avp, AvpSolution};
pub use error::{Error, LegTag, Result};
pub use expr::{compile, compile_rhs, compile_system, evaluate, parse, CompiledExpr, CompiledRhs, ExprError, Expression};
pub use grid::make_uniform_grid;
pub use model::{
    classify_problem, AvpProblem, BoundaryCondition, Direction, Interval, OdeSystem, ProblemClass, Rhs, Trajectory,
};
pub use parallel::Execution;
pub use reduction::{reduce_to_first_order, shift_delay, solve_high_order_fvp, DelaySpec, HighOrderPolyOde};
pub use steppers::{
    advance, decrement_function, integrate_leg, CorrectorSolver, MethodKind, MethodSpec, RkTableau, StepRecord,
    TableauSpec,
};
