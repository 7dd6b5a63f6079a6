//! Problem and solution data model.
//!
//! An [`AvpProblem`] couples an [`OdeSystem`] on a closed interval `[a, c]`
//! with a single value condition `y(b) = y_b`, where `b` may sit anywhere in
//! the interval. Where `b` sits decides the [`ProblemClass`], and with it
//! which legs the solver runs.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed interval of the independent variable with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub(crate) fn translate(&self, delta: f64) -> Result<Self> {
        Interval::new(self.lo + delta, self.hi + delta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Increasing independent variable.
    Forward,
    /// Decreasing independent variable.
    Backward,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Forward => f.write_str("forward"),
            Direction::Backward => f.write_str("backward"),
        }
    }
}

/// Right-hand side `f(x, y)` of `dy/dx = f(x, y)`, written into `dydx`.
pub trait Rhs: Send + Sync {
    fn eval(&self, x: f64, y: &[f64], dydx: &mut [f64]);
}

impl<F> Rhs for F
where
    F: Fn(f64, &[f64], &mut [f64]) + Send + Sync,
{
    fn eval(&self, x: f64, y: &[f64], dydx: &mut [f64]) {
        self(x, y, dydx)
    }
}

#[derive(Clone)]
struct Piece {
    span: Option<Interval>,
    rhs: Arc<dyn Rhs>,
    /// Added to `x` before calling `rhs`.
    shift: f64,
}

/// The right-hand side of one segment, as seen by an integrator.
#[derive(Clone, Copy)]
pub struct ActiveRhs<'a> {
    rhs: &'a dyn Rhs,
    shift: f64,
}

impl Rhs for ActiveRhs<'_> {
    fn eval(&self, x: f64, y: &[f64], dydx: &mut [f64]) {
        self.rhs.eval(x + self.shift, y, dydx)
    }
}

/// A first-order system of dimension `n`, optionally piecewise in `x`.
///
/// A piecewise system carries contiguous segments; integrators pick the
/// segment that contains the step being taken, so the right-hand side at a
/// break point is always evaluated from inside the active segment.
#[derive(Clone)]
pub struct OdeSystem {
    dimension: usize,
    pieces: Vec<Piece>,
}

impl fmt::Debug for OdeSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OdeSystem")
            .field("dimension", &self.dimension)
            .field("segments", &self.pieces.iter().map(|p| p.span).collect::<Vec<_>>())
            .finish()
    }
}

impl OdeSystem {
    /// A system defined by a single right-hand side on the whole real line.
    pub fn new(dimension: usize, rhs: impl Rhs + 'static) -> Result<Self> {
        Self::from_arc(dimension, Arc::new(rhs))
    }

    pub fn from_arc(dimension: usize, rhs: Arc<dyn Rhs>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidArgument("system dimension must be positive".into()));
        }
        Ok(OdeSystem {
            dimension,
            pieces: vec![Piece { span: None, rhs, shift: 0.0 }],
        })
    }

    /// A system whose right-hand side changes at the shared ends of
    /// consecutive segments. Segments must be listed in increasing order and
    /// touch exactly.
    pub fn piecewise(dimension: usize, segments: Vec<(Interval, Arc<dyn Rhs>)>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidArgument("system dimension must be positive".into()));
        }
        if segments.is_empty() {
            return Err(Error::InvalidArgument("a piecewise system needs at least one segment".into()));
        }
        for pair in segments.windows(2) {
            if pair[0].0.hi() != pair[1].0.lo() {
                return Err(Error::InvalidArgument(format!(
                    "segments [{}, {}] and [{}, {}] are not contiguous",
                    pair[0].0.lo(),
                    pair[0].0.hi(),
                    pair[1].0.lo(),
                    pair[1].0.hi()
                )));
            }
        }
        Ok(OdeSystem {
            dimension,
            pieces: segments
                .into_iter()
                .map(|(span, rhs)| Piece { span: Some(span), rhs, shift: 0.0 })
                .collect(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_piecewise(&self) -> bool {
        self.pieces.iter().any(|p| p.span.is_some())
    }

    pub fn segment_count(&self) -> usize {
        self.pieces.len()
    }

    /// Union of the segment spans, or `None` for an unbounded system.
    pub fn span(&self) -> Option<Interval> {
        let first = self.pieces.first()?.span?;
        let last = self.pieces.last()?.span?;
        Some(Interval { lo: first.lo, hi: last.hi })
    }

    /// Interior break points between consecutive segments.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.pieces
            .iter()
            .skip(1)
            .filter_map(|p| p.span.map(|s| s.lo))
            .collect()
    }

    /// Right-hand side of the segment containing the open step `(lo, hi)`.
    pub fn rhs_for_step(&self, a: f64, b: f64) -> ActiveRhs<'_> {
        self.rhs_at(0.5 * (a + b))
    }

    /// Right-hand side of the segment containing `x`. Break points belong to
    /// the later segment; points outside the span use the nearest segment.
    pub fn rhs_at(&self, x: f64) -> ActiveRhs<'_> {
        let idx = self
            .pieces
            .iter()
            .rposition(|p| p.span.is_none_or(|s| s.lo <= x))
            .unwrap_or(0);
        let piece = &self.pieces[idx];
        ActiveRhs { rhs: piece.rhs.as_ref(), shift: piece.shift }
    }

    /// Evaluates `f(x, y)` into a fresh vector.
    pub fn eval(&self, x: f64, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dimension];
        self.rhs_at(x).eval(x, y, &mut out);
        out
    }

    /// The system `x -> f(x + t, y)`; segment spans move by `-t`.
    pub(crate) fn shifted(&self, t: f64) -> Result<OdeSystem> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                Ok(Piece {
                    span: p.span.map(|s| s.translate(-t)).transpose()?,
                    rhs: p.rhs.clone(),
                    shift: p.shift + t,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OdeSystem { dimension: self.dimension, pieces })
    }
}

/// `y(x_b) = y_b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCondition {
    pub x: f64,
    pub y: Vec<f64>,
}

impl BoundaryCondition {
    pub fn new(x: f64, y: Vec<f64>) -> Self {
        BoundaryCondition { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemClass {
    /// Condition at the left end.
    Initial,
    /// Condition at the right end.
    Final,
    /// Condition strictly inside the interval.
    InnerInterval,
}

impl fmt::Display for ProblemClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemClass::Initial => f.write_str("initial"),
            ProblemClass::Final => f.write_str("final"),
            ProblemClass::InnerInterval => f.write_str("inner-interval"),
        }
    }
}

/// An ODE on `[a, c]` with its value known at one point `b ∈ [a, c]`.
#[derive(Debug, Clone)]
pub struct AvpProblem {
    system: OdeSystem,
    interval: Interval,
    condition: BoundaryCondition,
}

impl AvpProblem {
    pub fn new(system: OdeSystem, interval: Interval, condition: BoundaryCondition) -> Result<Self> {
        if !interval.contains(condition.x) {
            return Err(Error::InvalidProblem(format!(
                "condition point {} lies outside [{}, {}]",
                condition.x,
                interval.lo(),
                interval.hi()
            )));
        }
        if condition.y.len() != system.dimension() {
            return Err(Error::DimensionMismatch {
                expected: system.dimension(),
                got: condition.y.len(),
            });
        }
        if let Some(v) = condition.y.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidProblem(format!("condition value {v} is not finite")));
        }
        if let Some(span) = system.span() {
            if span.lo() > interval.lo() || span.hi() < interval.hi() {
                return Err(Error::InvalidProblem(format!(
                    "segments cover [{}, {}] but the problem interval is [{}, {}]",
                    span.lo(),
                    span.hi(),
                    interval.lo(),
                    interval.hi()
                )));
            }
        }
        Ok(AvpProblem { system, interval, condition })
    }

    pub fn system(&self) -> &OdeSystem {
        &self.system
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn condition(&self) -> &BoundaryCondition {
        &self.condition
    }
}

/// Initial iff `b = a`, final iff `b = c`, inner-interval otherwise.
/// Coincidence is tested exactly.
pub fn classify_problem(problem: &AvpProblem) -> ProblemClass {
    let b = problem.condition.x;
    if b == problem.interval.lo() {
        ProblemClass::Initial
    } else if b == problem.interval.hi() {
        ProblemClass::Final
    } else {
        ProblemClass::InnerInterval
    }
}

/// Discrete solution of one leg, ordered in the direction of integration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    xs: Vec<f64>,
    ys: Vec<Vec<f64>>,
    method_name: String,
    step: f64,
    direction: Direction,
    /// Grid indices (of the produced sample) whose corrector hit its
    /// iteration cap before meeting the tolerance.
    nonconverged: Vec<usize>,
}

impl Trajectory {
    pub(crate) fn new(
        xs: Vec<f64>,
        ys: Vec<Vec<f64>>,
        method_name: String,
        step: f64,
        direction: Direction,
        nonconverged: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(xs.len(), ys.len());
        debug_assert!(!xs.is_empty());
        Trajectory { xs, ys, method_name, step, direction, nonconverged }
    }

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

    pub fn method_name(&self) -> &str {
        &self.method_name
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn nonconverged_steps(&self) -> &[usize] {
        &self.nonconverged
    }

    pub fn last(&self) -> (f64, &[f64]) {
        let i = self.xs.len() - 1;
        (self.xs[i], &self.ys[i])
    }

    /// Samples as `(x, y)` pairs in stored order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (f64, &[f64])> + ExactSizeIterator + '_ {
        self.xs.iter().copied().zip(self.ys.iter().map(Vec::as_slice))
    }

    /// Component `i` of every sample.
    pub fn component(&self, i: usize) -> Vec<f64> {
        self.ys.iter().map(|y| y[i]).collect()
    }
}
