//! Problem files: JSON documents describing one arbitrary value problem.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use avp_core::reduction::{Coefficient, Forcing};
use avp_core::{
    compile, compile_rhs, reduce_to_first_order, shift_delay, AvpProblem, BoundaryCondition, DelaySpec,
    HighOrderPolyOde, Interval, OdeSystem, Rhs,
};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Vec<String>>,
    pub interval: IntervalSpec,
    pub condition: ConditionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<Vec<SegmentSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delay: Option<DelayField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub high_order: Option<HighOrderSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalSpec {
    pub a: f64,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionSpec {
    pub x: f64,
    pub y: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentSpec {
    pub from: f64,
    pub to: f64,
    pub rhs: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DelayField {
    #[serde(rename = "T")]
    pub t: f64,
}

/// `leading * y^(n) + sum_i p_i * y^(i) = forcing`; coefficient expressions
/// may use `x` and the state `y1..yn` (`y1 = y`, `y2 = y'`, ...), the
/// forcing only `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HighOrderSpec {
    pub order: usize,
    pub leading: f64,
    pub coefficients: Vec<String>,
    pub forcing: String,
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::input(&path.display().to_string(), e))?;
        serde_json::from_str(&text).map_err(|e| CliError::input(&format!("{}", path.display()), e))
    }

    /// Validates the document and builds the problem it describes.
    pub fn build(&self) -> Result<AvpProblem, CliError> {
        let n = self.dimension;
        if n == 0 {
            return Err(CliError::Input("problem: dimension must be at least 1".into()));
        }
        let given = [self.rhs.is_some(), self.segments.is_some(), self.high_order.is_some()];
        if given.iter().filter(|g| **g).count() != 1 {
            return Err(CliError::Input(
                "problem: exactly one of `rhs`, `segments`, `high_order` must be present".into(),
            ));
        }
        if self.condition.y.len() != n {
            return Err(CliError::Input(format!(
                "problem: condition.y has {} values, dimension is {n}",
                self.condition.y.len()
            )));
        }

        let mut system = if let Some(rhs) = &self.rhs {
            OdeSystem::new(n, compile_rhs(rhs, n).map_err(|e| CliError::input("rhs", e))?)?
        } else if let Some(segments) = &self.segments {
            piecewise(segments, n)?
        } else if let Some(high) = &self.high_order {
            high_order(high, n)?
        } else {
            unreachable!("presence checked above")
        };

        if let Some(delay) = self.delay {
            system = shift_delay(&system, DelaySpec::new(delay.t)?)?;
        }
        let interval = Interval::new(self.interval.a, self.interval.c)?;
        let condition = BoundaryCondition::new(self.condition.x, self.condition.y.clone());
        Ok(AvpProblem::new(system, interval, condition)?)
    }
}

fn piecewise(segments: &[SegmentSpec], n: usize) -> Result<OdeSystem, CliError> {
    if segments.is_empty() {
        return Err(CliError::Input("segments: at least one segment is required".into()));
    }
    let mut pieces: Vec<(Interval, Arc<dyn Rhs>)> = Vec::with_capacity(segments.len());
    for (i, seg) in segments.iter().enumerate() {
        let context = format!("segments[{i}]");
        let span = Interval::new(seg.from, seg.to).map_err(|e| CliError::input(&context, e))?;
        let rhs = compile_rhs(&seg.rhs, n).map_err(|e| CliError::input(&context, e))?;
        pieces.push((span, Arc::new(rhs)));
    }
    Ok(OdeSystem::piecewise(n, pieces)?)
}

fn high_order(spec: &HighOrderSpec, n: usize) -> Result<OdeSystem, CliError> {
    if spec.order != n {
        return Err(CliError::Input(format!(
            "high_order: order {} does not match dimension {n}",
            spec.order
        )));
    }
    if spec.coefficients.len() != spec.order {
        return Err(CliError::Input(format!(
            "high_order: {} coefficients given, order {} needs {}",
            spec.coefficients.len(),
            spec.order,
            spec.order
        )));
    }
    let mut coefficients: Vec<Coefficient> = Vec::with_capacity(n);
    for (i, text) in spec.coefficients.iter().enumerate() {
        let c = compile(text, n).map_err(|e| CliError::input(&format!("high_order.coefficients[{i}]"), e))?;
        coefficients.push(Arc::new(move |x: f64, s: &[f64]| c.eval(x, s)));
    }
    let f = compile(&spec.forcing, 0).map_err(|e| CliError::input("high_order.forcing", e))?;
    let forcing: Forcing = Arc::new(move |x: f64| f.eval(x, &[]));
    let equation = HighOrderPolyOde::new(n, spec.leading, coefficients, forcing)?;
    Ok(reduce_to_first_order(&equation))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(json: &str) -> ProblemFile {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn reference_problem_builds() {
        let p = parse(
            r#"{"dimension":1,"rhs":["y - 2*x/y"],"interval":{"a":0,"c":1},"condition":{"x":1,"y":[1.7320508075688772]}}"#,
        );
        let built = p.build().unwrap();
        assert_eq!(built.system().eval(0.0, &[1.0]), vec![1.0]);
    }

    #[test]
    fn exactly_one_field_source() {
        let p = parse(
            r#"{"dimension":1,"rhs":["y"],"high_order":{"order":1,"leading":1,"coefficients":["0"],"forcing":"1"},
                "interval":{"a":0,"c":1},"condition":{"x":0,"y":[1]}}"#,
        );
        assert!(matches!(p.build(), Err(CliError::Input(_))));
    }

    #[test]
    fn high_order_matches_worked_example() {
        let p = parse(
            r#"{"dimension":3,"high_order":{"order":3,"leading":4,"coefficients":["0","2","3"],"forcing":"-1"},
                "interval":{"a":0,"c":1},"condition":{"x":1,"y":[0,0,0]}}"#,
        );
        let sys = p.build().unwrap();
        let s = [0.1, 0.7, -0.3];
        assert_eq!(sys.system().eval(0.0, &s), vec![0.7, -0.3, (-3.0 * -0.3 - 2.0 * 0.7 - 1.0) / 4.0]);
    }

    #[test]
    fn forcing_may_not_use_state() {
        let p = parse(
            r#"{"dimension":1,"high_order":{"order":1,"leading":1,"coefficients":["0"],"forcing":"y"},
                "interval":{"a":0,"c":1},"condition":{"x":0,"y":[1]}}"#,
        );
        assert!(p.build().is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(serde_json::from_str::<ProblemFile>(
            r#"{"dimension":1,"rhs":["y"],"interval":{"a":0,"c":1},"condition":{"x":0,"y":[1]},"extra":1}"#
        )
        .is_err());
    }

    #[test]
    fn delay_shifts_the_field() {
        let p = parse(
            r#"{"dimension":1,"rhs":["x"],"delay":{"T":0.5},"interval":{"a":0,"c":1},"condition":{"x":0,"y":[0]}}"#,
        );
        assert_eq!(p.build().unwrap().system().eval(0.25, &[0.0]), vec![0.75]);
    }
}
