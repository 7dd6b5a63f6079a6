//! Fixtures shared by the integration test targets.
#![allow(dead_code)]

use avp_core::{table1, OdeSystem};

/// `(text, x, y, expected)`; expected values are the correctly rounded
/// results for the given double inputs, computed at 60 digits.
pub const CORPUS: &[(&str, f64, &[f64], f64)] = &[
    ("1 + 2 * 3", 0.0, &[], 7.0),
    ("(1 + 2) * 3", 0.0, &[], 9.0),
    ("7 - 4 - 2", 0.0, &[], 1.0),
    ("7 - (4 - 2)", 0.0, &[], 5.0),
    ("9 / 3 / 2", 0.0, &[], 1.5),
    ("2 ^ 3 ^ 2", 0.0, &[], 512.0),
    ("(2 ^ 3) ^ 2", 0.0, &[], 64.0),
    ("-2 ^ 2", 0.0, &[], -4.0),
    ("(-2) ^ 2", 0.0, &[], 4.0),
    ("-x ^ 2 + 1", 0.5, &[], 0.75),
    ("2 * -x", 0.75, &[], -1.5),
    ("3 - -x", 0.25, &[], 3.25),
    ("- - x", 1.5, &[], 1.5),
    ("x * y / 4", 3.0, &[5.0], 3.75),
    ("x / y * 4", 3.0, &[5.0], 2.4),
    ("x + y * 2 ^ 3", 0.5, &[0.25], 2.5),
    ("x ^ 2 * 3 + 1", 1.25, &[], 5.6875),
    ("y - 2*x/y", 1.0, &[1.7320508075688772], 0.5773502691896256),
    ("y - 2*x/y", 0.3, &[1.2], 0.7),
    ("sqrt(1 + 2*x)", 0.4, &[], 1.3416407864998738),
    ("sqrt(1 + 2*x)", 0.7, &[], 1.5491933384829668),
    ("sin(x) ^ 2 + cos(x) ^ 2", 0.3, &[], 1.0),
    ("exp(-x) * 2", 1.0, &[], 0.7357588823428847),
    ("ln(x) / 2", 10.0, &[], 1.151292546497023),
    ("tan(x)", 0.5, &[], 0.5463024898437905),
    ("abs(x - 3)", 1.0, &[], 2.0),
    ("-abs(x)", -2.5, &[], -2.5),
    ("exp(ln(x))", 2.0, &[], 2.0),
    ("sqrt(x) ^ 2", 4.0, &[], 4.0),
    ("y1 * y2 - x", 2.0, &[3.0, 0.5], -0.5),
    ("y2", 0.0, &[3.0, 4.0], 4.0),
    ("-y1", 0.0, &[3.0, 4.0], -3.0),
    ("(y1 + y2) / (y1 - y2)", 0.0, &[3.0, 1.0], 2.0),
    ("x ^ (1 + 1)", 3.0, &[], 9.0),
    ("x ^ 0.5", 2.25, &[], 1.5),
    ("2 ^ (x)", 10.0, &[], 1024.0),
    ("1e-3 * x + .5", 2.0, &[], 0.502),
    ("3 * sin(x) - 2 * cos(x)", 1.0, &[], 1.44380834268741),
    ("cos(sin(x))", 1.0, &[], 0.6663667453928805),
    ("y1 ^ 2 + y2 ^ 2", 0.0, &[3.0, 4.0], 25.0),
    ("-(x + 1) * 2", 1.0, &[], -4.0),
    ("x - 1 + 2", 1.0, &[], 2.0),
    ("8 / 2 * 4", 0.0, &[], 16.0),
];

/// Malformed inputs and the byte offset the error must point at.
pub const MALFORMED: &[(&str, usize)] = &[
    ("y1 + sin(", 9),
    ("", 0),
    ("x +", 3),
    ("(x", 2),
    ("x)", 1),
    ("2 ^ x", 4),
    ("x ^ -1", 4),
    ("sin x", 4),
    ("3 $ 4", 2),
    ("foo(x)", 0),
    ("x * * 2", 4),
    ("y0 + 1", 0),
    ("1 2", 2),
    ("sqrt()", 5),
    ("x + z", 4),
    ("((x)", 4),
    ("exp", 3),
];

pub fn ulp_distance(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let ulp = f64::from_bits(b.abs().to_bits() + 1) - b.abs();
    (a - b).abs() / ulp
}

pub fn linear(lambda: f64) -> OdeSystem {
    OdeSystem::new(1, move |_x: f64, y: &[f64], d: &mut [f64]| d[0] = lambda * y[0]).unwrap()
}

pub fn table1_exact(x: f64) -> Vec<f64> {
    table1::exact_vec(x)
}
