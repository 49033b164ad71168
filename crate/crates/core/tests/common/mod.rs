#![allow(dead_code, clippy::approx_constant)]

use dcfpr_core::{DNumber, Problem};

pub fn d(components: &[(f64, f64)]) -> DNumber {
    DNumber::new(components.iter().copied()).unwrap()
}

/// Three certain judgments 0.55, 0.65, 0.75 over A1..A4.
pub fn example1() -> Problem {
    Problem::with_default_labels(vec![
        DNumber::certain(0.55),
        DNumber::certain(0.65),
        DNumber::certain(0.75),
    ])
    .unwrap()
}

/// One incomplete judgment (mass 0.8) and one uncertain judgment.
pub fn example2() -> Problem {
    Problem::with_default_labels(vec![
        d(&[(0.55, 0.8)]),
        DNumber::certain(0.65),
        d(&[(0.75, 0.9), (0.85, 0.1)]),
    ])
    .unwrap()
}

pub const EXAMPLE1_CFPR: [[f64; 4]; 4] = [
    [0.5, 0.55, 0.7, 0.95],
    [0.45, 0.5, 0.65, 0.9],
    [0.3, 0.35, 0.5, 0.75],
    [0.05, 0.1, 0.25, 0.5],
];

/// Reference rescaled D-CFPR of example 2, values rounded to 3 decimals.
pub fn example2_reference_dcfpr() -> Vec<Vec<Vec<(f64, f64)>>> {
    vec![
        vec![
            vec![(0.5, 1.0)],
            vec![(0.545, 0.8)],
            vec![(0.682, 0.8)],
            vec![(0.909, 0.72), (1.0, 0.08)],
        ],
        vec![
            vec![(0.455, 0.8)],
            vec![(0.5, 1.0)],
            vec![(0.636, 1.0)],
            vec![(0.864, 0.9), (0.955, 0.1)],
        ],
        vec![
            vec![(0.318, 0.8)],
            vec![(0.364, 1.0)],
            vec![(0.5, 1.0)],
            vec![(0.727, 0.9), (0.818, 0.1)],
        ],
        vec![
            vec![(0.091, 0.72), (0.0, 0.08)],
            vec![(0.136, 0.9), (0.045, 0.1)],
            vec![(0.273, 0.9), (0.182, 0.1)],
            vec![(0.5, 1.0)],
        ],
    ]
}

pub const EXAMPLE2_I: [[f64; 4]; 4] = [
    [0.5000, 0.4360, 0.5456, 0.7345],
    [0.3640, 0.5000, 0.6360, 0.8731],
    [0.2544, 0.3640, 0.5000, 0.7361],
    [0.0655, 0.1269, 0.2639, 0.5000],
];

pub const EXAMPLE2_P: [[f64; 4]; 4] = [
    [0.0, 0.68, 1.0, 1.0],
    [0.32, 0.0, 1.0, 1.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, 0.0, 0.0],
];

pub const EXAMPLE2_COMPLETED_I: [[f64; 4]; 4] = [
    [0.5000, 0.5360, 0.6456, 0.8345],
    [0.4640, 0.5000, 0.6360, 0.8731],
    [0.3544, 0.3640, 0.5000, 0.7361],
    [0.1655, 0.1269, 0.2639, 0.5000],
];

/// Weight table: rows are alternatives, columns high / medium / low credibility.
pub const EXAMPLE1_WEIGHTS: [[f64; 3]; 4] = [
    [0.338, 0.294, 0.272],
    [0.312, 0.281, 0.266],
    [0.237, 0.244, 0.247],
    [0.112, 0.181, 0.216],
];

pub const EXAMPLE2_WEIGHTS: [[f64; 3]; 4] = [
    [0.327, 0.289, 0.269],
    [0.309, 0.280, 0.265],
    [0.241, 0.246, 0.248],
    [0.123, 0.186, 0.218],
];

/// (lower, upper, lower_closed, upper_closed) per alternative.
pub const EXAMPLE1_INTERVALS: [(f64, f64, bool, bool); 4] = [
    (0.250, 0.409, false, true),
    (0.250, 0.364, false, true),
    (0.227, 0.250, true, false),
    (0.000, 0.250, true, false),
];

pub const EXAMPLE2_INTERVALS: [(f64, f64, bool, bool); 4] = [
    (0.250, 0.402, false, true),
    (0.250, 0.366, false, true),
    (0.232, 0.250, true, false),
    (0.000, 0.250, true, false),
];

pub const PRESET_LAMBDAS: [f64; 3] = [2.0, 4.0, 8.0];

pub mod oracles;
