//! Small named instances used throughout the tests and examples.
//!
//! `LINE4` and `COLOR4` both place four points on a line at 0, 1, 10 and 11;
//! `COLOR4` alternates two classes (A, B, A, B).

use crate::instance::Instance;

pub const LINE_COORDS: [f64; 4] = [0.0, 1.0, 10.0, 11.0];

/// Single-class line instance.
pub fn line4(k: usize, m: usize) -> Instance {
    let pts = LINE_COORDS.iter().map(|&x| (0, vec![x])).collect();
    Instance::euclidean(pts, k, vec![m]).expect("LINE4 is valid")
}

/// Two-class line instance with classes A, B, A, B.
pub fn color4(k: usize, m: [usize; 2]) -> Instance {
    let pts = LINE_COORDS.iter().enumerate().map(|(i, &x)| (i % 2, vec![x])).collect();
    Instance::euclidean(pts, k, m.to_vec()).expect("COLOR4 is valid")
}

/// One point, one cluster, no outliers.
pub fn triv1() -> Instance {
    Instance::euclidean(vec![(0, vec![0.0])], 1, vec![0]).expect("TRIV1 is valid")
}
