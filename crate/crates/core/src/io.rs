//! JSON file formats for instances and solutions.
//!
//! Instance:
//! `{"metric":"euclidean"|"explicit", "points":[{"class":0,"coords":[..]},..], "matrix":[[..]..], "k":2, "m":[0,1]}`
//! where `matrix` is present for explicit metrics only.
//!
//! Solution: `{"balls":[{"center":0,"radius":1.5,"slot":"cluster"},..]}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::instance::{Instance, MetricKind};
use crate::solution::{Ball, Solution};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub class: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub metric: String,
    pub points: Vec<PointRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
    pub k: usize,
    pub m: Vec<usize>,
}

impl InstanceFile {
    pub fn into_instance(self, check_triangle: bool) -> Result<Instance> {
        match self.metric.as_str() {
            "euclidean" => {
                let pts = self
                    .points
                    .into_iter()
                    .enumerate()
                    .map(|(i, p)| {
                        p.coords
                            .map(|c| (p.class, c))
                            .ok_or_else(|| Error::InvalidInstance(format!("point {i} has no coords")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Instance::euclidean(pts, self.k, self.m)
            }
            "explicit" => {
                let matrix = self
                    .matrix
                    .ok_or_else(|| Error::InvalidInstance("explicit metric requires \"matrix\"".into()))?;
                let classes = self.points.into_iter().map(|p| p.class).collect();
                Instance::explicit(classes, matrix, self.k, self.m, check_triangle)
            }
            other => Err(Error::InvalidInstance(format!("unknown metric \"{other}\""))),
        }
    }

    pub fn from_instance(inst: &Instance) -> Self {
        let points = inst
            .points()
            .iter()
            .map(|p| PointRecord { class: p.class, coords: p.coords.clone() })
            .collect();
        let (metric, matrix) = match inst.metric() {
            MetricKind::Euclidean => ("euclidean", None),
            MetricKind::Explicit => {
                let n = inst.n();
                let rows = (0..n).map(|a| (0..n).map(|b| inst.d(a, b)).collect()).collect();
                ("explicit", Some(rows))
            }
        };
        Self { metric: metric.into(), points, matrix, k: inst.k(), m: inst.m().to_vec() }
    }
}

impl Instance {
    pub fn from_json_str(text: &str, check_triangle: bool) -> Result<Self> {
        serde_json::from_str::<InstanceFile>(text)?.into_instance(check_triangle)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&InstanceFile::from_instance(self)).expect("instance serialization cannot fail")
    }

    pub fn load(path: impl AsRef<Path>, check_triangle: bool) -> Result<Self> {
        Self::from_json_str(&fs::read_to_string(path)?, check_triangle)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json_string())?;
        Ok(())
    }

    /// Hex SHA-256 of the canonical JSON serialization.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_json_string().as_bytes()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub balls: Vec<Ball>,
}

impl SolutionFile {
    pub fn from_solution(sol: &Solution) -> Self {
        Self { balls: sol.balls.clone() }
    }

    pub fn into_solution(self, inst: &Instance) -> Solution {
        Solution::from_balls(inst, self.balls)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("solution serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::color4;
    use crate::solution::Slot;

    #[test]
    fn parses_euclidean_file() {
        let text = r#"{"metric":"euclidean","points":[{"class":0,"coords":[0.0]},{"class":1,"coords":[1.0]}],"k":1,"m":[0,1]}"#;
        let inst = Instance::from_json_str(text, true).unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.m(), &[0, 1]);
        assert_eq!(inst.d(0, 1), 1.0);
        assert_eq!(inst.to_json_string(), text);
    }

    #[test]
    fn parses_explicit_file() {
        let text = r#"{"metric":"explicit","points":[{"class":0},{"class":0}],"matrix":[[0.0,2.5],[2.5,0.0]],"k":1,"m":[0]}"#;
        let inst = Instance::from_json_str(text, true).unwrap();
        assert_eq!(inst.d(1, 0), 2.5);
        assert_eq!(inst.to_json_string(), text);
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(Instance::from_json_str(r#"{"metric":"manhattan","points":[],"k":1,"m":[0]}"#, true).is_err());
        assert!(Instance::from_json_str(r#"{"metric":"explicit","points":[{"class":0}],"k":1,"m":[0]}"#, true).is_err());
        assert!(Instance::from_json_str(r#"{"metric":"euclidean","points":[{"class":0}],"k":1,"m":[0]}"#, true).is_err());
        assert!(Instance::from_json_str("not json", true).is_err());
    }

    #[test]
    fn solution_file_format() {
        let text = r#"{"balls":[{"center":0,"radius":1.0,"slot":"cluster"},{"center":2,"radius":0.0,"slot":"outlier"}]}"#;
        let file: SolutionFile = serde_json::from_str(text).unwrap();
        assert_eq!(file.balls[1].slot, Slot::Outlier);
        assert_eq!(file.to_json_string(), text);
        let sol = file.into_solution(&color4(1, [1, 1]));
        assert_eq!(sol.cost, 1.0);
    }

    #[test]
    fn digest_is_stable() {
        let a = color4(1, [1, 1]).digest();
        assert_eq!(a, color4(1, [1, 1]).digest());
        assert_ne!(a, color4(1, [0, 1]).digest());
        assert_eq!(a.len(), 64);
    }
}
