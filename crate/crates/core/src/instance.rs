//! Colorful clustering instances: labelled points in a metric space, the
//! cluster count `k` and the per-class outlier budgets `m`.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Set of point ids, indexed `0..n`.
pub type PointSet = FixedBitSet;

/// Absolute slack allowed when checking the triangle inequality of an
/// explicit matrix read from text.
const TRIANGLE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    /// Distances come from the L2 norm of coordinate differences.
    Euclidean,
    /// Distances are given as a symmetric matrix.
    Explicit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub class: usize,
    pub coords: Option<Vec<f64>>,
}

/// An immutable colorful sum-of-radii instance.
///
/// Distances are materialised into a dense `n × n` table at construction, so
/// both metric kinds are served by the same lookup afterwards.
#[derive(Debug, Clone)]
pub struct Instance {
    points: Vec<Point>,
    metric: MetricKind,
    dist: Vec<f64>,
    k: usize,
    m: Vec<usize>,
    class_sizes: Vec<usize>,
}

impl Instance {
    /// Builds a Euclidean instance from `(class, coords)` pairs.
    pub fn euclidean(points: Vec<(usize, Vec<f64>)>, k: usize, m: Vec<usize>) -> Result<Self> {
        let n = points.len();
        if let Some((_, first)) = points.first() {
            let dim = first.len();
            if let Some(bad) = points.iter().position(|(_, c)| c.len() != dim) {
                return Err(Error::InvalidInstance(format!(
                    "point {bad} has dimension {} but point 0 has {dim}",
                    points[bad].1.len()
                )));
            }
        }
        if points.iter().flat_map(|(_, c)| c).any(|x| !x.is_finite()) {
            return Err(Error::InvalidInstance("non-finite coordinate".into()));
        }
        let mut dist = vec![0.0; n * n];
        for a in 0..n {
            for b in (a + 1)..n {
                let d = euclid(&points[a].1, &points[b].1);
                dist[a * n + b] = d;
                dist[b * n + a] = d;
            }
        }
        let points = points
            .into_iter()
            .map(|(class, coords)| Point { class, coords: Some(coords) })
            .collect();
        Self::assemble(points, MetricKind::Euclidean, dist, k, m)
    }

    /// Builds an instance over an explicit distance matrix. The triangle
    /// inequality is checked in O(n³) unless `check_triangle` is false.
    pub fn explicit(
        classes: Vec<usize>,
        matrix: Vec<Vec<f64>>,
        k: usize,
        m: Vec<usize>,
        check_triangle: bool,
    ) -> Result<Self> {
        let n = classes.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInstance(format!("distance matrix must be {n}×{n}")));
        }
        let mut dist = Vec::with_capacity(n * n);
        for (a, row) in matrix.iter().enumerate() {
            for (b, &d) in row.iter().enumerate() {
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidInstance(format!("d({a},{b}) = {d} is not a finite nonnegative value")));
                }
                if a == b && d != 0.0 {
                    return Err(Error::InvalidInstance(format!("d({a},{a}) = {d} must be zero")));
                }
                if d != matrix[b][a] {
                    return Err(Error::InvalidInstance(format!("matrix is not symmetric at ({a},{b})")));
                }
                dist.push(d);
            }
        }
        if check_triangle {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if dist[x * n + z] > dist[x * n + y] + dist[y * n + z] + TRIANGLE_SLACK {
                            return Err(Error::InvalidInstance(format!(
                                "triangle inequality violated: d({x},{z}) > d({x},{y}) + d({y},{z})"
                            )));
                        }
                    }
                }
            }
        }
        let points = classes.into_iter().map(|class| Point { class, coords: None }).collect();
        Self::assemble(points, MetricKind::Explicit, dist, k, m)
    }

    fn assemble(points: Vec<Point>, metric: MetricKind, dist: Vec<f64>, k: usize, m: Vec<usize>) -> Result<Self> {
        let n = points.len();
        let omega = m.len();
        if n == 0 {
            return Err(Error::InvalidInstance("instance has no points".into()));
        }
        if omega == 0 {
            return Err(Error::InvalidInstance("outlier budget vector m is empty".into()));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidInstance(format!("k = {k} must lie in [1, {n}]")));
        }
        let mut class_sizes = vec![0; omega];
        for (id, p) in points.iter().enumerate() {
            if p.class >= omega {
                return Err(Error::InvalidInstance(format!(
                    "point {id} has class {} but only {omega} classes are budgeted",
                    p.class
                )));
            }
            class_sizes[p.class] += 1;
        }
        for (i, (&mi, &ni)) in m.iter().zip(&class_sizes).enumerate() {
            if mi > ni {
                return Err(Error::InvalidInstance(format!("m[{i}] = {mi} exceeds class size {ni}")));
            }
        }
        Ok(Self { points, metric, dist, k, m, class_sizes })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of classes (colors).
    pub fn omega(&self) -> usize {
        self.m.len()
    }

    pub fn m(&self) -> &[usize] {
        &self.m
    }

    pub fn total_outliers(&self) -> usize {
        self.m.iter().sum()
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn metric(&self) -> MetricKind {
        self.metric
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn class_of(&self, p: usize) -> usize {
        self.points[p].class
    }

    /// Minimum number of points to cover per class, `n_i - m_i`.
    pub fn requirements(&self) -> Vec<usize> {
        self.class_sizes.iter().zip(&self.m).map(|(n, m)| n - m).collect()
    }

    /// Copy of this instance with a different `k` and outlier vector.
    pub fn with_budgets(&self, k: usize, m: Vec<usize>) -> Result<Self> {
        Self::assemble(self.points.clone(), self.metric, self.dist.clone(), k, m)
    }

    fn check_id(&self, id: usize) -> Result<()> {
        if id < self.n() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { id, n: self.n() })
        }
    }

    /// Checked distance lookup.
    pub fn distance(&self, a: usize, b: usize) -> Result<f64> {
        self.check_id(a)?;
        self.check_id(b)?;
        Ok(self.d(a, b))
    }

    /// Unchecked distance lookup; panics on out-of-range ids.
    #[inline]
    pub fn d(&self, a: usize, b: usize) -> f64 {
        self.dist[a * self.n() + b]
    }

    /// Ids of `B(center, radius)`, ascending. Membership is `d <= radius`
    /// with no epsilon.
    pub fn ball_members(&self, center: usize, radius: f64) -> Result<Vec<usize>> {
        self.check_id(center)?;
        if radius.is_nan() || radius < 0.0 {
            return Err(Error::InvalidArgument(format!("ball radius {radius} is negative")));
        }
        Ok(self.ball_set(center, radius).ones().collect())
    }

    pub(crate) fn ball_set(&self, center: usize, radius: f64) -> PointSet {
        let n = self.n();
        let row = &self.dist[center * n..(center + 1) * n];
        let mut set = PointSet::with_capacity(n);
        for (p, &d) in row.iter().enumerate() {
            if d <= radius {
                set.insert(p);
            }
        }
        set
    }

    /// `{0} ∪ {d(x, y)}`, sorted and deduplicated.
    pub fn candidate_radii(&self) -> Vec<f64> {
        let mut radii = Vec::with_capacity(1 + self.dist.len() / 2);
        radii.push(0.0);
        radii.extend_from_slice(&self.dist);
        sort_dedup(&mut radii);
        radii
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    pub(crate) fn full_set(&self) -> PointSet {
        let mut set = PointSet::with_capacity(self.n());
        set.insert_range(..);
        set
    }
}

/// Free-function form of [`Instance::distance`].
pub fn distance(inst: &Instance, a: usize, b: usize) -> Result<f64> {
    inst.distance(a, b)
}

/// Free-function form of [`Instance::ball_members`].
pub fn ball_members(inst: &Instance, center: usize, radius: f64) -> Result<Vec<usize>> {
    inst.ball_members(center, radius)
}

/// Free-function form of [`Instance::candidate_radii`].
pub fn candidate_radii_of_instance(inst: &Instance) -> Vec<f64> {
    inst.candidate_radii()
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub(crate) fn sort_dedup(values: &mut Vec<f64>) {
    values.sort_by(f64::total_cmp);
    values.dedup();
}
