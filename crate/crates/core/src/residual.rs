use crate::error::{Error, Result};
use crate::instance::{Instance, PointSet};
use crate::solution::{counting_set, Ball, ResidualRequirements};

/// The instance left after deleting the points covered by some balls: the
/// surviving points `P'`, their per-class counts `n'` and the per-class
/// numbers `rho'` that still have to be covered. The implied outlier budget
/// is `m' = n' - rho'`.
#[derive(Debug, Clone)]
pub struct ResidualInstance<'a> {
    inst: &'a Instance,
    active: PointSet,
    rho: ResidualRequirements,
    counts: Vec<usize>,
}

impl<'a> ResidualInstance<'a> {
    /// The whole instance with its original requirements `n - m`.
    pub fn full(inst: &'a Instance) -> Self {
        Self::from_parts(inst, inst.full_set(), ResidualRequirements(inst.requirements()))
            .expect("original requirements never exceed class sizes")
    }

    /// Residual of `inst` after removing every point of `∪ balls`, with
    /// requirements reduced by what the balls cover.
    pub fn after_balls(inst: &'a Instance, balls: &[Ball]) -> Self {
        let mut covered = PointSet::with_capacity(inst.n());
        for b in balls {
            covered.union_with(&inst.ball_set(b.center, b.radius));
        }
        Self::after_covering(inst, &covered)
    }

    pub(crate) fn after_covering(inst: &'a Instance, covered: &PointSet) -> Self {
        let rho = counting_set(inst, covered, &ResidualRequirements(inst.requirements()));
        let mut active = inst.full_set();
        active.difference_with(covered);
        Self::from_parts(inst, active, rho).expect("counting never leaves more required than available")
    }

    /// Arbitrary residual; fails when some class requires more points than
    /// remain active.
    pub fn from_parts(inst: &'a Instance, active: PointSet, rho: ResidualRequirements) -> Result<Self> {
        if active.len() != inst.n() || rho.0.len() != inst.omega() {
            return Err(Error::InvalidArgument("residual shape does not match the instance".into()));
        }
        let mut counts = vec![0; inst.omega()];
        for p in active.ones() {
            counts[inst.class_of(p)] += 1;
        }
        if let Some(i) = (0..counts.len()).find(|&i| rho.0[i] > counts[i]) {
            return Err(Error::Infeasible(format!(
                "class {i} requires {} points but only {} remain",
                rho.0[i], counts[i]
            )));
        }
        Ok(Self { inst, active, rho, counts })
    }

    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    pub fn active(&self) -> &PointSet {
        &self.active
    }

    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        self.active.ones()
    }

    pub fn len(&self) -> usize {
        self.active.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_clear()
    }

    /// Per-class counts of surviving points, `n'`.
    pub fn class_counts(&self) -> &[usize] {
        &self.counts
    }

    /// `rho'`.
    pub fn requirements(&self) -> &ResidualRequirements {
        &self.rho
    }

    /// `m' = n' - rho'`.
    pub fn outlier_budget(&self) -> Vec<usize> {
        self.counts.iter().zip(&self.rho.0).map(|(n, r)| n - r).collect()
    }

    /// True when `m' = n'`: every surviving point may be dropped.
    pub fn is_settled(&self) -> bool {
        self.rho.is_met()
    }

    /// `{0} ∪ {d(a, b) : a, b ∈ P'}`, sorted and deduplicated.
    pub fn candidate_radii(&self) -> Vec<f64> {
        let pts: Vec<usize> = self.points().collect();
        let mut radii = vec![0.0];
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                radii.push(self.inst.d(a, b));
            }
        }
        crate::instance::sort_dedup(&mut radii);
        radii
    }
}

/// Residual of `inst` after `balls`: `P' = P ∖ ∪ balls`, `n'` its class
/// counts, `rho' = counting(inst, balls, n - m)` and `m' = n' - rho'`.
pub fn residual_instance<'a>(inst: &'a Instance, balls: &[Ball]) -> ResidualInstance<'a> {
    ResidualInstance::after_balls(inst, balls)
}
