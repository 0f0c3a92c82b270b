//! Seeded random Euclidean instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GeneratorMode {
    /// Coordinates uniform in the unit cube.
    Uniform,
    /// `clusters` centers uniform in the unit cube; point `p` lands within
    /// `spread` (per coordinate) of center `p mod clusters`.
    Planted { clusters: usize, spread: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub n: usize,
    pub omega: usize,
    pub k: usize,
    pub m: Vec<usize>,
    pub dim: usize,
    pub mode: GeneratorMode,
    pub seed: u64,
}

impl GeneratorSpec {
    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.n == 0 || self.omega == 0 || self.dim == 0 {
            return bad("n, omega and dim must be positive".into());
        }
        if self.m.len() != self.omega {
            return bad(format!("m has {} entries but omega = {}", self.m.len(), self.omega));
        }
        if self.k == 0 || self.k > self.n {
            return bad(format!("k = {} must lie in [1, {}]", self.k, self.n));
        }
        for (i, &mi) in self.m.iter().enumerate() {
            // Round-robin assignment gives class i this many points.
            let size = self.n / self.omega + usize::from(i < self.n % self.omega);
            if mi > size {
                return bad(format!("m[{i}] = {mi} exceeds class size {size}"));
            }
        }
        if let GeneratorMode::Planted { clusters, spread } = self.mode {
            if clusters == 0 {
                return bad("planted mode needs at least one cluster".into());
            }
            if !(spread >= 0.0 && spread.is_finite()) {
                return bad(format!("spread must be nonnegative, got {spread}"));
            }
        }
        Ok(())
    }
}

/// Deterministic in `spec`: the same spec always yields the same instance.
pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let cube = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..spec.dim).map(|_| rng.random::<f64>()).collect() };
    let coords: Vec<Vec<f64>> = match spec.mode {
        GeneratorMode::Uniform => (0..spec.n).map(|_| cube(&mut rng)).collect(),
        GeneratorMode::Planted { clusters, spread } => {
            let centers: Vec<Vec<f64>> = (0..clusters).map(|_| cube(&mut rng)).collect();
            (0..spec.n)
                .map(|p| {
                    centers[p % clusters]
                        .iter()
                        .map(|&c| if spread > 0.0 { c + rng.random_range(-spread..=spread) } else { c })
                        .collect()
                })
                .collect()
        }
    };
    let mut classes: Vec<usize> = (0..spec.n).map(|p| p % spec.omega).collect();
    classes.shuffle(&mut rng);
    Instance::euclidean(classes.into_iter().zip(coords).collect(), spec.k, spec.m.clone())
}
