//! Generate a small corpus on disk and benchmark solvers against the oracle.

use colorful_radii::bench::{bench_dir, BenchConfig};
use colorful_radii::generate::{generate, GeneratorMode, GeneratorSpec};
use colorful_radii::report::Algorithm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("colorful-radii-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    for seed in 0..4 {
        let mode = if seed % 2 == 0 { GeneratorMode::Uniform } else { GeneratorMode::Planted { clusters: 2, spread: 0.05 } };
        let spec = GeneratorSpec { n: 10, omega: 2, k: 2, m: vec![1, 1], dim: 2, mode, seed };
        generate(&spec)?.save(dir.join(format!("inst-{seed}.json")))?;
    }
    let cfg = BenchConfig {
        algorithms: vec![Algorithm::Cover2, Algorithm::Sor7Exact, Algorithm::Sor7Greedy, Algorithm::Oracle],
        epsilons: vec![0.5, 1.0],
        ..BenchConfig::default()
    };
    let summary = bench_dir(&dir, &cfg)?;
    print!("{}", summary.to_csv_string());
    println!("{} violation(s)", summary.violations());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
