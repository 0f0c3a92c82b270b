//! Constant-factor FPT approximation for colorful sum-of-radii clustering.
//!
//! Points are split into color classes, each with its own outlier budget
//! `m_i`; the goal is at most `k` balls centered at input points, covering
//! all but `m_i` points of every class, with the smallest total radius.
//!
//! - [`cover2`]: iterative covering over guessed radius profiles,
//!   `(2 + ε) · OPT`, exponential in `k + m`.
//! - [`sor7`]: covering driven by a colorful k-center subroutine with factor
//!   `β`, `(2β + 1 + ε) · OPT`, exponential in `k` only. With the exact
//!   subroutine this is `(3 + ε) · OPT`.
//! - [`oracle`]: exact brute force for small instances, used to certify the
//!   ratios above.
//!
//! [`generate`], [`report`] and [`bench`](mod@bench) cover instance generation, single
//! runs with JSON-lines reports, and ratio benchmarking over a corpus.

pub mod bench;
pub mod cover2;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod instance;
pub mod io;
pub mod kcenter;
pub mod oracle;
pub mod profiles;
pub mod report;
pub mod residual;
pub mod search;
pub mod solution;
pub mod sor7;

pub use error::{Error, Result};
pub use instance::{Instance, MetricKind, PointSet};
pub use residual::{residual_instance, ResidualInstance};
pub use search::SearchConfig;
pub use solution::{counting, verify_solution, Ball, FeasibilityReport, ResidualRequirements, Slot, Solution};
