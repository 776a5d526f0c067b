//! Valuations along parameterized branches and jet-space dimensions.

mod branch;
mod determinacy;
mod engine;
pub(crate) mod tau;

pub use branch::{order_and_leading, BranchParam, CurveModel, Germ, Valuation, DEFAULT_TRUNC};
pub use determinacy::{jet_determinacy_check, random_high_order_germ, DeterminacyOutcome};
pub use engine::{c_of_v, fiber_report, jet_subspace_dim, FiberReport, JetConfig, JetEngine};
pub use tau::{rat, TauSeries};
