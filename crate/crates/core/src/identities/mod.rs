//! Identity registry, verification harness, parameter grids, sweeps, and
//! randomized counterexample search.

pub mod chain;
pub mod defs;
pub mod grid;
pub mod params;
pub mod registry;
pub mod report;
pub mod sampler;
pub mod sweep;

pub use chain::weighted_chain_sum;
pub use defs::conjecture_composition;
pub use grid::{parse_axis, AxisValue, GridSpec};
pub use params::{ParamPoint, Slot};
pub use registry::{EvalCtx, IdentityDef, Registry};
pub use report::{summarize, Counterexample, Form, IdentityReport, SweepSummary};
pub use sampler::{search_counterexample, SamplerSpec};
pub use sweep::sweep;
