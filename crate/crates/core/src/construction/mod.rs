//! The inductive construction of `V(2^n)` and `U(2^n)`.

pub mod blocks;
pub mod build;
pub mod context;
pub mod schedule;
pub mod tower;
pub mod verify;

pub use blocks::BlockKernel;
pub use build::{build, build_with, select_post, ConstructionState, StateJson, StepRecord};
pub use context::{context_image, pair_context_image, pair_project, ContextGen};
pub use schedule::{
    f_dim_bound, parse_provider, FProvider, ProviderSpec, Schedule, ScheduleJson, StepCase, VChoice, ZSet,
};
pub use tower::{Coords, LevelMap, Tower};
pub use verify::verify_seven;

#[cfg(test)]
mod tests;
