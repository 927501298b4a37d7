//! Reflection tilings and the covers of translation surfaces they induce.

mod analysis;
pub mod rh;
pub(crate) mod tiling;
mod verdict;

#[cfg(test)]
mod tests;

pub use analysis::{analyze_cover, build_cover, ramification_index, AnalysisError, BasePoint, Cover, CoverAnalysis, Preimage};
pub use tiling::{embed, motion_from_word, reflect_across, Fan, FanKind, Motion, SideKind, Tiling, TilingError};
pub use verdict::{appropriate_verdict, Appropriate, AppropriateVerdict, BaseFlags, Reason};
