//! File formats, the character-sum cache, reports and batch sweeps around
//! `hodgebound-core`.

mod error;
pub mod commands;
pub mod ledger;
pub mod report;
pub mod specfile;
pub mod sweep;

pub use error::{AppError, AppResult};
