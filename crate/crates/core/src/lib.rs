pub mod classify;
pub mod cli;
pub mod config;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod manifold;
pub mod numeric;
pub mod otbridge;
pub mod polyring;
pub mod realroots;
pub mod serde_util;
pub mod units;

pub use error::{Error, Result};
