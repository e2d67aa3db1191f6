pub mod bwb;
pub mod cech;
pub mod error;
pub mod exactla;
pub mod homology;
pub mod steinberg;
pub mod weights;

pub use error::{Error, Result};

/// Tag carried by every serialized table.
pub const SCHEMA: &str = "bggcoh/1";

/// Engine version; part of every cache key.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
