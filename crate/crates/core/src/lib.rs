pub mod error;
pub mod harness;
pub mod linalg;
pub mod metrics;
pub mod algorithms;
pub mod consensus;
pub mod network;
pub mod objectives;
pub mod rng;

pub use error::{Error, Result};
