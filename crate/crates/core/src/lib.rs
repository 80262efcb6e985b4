//! Ordering tests and rate regions for two-receiver discrete memoryless
//! broadcast channels.
//!
//! The crate classifies a pair of receivers into the hierarchy
//! degraded / less noisy / more capable / essentially less noisy /
//! essentially more capable, and sweeps the superposition-coding regions
//! and outer bounds that go with each class.

pub mod bscbec;
pub mod channels;
pub mod classify;
pub mod error;
pub mod probcore;
pub mod regions;
pub mod simplex;
pub mod verify;

pub use error::{Error, Result};
