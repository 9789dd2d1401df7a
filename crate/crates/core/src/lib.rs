//! Ordered-cascade bandits.
//!
//! Arms (inference models) are arranged in a cascade; each slot the first
//! arm whose trigger fires serves the user, who returns binary feedback.
//! The crate provides the reward model ([`model`]), a slot simulator
//! ([`env`]), four online ordering policies ([`policies`]), brute-force
//! oracles ([`oracle`]), and a seeded, parallel regret harness ([`harness`])
//! with CSV/SVG output ([`report`]).

pub mod config;
pub mod env;
pub mod error;
pub mod harness;
pub mod model;
pub mod oracle;
pub mod policies;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
pub use model::{ArmParams, Ordering};
