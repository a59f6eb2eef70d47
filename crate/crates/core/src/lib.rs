//! Additive and web cellular automata, percolation paths in their space-time
//! diagrams, and the link/blocker/ether machinery used to certify replication.

pub mod additive;
pub mod bitrow;
pub mod census;
pub mod config;
pub mod error;
pub mod gf2;
pub mod percolation;
pub mod replication;
pub mod rng;
pub mod webca;

pub use additive::{AdditiveRule, SpaceTimeDiagram, Void};
pub use bitrow::BitRow;
pub use config::{BinaryConfig, TernaryConfig};
pub use error::{Error, Result};
