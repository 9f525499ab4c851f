//! Round-based simulator for cluster-based wireless sensor networks with
//! threshold-driven sleep/awake scheduling.
//!
//! Nodes are scattered over a rectangular field around a central sink and
//! organised into clusters every round by LEACH, SEP or DEEC. With sleep
//! scheduling enabled, the sink prices a packet from the farthest alive node
//! and nodes below that threshold energy go to sleep (up to a cap) or stay
//! silent, which pushes back first-node death.
//!
//! The runnable programs under `examples/` walk through each piece:
//!
//! ```bash
//! cargo run -p ehorm-sim --example radio_costs
//! cargo run -p ehorm-sim --example deployment
//! cargo run -p ehorm-sim --example sleep_scheduler
//! cargo run -p ehorm-sim --example single_run
//! cargo run -p ehorm-sim --example compare_protocols
//! cargo run -p ehorm-sim --example energy_savings
//! cargo run -p ehorm-sim --release --example seed_ensemble
//! ```

pub mod config;
pub mod ehorm;
pub mod engine;
pub mod ensemble;
pub mod error;
pub mod metrics;
pub mod output;
pub mod protocols;
pub mod radio;
pub mod topology;

pub use config::{parse_config, RunSpec};
pub use ehorm::{EhormConfig, SleepQueue};
pub use engine::{run, RoundRecord, SimConfig, SimResult, Simulation};
pub use error::ConfigError;
pub use protocols::{Protocol, ProtocolKind};
pub use radio::RadioParams;
pub use topology::{Heterogeneity, Network, Node, Position};
