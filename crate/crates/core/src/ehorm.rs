//! Threshold-energy sleep/awake scheduling.
//!
//! Every round the sink finds the alive node farthest from it and prices a
//! single packet from that distance:
//!
//! ```text
//! E_th = (e_elec + e_da)·D + e_mp·D·d_max⁴
//! ```
//!
//! Nodes whose residual energy falls below `E_th` are put to sleep, up to a
//! cap of `ns_cap` simultaneous sleepers. Sleepers are held in a FIFO queue;
//! when the queue exceeds the cap the oldest sleepers wake first. A node
//! may only transmit while it is active and holds at least `E_th`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::radio::RadioParams;
use crate::topology::{Network, Node, PowerState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhormConfig {
    pub enabled: bool,
    pub ns_cap: usize,
}

impl EhormConfig {
    pub const OFF: Self = Self {
        enabled: false,
        ns_cap: 10,
    };

    pub fn on(ns_cap: usize) -> Self {
        Self { enabled: true, ns_cap }
    }
}

impl Default for EhormConfig {
    fn default() -> Self {
        Self::OFF
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sleeper {
    pub id: usize,
    pub since_round: u32,
}

/// Sleepers, oldest first.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SleepQueue {
    entries: VecDeque<Sleeper>,
}

impl SleepQueue {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Sleeper> {
        self.entries.iter()
    }

    pub fn ids(&self) -> Vec<usize> {
        self.entries.iter().map(|s| s.id).collect()
    }

    /// Puts `id` to sleep at the back of the queue.
    pub fn push(&mut self, net: &mut Network, id: usize, round: u32) {
        net.nodes[id].power = PowerState::Asleep { since_round: round };
        self.entries.push_back(Sleeper { id, since_round: round });
    }

    fn wake_oldest(&mut self, net: &mut Network) -> Option<usize> {
        let s = self.entries.pop_front()?;
        net.nodes[s.id].power = PowerState::Active;
        Some(s.id)
    }

    fn purge_dead(&mut self, net: &mut Network) {
        self.entries.retain(|s| net.nodes[s.id].alive);
        for node in net.nodes.iter_mut().filter(|n| !n.alive) {
            node.power = PowerState::Active;
        }
    }
}

/// Threshold energy priced at the farthest alive node; `None` when every
/// node is dead.
pub fn compute_threshold(net: &Network, radio: &RadioParams, packet_bits: u64) -> Option<f64> {
    let (_, d) = net.max_distance_alive()?;
    let bits = packet_bits as f64;
    let d4 = (d * d) * (d * d);
    Some((radio.e_elec + radio.e_da) * bits + radio.e_mp * bits * d4)
}

/// What one scheduling pass changed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScheduleOutcome {
    pub woken: Vec<usize>,
    pub slept: Vec<usize>,
}

/// One scheduling pass: purge dead sleepers, wake the oldest while over the
/// cap, then put below-threshold active nodes to sleep in ascending id order
/// until the cap is reached.
pub fn schedule(
    net: &mut Network,
    queue: &mut SleepQueue,
    e_th: f64,
    cfg: &EhormConfig,
    round: u32,
) -> ScheduleOutcome {
    let mut outcome = ScheduleOutcome::default();
    if !cfg.enabled {
        return outcome;
    }
    queue.purge_dead(net);
    while queue.len() > cfg.ns_cap {
        if let Some(id) = queue.wake_oldest(net) {
            outcome.woken.push(id);
        }
    }
    for id in 0..net.len() {
        if queue.len() >= cfg.ns_cap {
            break;
        }
        let node = &net.nodes[id];
        if node.is_active() && node.energy < e_th {
            queue.push(net, id, round);
            outcome.slept.push(id);
        }
    }
    debug_assert!(queue.len() <= cfg.ns_cap);
    outcome
}

/// Whether `node` may transmit this round. The boundary is inclusive.
pub fn transmit_gate(node: &Node, e_th: f64) -> bool {
    node.is_active() && node.energy >= e_th
}
