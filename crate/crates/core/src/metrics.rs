//! Per-round energy accounting: cluster totals and averages, and the energy
//! each sleeper saved by not taking part in the round.
//!
//! A sleeper's saving is what it would have spent had it been awake as an
//! ordinary member in the same round: one packet to the nearest elected
//! head, or to the sink when that head is silent or no head exists.

use serde::{Deserialize, Serialize};

use crate::protocols::{nearest_head, ClusterAssignment, Uplink};
use crate::radio::{self, RadioParams};
use crate::topology::Network;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterEnergy {
    pub head: usize,
    pub members: usize,
    pub total: f64,
    pub average: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SleeperSaving {
    pub id: usize,
    pub joules: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SavingsRecord {
    pub per_sleeper: Vec<SleeperSaving>,
    pub e_save_total: f64,
    /// `e_save_total / N`, N being the whole population.
    pub e_save_average: f64,
    pub clusters: Vec<ClusterEnergy>,
}

/// Head consumption plus its members' consumption, averaged over the
/// cluster size (head included).
pub fn cluster_energy(assignment: &ClusterAssignment, ledger: &[f64]) -> Vec<ClusterEnergy> {
    let heads = &assignment.heads;
    let mut totals: Vec<f64> = heads.iter().map(|&h| ledger[h]).collect();
    let mut counts = vec![0usize; heads.len()];
    for (&id, uplink) in &assignment.membership {
        if let Uplink::Head(h) = *uplink {
            if let Ok(i) = heads.binary_search(&h) {
                totals[i] += ledger[id];
                counts[i] += 1;
            }
        }
    }
    heads
        .iter()
        .zip(totals.into_iter().zip(counts))
        .map(|(&head, (total, members))| ClusterEnergy {
            head,
            members,
            total,
            average: total / (members + 1) as f64,
        })
        .collect()
}

/// Counterfactual member cost for node `id`: the packet it would have sent
/// given this round's heads. `transmitting` lists the heads that actually
/// forwarded traffic, sorted ascending.
pub fn member_saving(
    net: &Network,
    id: usize,
    assignment: &ClusterAssignment,
    transmitting: &[usize],
    radio: &RadioParams,
    bits: u64,
) -> f64 {
    let d = match nearest_head(net, id, &assignment.heads) {
        Some((h, d)) if transmitting.binary_search(&h).is_ok() => d,
        _ => net.distance_to_sink(id),
    };
    radio::tx_energy(bits, d, radio).expect("distances are non-negative")
}

/// Counterfactual cost of a sleeper acting as a head with no members:
/// aggregation plus the uplink to the sink. Reception vanishes because a
/// head that was asleep has nobody to receive from.
pub fn head_role_saving(net: &Network, id: usize, radio: &RadioParams, bits: u64) -> f64 {
    radio::ch_tx_energy(bits, net.distance_to_sink(id), radio).expect("distances are non-negative")
}

/// Savings of every alive sleeper this round, plus the cluster table.
pub fn sleep_savings(
    net: &Network,
    assignment: &ClusterAssignment,
    transmitting: &[usize],
    ledger: &[f64],
    radio: &RadioParams,
    bits: u64,
) -> SavingsRecord {
    let per_sleeper: Vec<SleeperSaving> = net
        .nodes
        .iter()
        .filter(|n| n.alive && n.is_asleep())
        .map(|n| SleeperSaving {
            id: n.id,
            joules: member_saving(net, n.id, assignment, transmitting, radio, bits),
        })
        .collect();
    let e_save_total: f64 = per_sleeper.iter().map(|s| s.joules).sum();
    SavingsRecord {
        per_sleeper,
        e_save_total,
        e_save_average: e_save_total / net.len() as f64,
        clusters: cluster_energy(assignment, ledger),
    }
}
