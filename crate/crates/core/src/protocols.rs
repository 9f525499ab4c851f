//! Cluster-head election (LEACH, SEP, DEEC) and nearest-head association.
//!
//! All three protocols share the rotating-epoch threshold
//!
//! ```text
//! T(n) = p_n / (1 - p_n · (r mod ⌈1/p_n⌉))   if n has not served this epoch
//!        0                                    otherwise
//! ```
//!
//! and differ only in how the per-node probability `p_n` is chosen: uniform
//! for LEACH, class-weighted for SEP, residual-energy-weighted for DEEC.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::topology::{Heterogeneity, Network, NodeClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProtocolKind {
    Leach,
    Sep,
    Deec,
}

impl ProtocolKind {
    pub const ALL: [ProtocolKind; 3] = [ProtocolKind::Leach, ProtocolKind::Sep, ProtocolKind::Deec];

    pub fn as_str(&self) -> &'static str {
        match self {
            ProtocolKind::Leach => "leach",
            ProtocolKind::Sep => "sep",
            ProtocolKind::Deec => "deec",
        }
    }

    /// Display label, with the `i` prefix for the sleep-scheduled variant.
    pub fn label(&self, with_sleep: bool) -> String {
        let base = self.as_str().to_uppercase();
        if with_sleep {
            format!("i{base}")
        } else {
            base
        }
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProtocolKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "leach" => Ok(ProtocolKind::Leach),
            "sep" => Ok(ProtocolKind::Sep),
            "deec" => Ok(ProtocolKind::Deec),
            other => Err(format!("expected leach, sep or deec, got `{other}`")),
        }
    }
}

/// A fully parameterised election rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Protocol {
    Leach { p: f64 },
    Sep { p: f64, hetero: Heterogeneity },
    /// `lifetime_rounds` is the network lifetime estimate `R` used to
    /// project the average energy `Ē(r)`.
    Deec { p: f64, lifetime_rounds: f64 },
}

impl Protocol {
    pub fn kind(&self) -> ProtocolKind {
        match self {
            Protocol::Leach { .. } => ProtocolKind::Leach,
            Protocol::Sep { .. } => ProtocolKind::Sep,
            Protocol::Deec { .. } => ProtocolKind::Deec,
        }
    }

    pub fn p(&self) -> f64 {
        match *self {
            Protocol::Leach { p } | Protocol::Sep { p, .. } | Protocol::Deec { p, .. } => p,
        }
    }
}

/// SEP's weighted probabilities `(p_nrm, p_adv)`.
pub fn sep_probabilities(p: f64, hetero: Heterogeneity) -> (f64, f64) {
    let denom = 1.0 + hetero.a * hetero.m;
    (p / denom, p * (1.0 + hetero.a) / denom)
}

/// Rounds per epoch, `⌈1/p⌉`. The small tolerance keeps `1/0.1` at 10.
pub fn epoch_length(p: f64) -> u32 {
    debug_assert!(p > 0.0);
    ((1.0 / p) - 1e-9).ceil().max(1.0) as u32
}

/// Rotating-epoch election threshold for a node that has not served yet.
pub fn rotating_threshold(p: f64, round: u32) -> f64 {
    if p <= 0.0 {
        return 0.0;
    }
    let phase = round % epoch_length(p);
    p / (1.0 - p * phase as f64)
}

/// Per-node memory across rounds: who already served this epoch.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ElectionState {
    pub barred: Vec<bool>,
}

impl ElectionState {
    pub fn new(n: usize) -> Self {
        Self { barred: vec![false; n] }
    }
}

/// Average-energy projection for DEEC. Falls back to the measured mean
/// residual of alive nodes once the projection is exhausted (`r ≥ R`).
fn deec_reference_energy(net: &Network, lifetime_rounds: f64) -> f64 {
    let n = net.len() as f64;
    let projected = net.total_initial_energy() / n * (1.0 - net.round as f64 / lifetime_rounds);
    if projected > 0.0 {
        return projected;
    }
    let alive = net.alive_count();
    if alive == 0 {
        0.0
    } else {
        net.nodes.iter().filter(|n| n.alive).map(|n| n.energy).sum::<f64>() / alive as f64
    }
}

/// Per-node head probability for this round, indexed by node id.
pub fn head_probabilities(net: &Network, proto: &Protocol) -> Vec<f64> {
    match *proto {
        Protocol::Leach { p } => vec![p; net.len()],
        Protocol::Sep { p, hetero } => {
            let (p_nrm, p_adv) = sep_probabilities(p, hetero);
            net.nodes
                .iter()
                .map(|n| match n.class {
                    NodeClass::Normal => p_nrm,
                    NodeClass::Advanced => p_adv,
                })
                .collect()
        }
        Protocol::Deec { p, lifetime_rounds } => {
            let reference = deec_reference_energy(net, lifetime_rounds);
            net.nodes
                .iter()
                .map(|n| {
                    if reference <= 0.0 {
                        0.0
                    } else {
                        (p * n.energy / reference).clamp(0.0, 1.0)
                    }
                })
                .collect()
        }
    }
}

/// Elects this round's cluster heads among active alive nodes. One uniform
/// draw is consumed per eligible candidate, in ascending id order. Returns
/// head ids in ascending order.
pub fn elect<R: Rng + ?Sized>(
    net: &Network,
    proto: &Protocol,
    state: &mut ElectionState,
    rng: &mut R,
) -> Vec<usize> {
    if state.barred.len() != net.len() {
        state.barred.resize(net.len(), false);
    }
    let round = net.round;
    let probs = head_probabilities(net, proto);

    for node in net.nodes.iter().filter(|n| n.alive) {
        let p = probs[node.id];
        if p > 0.0 && round % epoch_length(p) == 0 {
            state.barred[node.id] = false;
        }
    }

    let mut heads = Vec::new();
    for node in net.nodes.iter().filter(|n| n.is_active()) {
        if state.barred[node.id] {
            continue;
        }
        let threshold = rotating_threshold(probs[node.id], round);
        if rng.gen::<f64>() < threshold {
            state.barred[node.id] = true;
            heads.push(node.id);
        }
    }
    heads
}

/// Where a non-head sends its packet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Uplink {
    Head(usize),
    Sink,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ClusterAssignment {
    pub heads: Vec<usize>,
    pub membership: BTreeMap<usize, Uplink>,
}

impl ClusterAssignment {
    pub fn members_of(&self, head: usize) -> impl Iterator<Item = usize> + '_ {
        self.membership
            .iter()
            .filter(move |(_, up)| **up == Uplink::Head(head))
            .map(|(id, _)| *id)
    }

    pub fn is_head(&self, id: usize) -> bool {
        self.heads.binary_search(&id).is_ok()
    }
}

/// Nearest head among `heads` for a node, ties to the lower head id.
pub fn nearest_head(net: &Network, id: usize, heads: &[usize]) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for &h in heads {
        let d = net.distance_between(id, h);
        match best {
            Some((bh, bd)) if bd < d || (bd == d && bh < h) => {}
            _ => best = Some((h, d)),
        }
    }
    best
}

/// Joins every active alive non-head to its nearest head; with no heads,
/// everyone goes straight to the sink.
pub fn associate(net: &Network, heads: &[usize]) -> ClusterAssignment {
    let mut heads = heads.to_vec();
    heads.sort_unstable();
    heads.dedup();
    let membership = net
        .nodes
        .iter()
        .filter(|n| n.is_active() && heads.binary_search(&n.id).is_err())
        .map(|n| {
            let up = match nearest_head(net, n.id, &heads) {
                Some((h, _)) => Uplink::Head(h),
                None => Uplink::Sink,
            };
            (n.id, up)
        })
        .collect();
    ClusterAssignment { heads, membership }
}
