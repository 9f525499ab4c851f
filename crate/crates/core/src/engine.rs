//! Round loop and whole-run orchestration.
//!
//! A round runs, in order: threshold, sleep/awake scheduling, head election,
//! association, traffic, energy deduction and death, metrics. Planning
//! (everything up to and including traffic pricing) is separate from
//! committing the energy ledger, so a round can be inspected or replayed
//! before it mutates the network.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ehorm::{self, EhormConfig, SleepQueue};
use crate::error::ConfigError;
use crate::metrics::{self, SavingsRecord};
use crate::protocols::{self, ClusterAssignment, ElectionState, Protocol, ProtocolKind, Uplink};
use crate::radio::{self, RadioParams};
use crate::topology::{Deployment, Heterogeneity, Network, Node, PowerState};

pub const ELECTION_STREAM: u64 = 1;
pub const DRY_RUN_STREAM: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: usize,
    pub width: f64,
    pub height: f64,
    /// Initial energy of a normal node, in joules.
    pub e0: f64,
    pub p: f64,
    pub hetero: Heterogeneity,
    pub packet_bits: u64,
    pub protocol: ProtocolKind,
    pub ehorm: EhormConfig,
    pub max_rounds: u32,
    pub seed: u64,
    pub radio: RadioParams,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            n: 100,
            width: 100.0,
            height: 100.0,
            e0: 0.5,
            p: 0.1,
            hetero: Heterogeneity::HOMOGENEOUS,
            packet_bits: 4000,
            protocol: ProtocolKind::Leach,
            ehorm: EhormConfig::OFF,
            max_rounds: 5000,
            seed: 0,
            radio: RadioParams::table_defaults(),
        }
    }
}

impl SimConfig {
    pub fn deployment(&self) -> Deployment {
        Deployment {
            n: self.n,
            width: self.width,
            height: self.height,
            e0: self.e0,
            hetero: self.hetero,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.deployment().validate()?;
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(ConfigError::invalid("p", self.p, "must lie strictly between 0 and 1"));
        }
        if self.max_rounds == 0 {
            return Err(ConfigError::invalid("max_rounds", 0, "must be at least 1"));
        }
        self.radio
            .validate()
            .map_err(|e| ConfigError::invalid("radio", format!("{:?}", self.radio), e.to_string()))?;
        Ok(())
    }

    pub fn with_ehorm(self, enabled: bool) -> Self {
        Self {
            ehorm: EhormConfig { enabled, ..self.ehorm },
            ..self
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    /// Run label such as `LEACH` or `iSEP`.
    pub fn label(&self) -> String {
        self.protocol.label(self.ehorm.enabled)
    }
}

/// Priced traffic of one round. `ledger` holds what each node is charged
/// before clamping at its residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Traffic {
    pub ledger: Vec<f64>,
    /// Heads that forwarded an aggregate to the sink, ascending.
    pub transmitting: Vec<usize>,
    pub received: Vec<u32>,
}

impl Traffic {
    pub fn requested_total(&self) -> f64 {
        self.ledger.iter().sum()
    }
}

/// Prices one round of traffic. Members pass `gate` to send; a head that
/// fails `gate` forwards nothing and its members go straight to the sink.
pub fn deliver<G>(
    net: &Network,
    assignment: &ClusterAssignment,
    gate: G,
    radio: &RadioParams,
    bits: u64,
) -> Traffic
where
    G: Fn(&Node) -> bool,
{
    let n = net.len();
    let mut ledger = vec![0.0; n];
    let mut received = vec![0u32; n];
    let transmitting: Vec<usize> = assignment
        .heads
        .iter()
        .copied()
        .filter(|&h| gate(&net.nodes[h]))
        .collect();
    let tx = |bits, d| radio::tx_energy(bits, d, radio).expect("distances are non-negative");

    for (&id, uplink) in &assignment.membership {
        if !gate(&net.nodes[id]) {
            continue;
        }
        match *uplink {
            Uplink::Head(h) if transmitting.binary_search(&h).is_ok() => {
                ledger[id] += tx(bits, net.distance_between(id, h));
                ledger[h] += radio::rx_energy(bits, radio);
                received[h] += 1;
            }
            _ => ledger[id] += tx(bits, net.distance_to_sink(id)),
        }
    }
    for &h in &transmitting {
        ledger[h] += radio::ch_tx_energy(bits, net.distance_to_sink(h), radio)
            .expect("distances are non-negative");
    }
    Traffic {
        ledger,
        transmitting,
        received,
    }
}

/// Deducts the ledger from residual energies. A node whose charge meets or
/// exceeds its residual is drained to zero and dies. Returns the energy
/// actually removed.
pub fn apply_ledger(net: &mut Network, ledger: &[f64]) -> f64 {
    let mut consumed = 0.0;
    for (node, &charge) in net.nodes.iter_mut().zip(ledger) {
        if charge <= 0.0 || !node.alive {
            continue;
        }
        if charge >= node.energy {
            consumed += node.energy;
            node.energy = 0.0;
            node.alive = false;
            node.power = PowerState::Active;
        } else {
            consumed += charge;
            node.energy -= charge;
        }
    }
    consumed
}

/// DEEC's lifetime estimate `R`: total initial energy divided by the cost
/// of one LEACH-style dry-run round over the full population.
pub fn estimate_lifetime_rounds(net: &Network, p: f64, radio: &RadioParams, bits: u64, seed: u64) -> Option<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(DRY_RUN_STREAM);
    let mut state = ElectionState::new(net.len());
    let heads = protocols::elect(net, &Protocol::Leach { p }, &mut state, &mut rng);
    let assignment = protocols::associate(net, &heads);
    let per_round = deliver(net, &assignment, Node::is_active, radio, bits).requested_total();
    (per_round > 0.0).then(|| net.total_initial_energy() / per_round)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    /// 1-based count of rounds completed.
    pub round: u32,
    pub alive: usize,
    pub sleeping: usize,
    pub heads: usize,
    pub e_th: Option<f64>,
    pub consumed: f64,
    pub residual: f64,
    pub savings: SavingsRecord,
}

/// Everything decided for a round before energy is deducted.
#[derive(Debug, Clone)]
pub struct RoundPlan {
    pub e_th: Option<f64>,
    pub schedule: ehorm::ScheduleOutcome,
    pub assignment: ClusterAssignment,
    pub traffic: Traffic,
    pub savings: SavingsRecord,
}

pub struct Simulation {
    cfg: SimConfig,
    net: Network,
    protocol: Protocol,
    election: ElectionState,
    queue: SleepQueue,
    rng: ChaCha8Rng,
    consumed_total: f64,
}

impl Simulation {
    pub fn new(cfg: SimConfig) -> Result<Self, ConfigError> {
        cfg.validate()?;
        let net = Network::deploy(&cfg.deployment(), cfg.seed)?;
        Self::with_network(cfg, net)
    }

    /// Runs `cfg` over an explicitly constructed network.
    pub fn with_network(cfg: SimConfig, net: Network) -> Result<Self, ConfigError> {
        cfg.validate()?;
        let protocol = match cfg.protocol {
            ProtocolKind::Leach => Protocol::Leach { p: cfg.p },
            ProtocolKind::Sep => Protocol::Sep {
                p: cfg.p,
                hetero: cfg.hetero,
            },
            ProtocolKind::Deec => Protocol::Deec {
                p: cfg.p,
                lifetime_rounds: estimate_lifetime_rounds(&net, cfg.p, &cfg.radio, cfg.packet_bits, cfg.seed)
                    .unwrap_or(cfg.max_rounds as f64),
            },
        };
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(ELECTION_STREAM);
        Ok(Self {
            election: ElectionState::new(net.len()),
            cfg,
            net,
            protocol,
            queue: SleepQueue::new(),
            rng,
            consumed_total: 0.0,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn network(&self) -> &Network {
        &self.net
    }

    pub fn network_mut(&mut self) -> &mut Network {
        &mut self.net
    }

    pub fn protocol(&self) -> &Protocol {
        &self.protocol
    }

    pub fn queue(&self) -> &SleepQueue {
        &self.queue
    }

    pub fn election_state_mut(&mut self) -> &mut ElectionState {
        &mut self.election
    }

    pub fn consumed_total(&self) -> f64 {
        self.consumed_total
    }

    pub fn is_finished(&self) -> bool {
        self.net.alive_count() == 0 || self.net.round >= self.cfg.max_rounds
    }

    /// Transmission permission under the current settings. Without sleep
    /// scheduling every active node may send.
    pub fn gate(&self, e_th: Option<f64>) -> impl Fn(&Node) -> bool {
        let threshold = if self.cfg.ehorm.enabled { e_th } else { None };
        move |n: &Node| match threshold {
            Some(t) => ehorm::transmit_gate(n, t),
            None => n.is_active(),
        }
    }

    /// Threshold, scheduling, election, association and pricing. Mutates
    /// power states, the sleep queue, election memory and the RNG, but not
    /// energies.
    pub fn plan_round(&mut self) -> RoundPlan {
        let round = self.net.round;
        let bits = self.cfg.packet_bits;
        let e_th = if self.cfg.ehorm.enabled {
            ehorm::compute_threshold(&self.net, &self.cfg.radio, bits)
        } else {
            None
        };
        let schedule = match e_th {
            Some(t) => ehorm::schedule(&mut self.net, &mut self.queue, t, &self.cfg.ehorm, round),
            None => Default::default(),
        };
        let heads = protocols::elect(&self.net, &self.protocol, &mut self.election, &mut self.rng);
        let assignment = protocols::associate(&self.net, &heads);
        let traffic = deliver(&self.net, &assignment, self.gate(e_th), &self.cfg.radio, bits);
        let savings = metrics::sleep_savings(
            &self.net,
            &assignment,
            &traffic.transmitting,
            &traffic.ledger,
            &self.cfg.radio,
            bits,
        );
        RoundPlan {
            e_th,
            schedule,
            assignment,
            traffic,
            savings,
        }
    }

    /// Deducts a planned round and advances the round counter.
    pub fn commit(&mut self, plan: RoundPlan) -> RoundRecord {
        let consumed = apply_ledger(&mut self.net, &plan.traffic.ledger);
        self.consumed_total += consumed;
        self.net.round += 1;
        RoundRecord {
            round: self.net.round,
            alive: self.net.alive_count(),
            sleeping: self.net.sleeping_count(),
            heads: plan.assignment.heads.len(),
            e_th: plan.e_th,
            consumed,
            residual: self.net.total_residual_energy(),
            savings: plan.savings,
        }
    }

    pub fn step(&mut self) -> RoundRecord {
        let plan = self.plan_round();
        self.commit(plan)
    }

    pub fn run(mut self) -> SimResult {
        let mut series = Vec::new();
        while !self.is_finished() {
            series.push(self.step());
        }
        let deec_lifetime_rounds = match self.protocol {
            Protocol::Deec { lifetime_rounds, .. } => Some(lifetime_rounds),
            _ => None,
        };
        SimResult::new(self.cfg, self.net.len(), series, deec_lifetime_rounds)
    }
}

/// Runs one configuration to completion.
pub fn run(cfg: SimConfig) -> Result<SimResult, ConfigError> {
    Ok(Simulation::new(cfg)?.run())
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("percentage k must satisfy 0 < k <= 100, got {0}")]
pub struct InvalidPercentage(pub f64);

/// k% die time: first round at which at least `k` percent of the
/// population is dead.
pub fn kdt(series: &[RoundRecord], population: usize, k: f64) -> Result<Option<u32>, InvalidPercentage> {
    if !(k > 0.0 && k <= 100.0) {
        return Err(InvalidPercentage(k));
    }
    let needed = k / 100.0 * population as f64;
    Ok(series
        .iter()
        .find(|r| (population - r.alive) as f64 >= needed - 1e-9)
        .map(|r| r.round))
}

/// First round with any death.
pub fn first_death(series: &[RoundRecord], population: usize) -> Option<u32> {
    series.iter().find(|r| r.alive < population).map(|r| r.round)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub config: SimConfig,
    pub population: usize,
    pub series: Vec<RoundRecord>,
    pub fnd: Option<u32>,
    pub hnd: Option<u32>,
    pub and_: Option<u32>,
    pub deec_lifetime_rounds: Option<f64>,
}

impl SimResult {
    pub fn new(config: SimConfig, population: usize, series: Vec<RoundRecord>, deec_lifetime_rounds: Option<f64>) -> Self {
        let fnd = first_death(&series, population);
        let hnd = kdt(&series, population, 50.0).expect("50 is a valid percentage");
        let and_ = kdt(&series, population, 100.0).expect("100 is a valid percentage");
        Self {
            config,
            population,
            series,
            fnd,
            hnd,
            and_,
            deec_lifetime_rounds,
        }
    }

    pub fn seed(&self) -> u64 {
        self.config.seed
    }

    pub fn rounds(&self) -> u32 {
        self.series.last().map_or(0, |r| r.round)
    }

    pub fn kdt(&self, k: f64) -> Result<Option<u32>, InvalidPercentage> {
        kdt(&self.series, self.population, k)
    }

    pub fn total_consumed(&self) -> f64 {
        self.series.iter().map(|r| r.consumed).sum()
    }
}
