//! Field geometry, node population and seeded deployment.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// RNG stream used for node placement. Election and dry-run streams use
/// other stream ids of the same seed so they never perturb each other.
pub const DEPLOY_STREAM: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Euclidean distance in metres.
pub fn distance(a: Position, b: Position) -> f64 {
    let (dx, dy) = (a.x - b.x, a.y - b.y);
    (dx * dx + dy * dy).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeClass {
    Normal,
    Advanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PowerState {
    Active,
    Asleep { since_round: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: usize,
    pub pos: Position,
    pub energy: f64,
    pub initial_energy: f64,
    pub class: NodeClass,
    pub power: PowerState,
    pub alive: bool,
}

impl Node {
    pub fn is_active(&self) -> bool {
        self.alive && self.power == PowerState::Active
    }

    pub fn is_asleep(&self) -> bool {
        matches!(self.power, PowerState::Asleep { .. })
    }
}

/// Two-level heterogeneity: a fraction `m` of nodes carries `(1 + a)` times
/// the normal initial energy.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Heterogeneity {
    pub m: f64,
    pub a: f64,
}

impl Heterogeneity {
    pub const HOMOGENEOUS: Self = Self { m: 0.0, a: 0.0 };

    pub fn new(m: f64, a: f64) -> Self {
        Self { m, a }
    }

    pub fn advanced_count(&self, n: usize) -> usize {
        ((self.m * n as f64) + 1e-9).floor() as usize
    }
}

/// Everything needed to lay out a field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Deployment {
    pub n: usize,
    pub width: f64,
    pub height: f64,
    pub e0: f64,
    pub hetero: Heterogeneity,
}

impl Deployment {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n == 0 {
            return Err(ConfigError::invalid("n", self.n, "must be at least 1"));
        }
        for (key, v) in [("width_m", self.width), ("height_m", self.height), ("e0_j", self.e0)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ConfigError::invalid(key, v, "must be a positive number"));
            }
        }
        if !(0.0..=1.0).contains(&self.hetero.m) {
            return Err(ConfigError::invalid("hetero_m", self.hetero.m, "must lie in [0, 1]"));
        }
        if !(self.hetero.a.is_finite() && self.hetero.a >= 0.0) {
            return Err(ConfigError::invalid("hetero_a", self.hetero.a, "must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Network {
    pub width: f64,
    pub height: f64,
    pub sink: Position,
    pub nodes: Vec<Node>,
    /// Index of the next round to execute, starting at 0.
    pub round: u32,
}

impl Network {
    /// Places `n` nodes uniformly at random in the field, sink at the centre.
    /// The lowest `floor(m·n)` ids are advanced nodes.
    pub fn deploy(spec: &Deployment, seed: u64) -> Result<Self, ConfigError> {
        spec.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(DEPLOY_STREAM);
        let advanced = spec.hetero.advanced_count(spec.n);
        let nodes = (0..spec.n)
            .map(|id| {
                let x = rng.gen::<f64>() * spec.width;
                let y = rng.gen::<f64>() * spec.height;
                let (class, energy) = if id < advanced {
                    (NodeClass::Advanced, spec.e0 * (1.0 + spec.hetero.a))
                } else {
                    (NodeClass::Normal, spec.e0)
                };
                Node {
                    id,
                    pos: Position::new(x, y),
                    energy,
                    initial_energy: energy,
                    class,
                    power: PowerState::Active,
                    alive: true,
                }
            })
            .collect();
        Ok(Self::from_nodes(spec.width, spec.height, nodes))
    }

    /// Builds a network from explicit nodes with the sink at the centre.
    /// Node ids are reassigned to their index.
    pub fn from_nodes(width: f64, height: f64, mut nodes: Vec<Node>) -> Self {
        for (i, node) in nodes.iter_mut().enumerate() {
            node.id = i;
        }
        Self {
            width,
            height,
            sink: Position::new(width / 2.0, height / 2.0),
            nodes,
            round: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn alive_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.alive).count()
    }

    pub fn sleeping_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.alive && n.is_asleep()).count()
    }

    pub fn total_initial_energy(&self) -> f64 {
        self.nodes.iter().map(|n| n.initial_energy).sum()
    }

    pub fn total_residual_energy(&self) -> f64 {
        self.nodes.iter().map(|n| n.energy).sum()
    }

    pub fn distance_to_sink(&self, id: usize) -> f64 {
        distance(self.nodes[id].pos, self.sink)
    }

    pub fn distance_between(&self, a: usize, b: usize) -> f64 {
        distance(self.nodes[a].pos, self.nodes[b].pos)
    }

    /// Farthest alive node from the sink, asleep or not. Ties go to the
    /// lowest id.
    pub fn max_distance_alive(&self) -> Option<(usize, f64)> {
        self.nodes
            .iter()
            .filter(|n| n.alive)
            .map(|n| (n.id, distance(n.pos, self.sink)))
            .fold(None, |best, (id, d)| match best {
                Some((_, bd)) if bd >= d => best,
                _ => Some((id, d)),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node_at(x: f64, y: f64) -> Node {
        Node {
            id: 0,
            pos: Position::new(x, y),
            energy: 1.0,
            initial_energy: 1.0,
            class: NodeClass::Normal,
            power: PowerState::Active,
            alive: true,
        }
    }

    fn table_field() -> Deployment {
        Deployment {
            n: 100,
            width: 100.0,
            height: 100.0,
            e0: 0.5,
            hetero: Heterogeneity::HOMOGENEOUS,
        }
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(Position::new(0.0, 0.0), Position::new(3.0, 4.0)), 5.0);
        assert_eq!(distance(Position::new(50.0, 50.0), Position::new(50.0, 50.0)), 0.0);
        let diag = distance(Position::new(0.0, 0.0), Position::new(100.0, 100.0));
        assert!((diag - 141.421_356_237_309_5).abs() < 1e-9);
    }

    #[test]
    fn default_field_deploys_homogeneous_population() {
        let net = Network::deploy(&table_field(), 7).unwrap();
        assert_eq!(net.len(), 100);
        assert_eq!(net.sink, Position::new(50.0, 50.0));
        for (i, n) in net.nodes.iter().enumerate() {
            assert_eq!(n.id, i);
            assert_eq!(n.energy, 0.5);
            assert_eq!(n.class, NodeClass::Normal);
            assert!(n.is_active());
            assert!((0.0..=100.0).contains(&n.pos.x) && (0.0..=100.0).contains(&n.pos.y));
        }
    }

    #[test]
    fn single_node_field() {
        let spec = Deployment {
            n: 1,
            width: 10.0,
            height: 10.0,
            e0: 1.0,
            hetero: Heterogeneity::HOMOGENEOUS,
        };
        let net = Network::deploy(&spec, 99).unwrap();
        assert_eq!(net.len(), 1);
        assert_eq!(net.sink, Position::new(5.0, 5.0));
    }

    #[test]
    fn deployment_is_deterministic() {
        let a = Network::deploy(&table_field(), 42).unwrap();
        let b = Network::deploy(&table_field(), 42).unwrap();
        let c = Network::deploy(&table_field(), 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn heterogeneous_lowest_ids_are_advanced() {
        let spec = Deployment {
            hetero: Heterogeneity::new(0.1, 1.0),
            ..table_field()
        };
        let net = Network::deploy(&spec, 1).unwrap();
        let adv: Vec<_> = net
            .nodes
            .iter()
            .filter(|n| n.class == NodeClass::Advanced)
            .map(|n| n.id)
            .collect();
        assert_eq!(adv, (0..10).collect::<Vec<_>>());
        assert_eq!(net.nodes[0].energy, 1.0);
        assert_eq!(net.nodes[10].energy, 0.5);
        assert!((net.total_initial_energy() - 55.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_deployments_are_rejected() {
        let bad = [
            Deployment { n: 0, ..table_field() },
            Deployment { width: 0.0, ..table_field() },
            Deployment { e0: -1.0, ..table_field() },
            Deployment { hetero: Heterogeneity::new(1.5, 0.0), ..table_field() },
            Deployment { hetero: Heterogeneity::new(0.1, -1.0), ..table_field() },
        ];
        for spec in bad {
            assert!(Network::deploy(&spec, 0).is_err(), "{spec:?}");
        }
    }

    #[test]
    fn max_distance_queries() {
        let mut net = Network::from_nodes(100.0, 100.0, vec![node_at(0.0, 0.0)]);
        let (id, d) = net.max_distance_alive().unwrap();
        assert_eq!(id, 0);
        assert!((d - 70.710_678_118_654_76).abs() < 1e-9);

        net.nodes[0].alive = false;
        assert_eq!(net.max_distance_alive(), None);

        let net = Network::from_nodes(
            100.0,
            100.0,
            vec![node_at(50.0, 40.0), node_at(10.0, 50.0), node_at(90.0, 50.0)],
        );
        assert_eq!(net.max_distance_alive().unwrap().0, 1);
    }

    #[test]
    fn sleeping_nodes_count_for_max_distance() {
        let mut a = node_at(0.0, 0.0);
        a.power = PowerState::Asleep { since_round: 0 };
        let net = Network::from_nodes(100.0, 100.0, vec![node_at(50.0, 60.0), a]);
        assert_eq!(net.max_distance_alive().unwrap().0, 1);
    }
}
