use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ehorm_sim::ehorm::EhormConfig;
use ehorm_sim::engine::{self, SimConfig, Simulation};
use ehorm_sim::protocols::{self, ElectionState, Protocol, ProtocolKind, Uplink};
use ehorm_sim::radio::{self, RadioParams};
use ehorm_sim::topology::{Deployment, Heterogeneity, Network};

fn kind() -> impl Strategy<Value = ProtocolKind> {
    prop_oneof![Just(ProtocolKind::Leach), Just(ProtocolKind::Sep), Just(ProtocolKind::Deec)]
}

prop_compose! {
    fn small_config()(
        n in 2usize..50,
        side in 40.0f64..250.0,
        e0 in 0.005f64..0.05,
        protocol in kind(),
        m in 0.0f64..0.5,
        a in 0.0f64..3.0,
        bits in 500u64..6000,
        enabled in any::<bool>(),
        ns_cap in 0usize..12,
        seed in any::<u64>(),
    ) -> SimConfig {
        SimConfig {
            n,
            width: side,
            height: side,
            e0,
            hetero: Heterogeneity::new(m, a),
            protocol,
            packet_bits: bits,
            ehorm: EhormConfig { enabled, ns_cap },
            max_rounds: 600,
            seed,
            ..SimConfig::default()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deployment_is_inside_field_and_reproducible(
        n in 1usize..300, w in 1.0f64..500.0, h in 1.0f64..500.0, seed in any::<u64>(), m in 0.0f64..=1.0,
    ) {
        let spec = Deployment { n, width: w, height: h, e0: 0.5, hetero: Heterogeneity::new(m, 1.0) };
        let a = Network::deploy(&spec, seed).unwrap();
        prop_assert_eq!(&a, &Network::deploy(&spec, seed).unwrap());
        for node in &a.nodes {
            prop_assert!((0.0..=w).contains(&node.pos.x) && (0.0..=h).contains(&node.pos.y));
        }
    }

    #[test]
    fn tx_cost_is_monotone_and_linear(bits in 1u64..100_000, d in 0.0f64..300.0, dd in 0.0f64..50.0) {
        let p = RadioParams::table_defaults();
        let e = radio::tx_energy(bits, d, &p).unwrap();
        prop_assert!(radio::tx_energy(bits, d + dd, &p).unwrap() >= e);
        prop_assert!(radio::tx_energy(bits + 1, d, &p).unwrap() > e);
        let twice = radio::tx_energy(2 * bits, d, &p).unwrap();
        prop_assert!(((twice - 2.0 * e) / twice).abs() < 1e-14);
    }

    #[test]
    fn round_invariants_hold(cfg in small_config()) {
        let mut sim = Simulation::new(cfg).unwrap();
        let initial = sim.network().total_initial_energy();
        let mut consumed = 0.0;
        let mut prev_alive = cfg.n;
        let mut prev_e_th = f64::INFINITY;
        let mut prev_dmax = f64::INFINITY;

        while !sim.is_finished() {
            let before = sim.network().clone();
            let dmax = before.max_distance_alive().unwrap().1;
            prop_assert!(dmax <= prev_dmax);
            prev_dmax = dmax;

            let plan = sim.plan_round();
            let net = sim.network();
            let asleep: Vec<usize> = net.nodes.iter().filter(|n| n.alive && n.is_asleep()).map(|n| n.id).collect();
            prop_assert!(asleep.len() <= cfg.ehorm.ns_cap || !cfg.ehorm.enabled);
            if !cfg.ehorm.enabled {
                prop_assert!(asleep.is_empty());
            }
            if let Some(e_th) = plan.e_th {
                prop_assert!(e_th <= prev_e_th);
                prev_e_th = e_th;
            }

            // cluster structure
            for &h in &plan.assignment.heads {
                prop_assert!(net.nodes[h].is_active());
            }
            for node in net.nodes.iter().filter(|n| n.is_active()) {
                let is_head = plan.assignment.is_head(node.id);
                prop_assert_eq!(plan.assignment.membership.contains_key(&node.id), !is_head);
            }
            for (&id, up) in &plan.assignment.membership {
                prop_assert!(net.nodes[id].is_active());
                if let Uplink::Head(h) = *up {
                    let d = net.distance_between(id, h);
                    for &other in &plan.assignment.heads {
                        prop_assert!(net.distance_between(id, other) >= d);
                    }
                }
            }
            for &id in &asleep {
                prop_assert_eq!(plan.traffic.ledger[id], 0.0);
            }
            for s in &plan.savings.per_sleeper {
                prop_assert!(s.joules >= 0.0);
            }
            prop_assert_eq!(plan.savings.e_save_average, plan.savings.e_save_total / cfg.n as f64);

            let rec = sim.commit(plan);
            consumed += rec.consumed;
            let after = sim.network();
            for (b, a) in before.nodes.iter().zip(&after.nodes) {
                prop_assert!(a.energy <= b.energy);
                prop_assert!(a.energy >= 0.0);
                prop_assert!(b.alive || !a.alive);
                prop_assert_eq!(a.alive, a.energy > 0.0);
                prop_assert!(a.alive || !a.is_asleep());
            }
            for &id in &asleep {
                prop_assert_eq!(after.nodes[id].energy, before.nodes[id].energy);
            }
            prop_assert!(rec.alive <= prev_alive);
            prev_alive = rec.alive;
            prop_assert!(((rec.residual + consumed - initial) / initial).abs() <= 1e-9);
        }
    }

    #[test]
    fn disabled_scheduler_ignores_its_cap(cfg in small_config(), other_cap in 0usize..30) {
        let off = cfg.with_ehorm(false);
        let twin = SimConfig { ehorm: EhormConfig { enabled: false, ns_cap: other_cap }, ..off };
        let a = engine::run(off).unwrap();
        let b = engine::run(twin).unwrap();
        prop_assert_eq!(a.series, b.series);
        prop_assert!(a.fnd <= a.hnd || a.hnd.is_none());
    }

    #[test]
    fn election_is_deterministic(seed in any::<u64>(), round in 0u32..50, p in 0.02f64..0.5) {
        let spec = Deployment { n: 60, width: 100.0, height: 100.0, e0: 0.5, hetero: Heterogeneity::HOMOGENEOUS };
        let mut net = Network::deploy(&spec, seed).unwrap();
        net.round = round;
        let proto = Protocol::Leach { p };
        let mut s1 = ElectionState::new(60);
        let mut s2 = ElectionState::new(60);
        let h1 = protocols::elect(&net, &proto, &mut s1, &mut ChaCha8Rng::seed_from_u64(seed));
        let h2 = protocols::elect(&net, &proto, &mut s2, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(h1, h2);
        prop_assert_eq!(s1, s2);
    }
}

#[test]
fn identical_configs_give_identical_results() {
    let cfg = SimConfig {
        protocol: ProtocolKind::Deec,
        ehorm: EhormConfig::on(10),
        max_rounds: 1500,
        seed: 99,
        ..SimConfig::default()
    };
    assert_eq!(engine::run(cfg).unwrap(), engine::run(cfg).unwrap());
}

#[test]
fn all_asleep_savings_equal_a_baseline_round() {
    // Every node below threshold, cap large enough for all of them, and every
    // node barred from election so neither variant elects a head.
    let cfg = SimConfig {
        n: 30,
        e0: 1e-4,
        ehorm: EhormConfig::on(100),
        ..SimConfig::default()
    };
    let mut on = Simulation::new(cfg).unwrap();
    let mut off = Simulation::new(cfg.with_ehorm(false)).unwrap();
    for sim in [&mut on, &mut off] {
        sim.network_mut().round = 3;
        sim.election_state_mut().barred.iter_mut().for_each(|b| *b = true);
    }
    let plan_on = on.plan_round();
    let plan_off = off.plan_round();
    assert_eq!(plan_on.savings.per_sleeper.len(), 30);
    assert!(plan_off.assignment.heads.is_empty());
    let baseline = plan_off.traffic.requested_total();
    let saved = plan_on.savings.e_save_total;
    assert!(((saved - baseline) / baseline).abs() <= 1e-9, "{saved} vs {baseline}");
    assert_eq!(plan_on.traffic.requested_total(), 0.0);
}
