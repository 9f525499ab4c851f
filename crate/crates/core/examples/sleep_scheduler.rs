//! Drives the threshold scheduler by hand on a drained network and shows
//! which nodes sleep, which stay silent, and how the cap is enforced.

use ehorm_sim::ehorm::{self, EhormConfig, SleepQueue};
use ehorm_sim::topology::{Deployment, Heterogeneity};
use ehorm_sim::{Network, RadioParams};

fn main() {
    let spec = Deployment {
        n: 12,
        width: 100.0,
        height: 100.0,
        e0: 0.5,
        hetero: Heterogeneity::HOMOGENEOUS,
    };
    let mut net = Network::deploy(&spec, 1).unwrap();
    let radio = RadioParams::table_defaults();

    let e_th = ehorm::compute_threshold(&net, &radio, 4000).unwrap();
    println!("threshold {e_th:.4e} J");

    // drain every other node below the threshold
    for node in net.nodes.iter_mut().step_by(2) {
        node.energy = e_th / 2.0;
    }

    let cfg = EhormConfig::on(3);
    let mut queue = SleepQueue::new();
    let out = ehorm::schedule(&mut net, &mut queue, e_th, &cfg, 0);
    println!("slept {:?}, queue {:?}", out.slept, queue.ids());

    let silent: Vec<usize> = net
        .nodes
        .iter()
        .filter(|n| n.is_active() && !ehorm::transmit_gate(n, e_th))
        .map(|n| n.id)
        .collect();
    println!("awake but below threshold (silent): {silent:?}");

    let tighter = EhormConfig::on(1);
    let out = ehorm::schedule(&mut net, &mut queue, e_th, &tighter, 1);
    println!("cap lowered to 1: woke {:?}, queue {:?}", out.woken, queue.ids());
}
