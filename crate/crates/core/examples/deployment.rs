//! Scatters a heterogeneous field and reports where the nodes landed.

use ehorm_sim::topology::{Deployment, Heterogeneity, NodeClass};
use ehorm_sim::Network;

fn main() {
    let spec = Deployment {
        n: 100,
        width: 100.0,
        height: 100.0,
        e0: 0.5,
        hetero: Heterogeneity::new(0.1, 1.0),
    };
    let net = Network::deploy(&spec, 7).expect("valid deployment");

    let advanced = net.nodes.iter().filter(|n| n.class == NodeClass::Advanced).count();
    println!("sink at ({:.1}, {:.1})", net.sink.x, net.sink.y);
    println!("{} nodes, {advanced} advanced", net.len());
    println!("total energy {:.2} J", net.total_initial_energy());
    if let Some((id, d)) = net.max_distance_alive() {
        println!("farthest node #{id} at {d:.2} m from the sink");
    }
    println!();
    for node in net.nodes.iter().take(5) {
        println!(
            "#{:<3} ({:6.2}, {:6.2})  {:.2} J  {:?}",
            node.id, node.pos.x, node.pos.y, node.energy, node.class
        );
    }

    let bad = Deployment { n: 0, ..spec };
    if let Err(e) = Network::deploy(&bad, 7) {
        println!("\nempty field rejected: {e}");
    }
}
