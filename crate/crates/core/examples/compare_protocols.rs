//! Each protocol with and without sleep scheduling on the same seed and a
//! two-level heterogeneous field.

use ehorm_sim::{Heterogeneity, ProtocolKind, SimConfig};

fn show(v: Option<u32>) -> String {
    v.map_or("-".into(), |r| r.to_string())
}

fn main() {
    println!("{:<8} {:>6} {:>6} {:>6}", "", "FND", "HND", "AND");
    for kind in ProtocolKind::ALL {
        let base = SimConfig {
            protocol: kind,
            hetero: Heterogeneity::new(0.1, 1.0),
            seed: 11,
            ..SimConfig::default()
        };
        for enabled in [false, true] {
            let r = ehorm_sim::run(base.with_ehorm(enabled)).unwrap();
            println!(
                "{:<8} {:>6} {:>6} {:>6}",
                r.config.label(),
                show(r.fnd),
                show(r.hnd),
                show(r.and_)
            );
        }
    }
}
