//! One full run of a protocol with sleep scheduling, printing lifetime
//! milestones and writing the alive series and summary to a directory.
//!
//! ```bash
//! cargo run -p ehorm-sim --example single_run -- deec out/deec
//! ```

use std::path::PathBuf;

use ehorm_sim::{output, EhormConfig, ProtocolKind, SimConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let protocol: ProtocolKind = args.next().as_deref().unwrap_or("leach").parse().expect("leach, sep or deec");
    let out: PathBuf = args.next().unwrap_or_else(|| "out/single_run".into()).into();

    let cfg = SimConfig {
        protocol,
        ehorm: EhormConfig::on(10),
        seed: 42,
        ..SimConfig::default()
    };
    let result = ehorm_sim::run(cfg).expect("valid config");

    println!("{} seed {}", cfg.label(), result.seed());
    println!("rounds simulated: {}", result.rounds());
    println!("first death:  {:?}", result.fnd);
    println!("half dead:    {:?}", result.hnd);
    println!("all dead:     {:?}", result.and_);
    println!("energy used:  {:.3} J", result.total_consumed());
    for rec in result.series.iter().step_by(500) {
        println!(
            "  round {:>5}: {:>3} alive, {:>2} asleep, {:>2} heads",
            rec.round, rec.alive, rec.sleeping, rec.heads
        );
    }

    let files = output::emit(&result, &out).expect("writable output directory");
    for f in files {
        println!("wrote {}", f.display());
    }
}
