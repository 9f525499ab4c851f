//! Steps a run round by round and reports how much energy the sleepers
//! saved and what each cluster spent.

use ehorm_sim::{EhormConfig, SimConfig, Simulation};

fn main() {
    let cfg = SimConfig {
        ehorm: EhormConfig::on(10),
        seed: 5,
        ..SimConfig::default()
    };
    let mut sim = Simulation::new(cfg).unwrap();

    let mut saved = 0.0;
    let mut first_sleep = None;
    while !sim.is_finished() && sim.network().round < 2500 {
        let rec = sim.step();
        saved += rec.savings.e_save_total;
        if first_sleep.is_none() && rec.sleeping > 0 {
            first_sleep = Some(rec.clone());
        }
    }

    println!("saved by sleeping over {} rounds: {saved:.4} J", sim.network().round);
    println!("consumed: {:.4} J", sim.consumed_total());

    let Some(rec) = first_sleep else {
        println!("nobody slept");
        return;
    };
    println!("\nround {}: {} asleep, threshold {:.3e} J", rec.round, rec.sleeping, rec.e_th.unwrap());
    for s in &rec.savings.per_sleeper {
        println!("  node #{:<3} saved {:.3e} J", s.id, s.joules);
    }
    println!("  average over the field {:.3e} J", rec.savings.e_save_average);
    for c in &rec.savings.clusters {
        println!(
            "  head #{:<3} {:>2} members  total {:.3e} J  avg {:.3e} J",
            c.head, c.members, c.total, c.average
        );
    }
}
