//! Median lifetimes over many seeds, baseline against sleep scheduling.
//! Censored runs count as `max_rounds + 1`. Best run with `--release`.

use ehorm_sim::ensemble::{self, Medians};
use ehorm_sim::{Heterogeneity, ProtocolKind, SimConfig};

fn main() {
    let seeds: Vec<u64> = (0..32).collect();
    for kind in ProtocolKind::ALL {
        let base = SimConfig {
            protocol: kind,
            hetero: Heterogeneity::new(0.1, 1.0),
            ..SimConfig::default()
        };
        for enabled in [false, true] {
            let runs = ensemble::run_seeds(&base.with_ehorm(enabled), &seeds).unwrap();
            let m = Medians::of(&runs);
            println!(
                "{:<8} median FND {:>7.1}  HND {:>7.1}  AND {:>7.1}  ({} of {} still alive at the end)",
                m.label,
                m.fnd.unwrap_or(f64::NAN),
                m.hnd.unwrap_or(f64::NAN),
                m.and_.unwrap_or(f64::NAN),
                m.censored,
                m.runs
            );
        }
    }
}
