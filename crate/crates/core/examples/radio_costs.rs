//! Prices a 4000-bit packet at a few distances, on both sides of the
//! free-space / multipath crossover.

use ehorm_sim::radio::{self, RadioParams};

fn main() {
    let p = RadioParams::table_defaults();
    let bits = 4000;
    println!("crossover d0 = {:.4} m", p.d0);
    println!("rx  = {:.3e} J", radio::rx_energy(bits, &p));
    println!("agg = {:.3e} J", radio::agg_energy(bits, &p));
    println!();
    println!("{:>8} {:>12} {:>12}", "d (m)", "tx (J)", "head tx (J)");
    for d in [0.0, 10.0, 50.0, 87.0, p.d0, 100.0, 150.0] {
        let tx = radio::tx_energy(bits, d, &p).unwrap();
        let ch = radio::ch_tx_energy(bits, d, &p).unwrap();
        println!("{d:>8.2} {tx:>12.4e} {ch:>12.4e}");
    }

    match radio::tx_energy(bits, -1.0, &p) {
        Err(e) => println!("\nnegative distance rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
