//! Straight-line reference of the baseline round loop (no sleep scheduling),
//! written without the library's types. It shares only the RNG stream
//! convention: stream 0 places nodes, stream 1 drives elections, stream 2
//! drives the DEEC dry-run round.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Kind {
    Leach,
    Sep,
    Deec,
}

#[derive(Clone, Copy, Debug)]
pub struct RefConfig {
    pub kind: Kind,
    pub n: usize,
    pub width: f64,
    pub height: f64,
    pub e0: f64,
    pub p: f64,
    pub m: f64,
    pub a: f64,
    pub bits: u64,
    pub max_rounds: u32,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RefRound {
    pub round: u32,
    pub alive: usize,
    pub heads: usize,
    pub consumed: f64,
    pub residual: f64,
}

const E_ELEC: f64 = 50e-9;
const E_FS: f64 = 10e-12;
const E_MP: f64 = 0.0013e-12;
const E_DA: f64 = 5e-9;

fn d0() -> f64 {
    (E_FS / E_MP).sqrt()
}

fn tx(bits: f64, d: f64) -> f64 {
    if d < d0() {
        bits * E_ELEC + bits * E_FS * (d * d)
    } else {
        bits * E_ELEC + bits * E_MP * ((d * d) * (d * d))
    }
}

fn dist(ax: f64, ay: f64, bx: f64, by: f64) -> f64 {
    ((ax - bx) * (ax - bx) + (ay - by) * (ay - by)).sqrt()
}

fn epoch(p: f64) -> u32 {
    ((1.0 / p) - 1e-9).ceil().max(1.0) as u32
}

struct N {
    x: f64,
    y: f64,
    e: f64,
    e_init: f64,
    adv: bool,
    alive: bool,
    served: bool,
}

/// Prices one round given the head flags. Returns per-node charges.
fn price(nodes: &[N], is_head: &[bool], sx: f64, sy: f64, bits: f64) -> Vec<f64> {
    let mut charge = vec![0.0; nodes.len()];
    let heads: Vec<usize> = (0..nodes.len()).filter(|&i| is_head[i]).collect();
    for i in 0..nodes.len() {
        if !nodes[i].alive || is_head[i] {
            continue;
        }
        let mut best: Option<(usize, f64)> = None;
        for &h in &heads {
            let d = dist(nodes[i].x, nodes[i].y, nodes[h].x, nodes[h].y);
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((h, d));
            }
        }
        match best {
            Some((h, d)) => {
                charge[i] += tx(bits, d);
                charge[h] += bits * E_ELEC;
            }
            None => charge[i] += tx(bits, dist(nodes[i].x, nodes[i].y, sx, sy)),
        }
    }
    for &h in &heads {
        charge[h] += bits * E_DA + tx(bits, dist(nodes[h].x, nodes[h].y, sx, sy));
    }
    charge
}

pub fn run(cfg: &RefConfig) -> (Vec<RefRound>, Option<f64>) {
    let bits = cfg.bits as f64;
    let (sx, sy) = (cfg.width / 2.0, cfg.height / 2.0);

    let mut place = ChaCha8Rng::seed_from_u64(cfg.seed);
    place.set_stream(0);
    let n_adv = ((cfg.m * cfg.n as f64) + 1e-9).floor() as usize;
    let mut nodes: Vec<N> = (0..cfg.n)
        .map(|i| {
            let x = place.gen::<f64>() * cfg.width;
            let y = place.gen::<f64>() * cfg.height;
            let e = if i < n_adv { cfg.e0 * (1.0 + cfg.a) } else { cfg.e0 };
            N {
                x,
                y,
                e,
                e_init: e,
                adv: i < n_adv,
                alive: true,
                served: false,
            }
        })
        .collect();
    let e_total: f64 = nodes.iter().map(|n| n.e_init).sum();

    // DEEC lifetime estimate from one dry LEACH round at full strength.
    let lifetime = if cfg.kind == Kind::Deec {
        let mut dry = ChaCha8Rng::seed_from_u64(cfg.seed);
        dry.set_stream(2);
        let is_head: Vec<bool> = nodes.iter().map(|_| dry.gen::<f64>() < cfg.p).collect();
        let cost: f64 = price(&nodes, &is_head, sx, sy, bits).iter().sum();
        Some(if cost > 0.0 { e_total / cost } else { cfg.max_rounds as f64 })
    } else {
        None
    };

    let mut elect_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    elect_rng.set_stream(1);
    let mut out = Vec::new();

    for r in 0..cfg.max_rounds {
        if nodes.iter().all(|n| !n.alive) {
            break;
        }
        let prob: Vec<f64> = match cfg.kind {
            Kind::Leach => vec![cfg.p; cfg.n],
            Kind::Sep => nodes
                .iter()
                .map(|n| {
                    let denom = 1.0 + cfg.a * cfg.m;
                    if n.adv {
                        cfg.p * (1.0 + cfg.a) / denom
                    } else {
                        cfg.p / denom
                    }
                })
                .collect(),
            Kind::Deec => {
                let big_r = lifetime.unwrap();
                let mut avg = e_total / cfg.n as f64 * (1.0 - r as f64 / big_r);
                if avg <= 0.0 {
                    let alive: Vec<f64> = nodes.iter().filter(|n| n.alive).map(|n| n.e).collect();
                    avg = alive.iter().sum::<f64>() / alive.len() as f64;
                }
                nodes
                    .iter()
                    .map(|n| if avg <= 0.0 { 0.0 } else { (cfg.p * n.e / avg).clamp(0.0, 1.0) })
                    .collect()
            }
        };

        let mut is_head = vec![false; cfg.n];
        for i in 0..cfg.n {
            if nodes[i].alive && prob[i] > 0.0 && r % epoch(prob[i]) == 0 {
                nodes[i].served = false;
            }
        }
        for i in 0..cfg.n {
            if !nodes[i].alive || nodes[i].served {
                continue;
            }
            let pi = prob[i];
            let t = if pi <= 0.0 {
                0.0
            } else {
                pi / (1.0 - pi * (r % epoch(pi)) as f64)
            };
            if elect_rng.gen::<f64>() < t {
                is_head[i] = true;
                nodes[i].served = true;
            }
        }

        let charge = price(&nodes, &is_head, sx, sy, bits);
        let mut consumed = 0.0;
        for (node, c) in nodes.iter_mut().zip(&charge) {
            if *c <= 0.0 || !node.alive {
                continue;
            }
            if *c >= node.e {
                consumed += node.e;
                node.e = 0.0;
                node.alive = false;
            } else {
                consumed += *c;
                node.e -= *c;
            }
        }
        out.push(RefRound {
            round: r + 1,
            alive: nodes.iter().filter(|n| n.alive).count(),
            heads: is_head.iter().filter(|&&h| h).count(),
            consumed,
            residual: nodes.iter().map(|n| n.e).sum(),
        });
    }
    (out, lifetime)
}
