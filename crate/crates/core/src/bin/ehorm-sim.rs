//! Command-line runner: `ehorm-sim [--config=FILE] [--key=value ...]`.

use std::process::ExitCode;

use ehorm_sim::{config, output};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--help" || a == "-h") {
        println!(
            "usage: ehorm-sim [--config=FILE] [--KEY=VALUE ...] [--compare] [--seeds=a,b,c] [--out=DIR]\n\
             keys: {}",
            config::KEYS.join(", ")
        );
        return ExitCode::SUCCESS;
    }
    let spec = match config::parse_config(None, &args) {
        Ok(spec) => spec,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match output::execute(&spec) {
        Ok(exec) => {
            for (base, variant) in &exec.runs {
                for r in std::iter::once(base).chain(variant) {
                    println!(
                        "{:<7} seed={:<6} rounds={:<5} fnd={:?} hnd={:?} and={:?}",
                        r.config.label(),
                        r.seed(),
                        r.rounds(),
                        r.fnd,
                        r.hnd,
                        r.and_
                    );
                }
            }
            println!("wrote {} file(s) under {}", exec.files.len(), spec.out_dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
