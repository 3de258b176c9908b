//! Compare the Barrier classification with the dominance scan on random
//! states.
//!
//! `cargo run --release --example verify_sweep -- [n_states] [seed]`

use pursuit_barrier::sweep::{sweep_agreement, SweepOptions};
use pursuit_barrier::GameConfig;

fn main() -> pursuit_barrier::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2000);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    for config in [GameConfig::same_speed(10.0), GameConfig::new(0.5, 1.0, 2.0, 10.0)?, GameConfig::new(0.5, 1.0, 1.0, 10.0)?] {
        let r = sweep_agreement(&config, &SweepOptions::new(&config, n, seed));
        println!(
            "speeds ({}, {}, {}): checked={} disagreements={} evader wins={} pursuer wins={} regular={} degraded={:?}",
            config.ve,
            config.v1,
            config.v2,
            r.checked,
            r.disagreements.len(),
            r.evader_wins,
            r.pursuer_wins,
            r.regular,
            r.degraded
        );
        for w in &r.warnings {
            println!("  warning: {w}");
        }
    }
    Ok(())
}
