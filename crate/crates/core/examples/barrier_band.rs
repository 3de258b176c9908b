//! Place evaders exactly on the Barrier and measure the dominance margin
//! there.
//!
//! `cargo run --release --example barrier_band -- [per_segment]`

use pursuit_barrier::sweep::{barrier_band_check, BandOptions};
use pursuit_barrier::GameConfig;

fn main() -> pursuit_barrier::Result<()> {
    let per_segment: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    for config in [GameConfig::same_speed(10.0), GameConfig::new(0.5, 1.0, 2.0, 10.0)?] {
        let r = barrier_band_check(&config, &BandOptions::new(&config, per_segment, 3));
        println!(
            "{:?}: states={} per segment={:?} max|margin|={:.3e} bound={:.0e} failures={}",
            config.regime(),
            r.checked,
            r.per_segment,
            r.max_abs_margin,
            r.options.threshold,
            r.failures.len()
        );
    }
    Ok(())
}
