//! Classify a few states in both speed regimes.
//!
//! `cargo run --example classify_state`

use pursuit_barrier::{classify, GameConfig, GameState};

fn main() -> pursuit_barrier::Result<()> {
    let same = GameConfig::same_speed(10.0);
    let fast = GameConfig::new(0.5, 1.0, 2.0, 10.0)?;
    let cases = [
        ("equal speeds, evader between pursuers", same, [4.0, 1.0, 2.0, 2.0, 6.0, 2.0]),
        ("equal speeds, evader far from the goal", same, [1.0, 3.0, 2.0, 2.0, 6.0, 2.0]),
        ("fast pursuers, simultaneous arrival", fast, [4.0 / 3.0, 5.0 / 6.0, 0.0, 1.0, 4.0, 2.0]),
        ("fast pursuers, slow pursuer tangency", fast, [4.0, 1.0, 4.0, 2.0, 9.0, 3.0]),
        ("fast pursuers, evader deep in the field", fast, [5.0, 6.0, 4.0, 2.0, 6.0, 2.0]),
    ];
    for (label, config, coords) in cases {
        let eval = classify(&GameState::from_coords(coords), &config)?;
        println!(
            "{label:42} {:?} B={:+.6} segment={} active={:?} goal_x={:.4} degraded={:?}",
            eval.outcome, eval.value, eval.segment, eval.active, eval.goal_x, eval.degraded
        );
    }
    Ok(())
}
