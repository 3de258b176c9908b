//! Play one evader-win and one pursuer-win state with the heuristic
//! strategies.
//!
//! `cargo run --release --example simulate_game`

use pursuit_barrier::simulate::{simulate, SimOptions};
use pursuit_barrier::{classify, GameConfig, GameState};

fn main() -> pursuit_barrier::Result<()> {
    let config = GameConfig::new(0.5, 1.0, 2.0, 10.0)?;
    for coords in [[5.0, 1.0, 1.0, 4.0, 9.0, 6.0], [5.0, 6.0, 4.0, 2.0, 6.0, 2.0]] {
        let state = GameState::from_coords(coords);
        let eval = classify(&state, &config)?;
        let traj = simulate(&state, &config, &SimOptions::defaults(&config, &state))?;
        let end = traj.final_state();
        println!(
            "{:?} (B={:+.4}) -> {:?} after t={:.3}, {} steps, evader at ({:.4}, {:.4})",
            eval.outcome,
            eval.value,
            traj.terminal,
            traj.duration(),
            traj.samples.len() - 1,
            end.evader.x,
            end.evader.y
        );
    }
    Ok(())
}
