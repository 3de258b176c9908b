//! Fixed-step trajectory simulator with straight-line heuristic strategies.
//!
//! Every player moves at full speed along a heading that is constant within
//! a step, so forward Euler integrates the kinematics exactly. The evader
//! runs at the best goal point of [`crate::oracle::goal_margin`], recomputed
//! every step. Each pursuer heads for the earliest point of the evader's
//! current straight run that it can reach no later than the evader, or for
//! the goal point itself when no such point exists. These strategies are a
//! verification probe, not optimal play; a `Timeout` is reported as such.

use serde::{Deserialize, Serialize};

use crate::cells::real_roots;
use crate::error::{Error, Result};
use crate::game::{GameConfig, GameState, TerminalCause};
use crate::geometry::Point;
use crate::oracle;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimOptions {
    pub dt: f64,
    /// Capture radius standing in for point capture.
    pub eps: f64,
    pub t_max: f64,
}

impl SimOptions {
    /// `dt = 1e-3·x_bar/vE`, `eps = 1e-2·x_bar`, `t_max = 10·(x_bar + y_E)/vE`.
    pub fn defaults(config: &GameConfig, initial: &GameState) -> Self {
        Self {
            dt: 1e-3 * config.x_bar / config.ve,
            eps: 1e-2 * config.x_bar,
            t_max: 10.0 * (config.x_bar + initial.evader.y) / config.ve,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("dt", self.dt), ("eps", self.eps), ("t_max", self.t_max)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Usage(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub state: GameState,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub terminal: TerminalCause,
    pub capture_point: Option<Point>,
}

impl Trajectory {
    pub fn final_state(&self) -> &GameState {
        &self.samples.last().expect("a trajectory has at least its initial sample").state
    }

    pub fn duration(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.t)
    }
}

/// Earliest point of the run `evader → goal` that a pursuer of speed
/// `speed` reaches no later than the evader; the goal when there is none.
pub fn intercept_point(pursuer: Point, speed: f64, evader: Point, ve: f64, goal: Point) -> Point {
    let run = evader.dist(goal);
    if run == 0.0 {
        return goal;
    }
    let (ux, uy) = ((goal.x - evader.x) / run, (goal.y - evader.y) / run);
    let (wx, wy) = (evader.x - pursuer.x, evader.y - pursuer.y);
    // |w + ve·t·u|² = speed²·t²
    let a = ve * ve - speed * speed;
    let b = 2.0 * ve * (wx * ux + wy * uy);
    let c = wx * wx + wy * wy;
    let t = real_roots(a, b, c).into_iter().filter(|&t| t >= 0.0).reduce(f64::min);
    match t {
        Some(t) if ve * t <= run => Point::new(evader.x + ve * t * ux, evader.y + ve * t * uy),
        _ => goal,
    }
}

fn capture_cause(state: &GameState, eps: f64) -> Option<TerminalCause> {
    let c1 = state.evader.dist(state.p1) <= eps;
    let c2 = state.evader.dist(state.p2) <= eps;
    match (c1, c2) {
        (true, true) => Some(TerminalCause::SimultaneousCapture),
        (true, false) => Some(TerminalCause::CapturedByP1),
        (false, true) => Some(TerminalCause::CapturedByP2),
        (false, false) => None,
    }
}

pub fn simulate(initial: &GameState, config: &GameConfig, opts: &SimOptions) -> Result<Trajectory> {
    opts.validate()?;
    config.validate_state(initial)?;
    if let Some(cause) = initial.terminal_cause() {
        return Err(Error::AlreadyTerminal(cause));
    }

    let mut state = *initial;
    let mut t = 0.0;
    let mut samples = vec![TrajectorySample { t, state }];
    if let Some(cause) = capture_cause(&state, opts.eps) {
        return Ok(Trajectory { samples, terminal: cause, capture_point: Some(state.evader) });
    }

    let mut step = 0u64;
    loop {
        let goal = Point::new(oracle::goal_margin(&state, config).argmax_x, 0.0);
        let t1 = intercept_point(state.p1, config.v1, state.evader, config.ve, goal);
        let t2 = intercept_point(state.p2, config.v2, state.evader, config.ve, goal);
        let reach = config.ve * opts.dt;
        let lands = state.evader.dist(goal) <= reach;
        let next = GameState {
            evader: if lands { goal } else { state.evader.step_towards(goal, reach) },
            p1: state.p1.step_towards(if t1 == state.p1 { state.evader } else { t1 }, config.v1 * opts.dt),
            p2: state.p2.step_towards(if t2 == state.p2 { state.evader } else { t2 }, config.v2 * opts.dt),
        };
        step += 1;
        t = step as f64 * opts.dt;
        state = next;
        samples.push(TrajectorySample { t, state });

        if let Some(cause) = capture_cause(&state, opts.eps) {
            return Ok(Trajectory { samples, terminal: cause, capture_point: Some(state.evader) });
        }
        if lands || state.evader.y <= 0.0 {
            return Ok(Trajectory { samples, terminal: TerminalCause::GoalReached, capture_point: None });
        }
        if t >= opts.t_max {
            return Ok(Trajectory { samples, terminal: TerminalCause::Timeout, capture_point: None });
        }
    }
}
