//! Game-of-kind solver for the two-pursuer, one-evader "football"
//! pursuit-evasion game on the field `[0, x_bar] × [0, ∞)` with goal line
//! `y = 0`.
//!
//! * [`barrier`] evaluates the closed-form Barrier function and classifies
//!   states into the pursuers' and the evader's winning regions.
//! * [`section`] builds Barrier cross-sections for fixed pursuers as circle
//!   and hyperbola arcs, and [`export`] writes them as CSV, JSON or SVG.
//! * [`oracle`], [`simulate`] and [`sweep`] check the closed forms against a
//!   brute-force goal-line dominance scan and a trajectory simulator.
//! * [`cli`] backs the `pursuit-barrier` binary.

pub mod barrier;
pub mod cells;
pub mod cli;
pub mod error;
pub mod export;
pub mod game;
pub mod geometry;
pub mod oracle;
pub mod scenario;
pub mod section;
pub mod simulate;
pub mod sweep;

pub use barrier::{classify, Active, BarrierEvaluation, CaptureMode, Outcome, Segment};
pub use error::{Error, Result};
pub use game::{Degradation, GameConfig, GameState, PursuerId, Regime, TerminalCause};
pub use geometry::Point;
