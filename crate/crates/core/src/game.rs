//! Game state, speeds and field configuration, terminal conditions and the
//! pursuer relabeling that puts a state in canonical form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Positions of the evader and the two pursuers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameState {
    pub evader: Point,
    pub p1: Point,
    pub p2: Point,
}

impl GameState {
    pub const fn new(evader: Point, p1: Point, p2: Point) -> Self {
        Self { evader, p1, p2 }
    }

    /// Builds a state from `(x_E, y_E, x_1, y_1, x_2, y_2)`.
    pub const fn from_coords(c: [f64; 6]) -> Self {
        Self {
            evader: Point::new(c[0], c[1]),
            p1: Point::new(c[2], c[3]),
            p2: Point::new(c[4], c[5]),
        }
    }

    pub fn coords(&self) -> [f64; 6] {
        [self.evader.x, self.evader.y, self.p1.x, self.p1.y, self.p2.x, self.p2.y]
    }

    pub fn with_pursuers_swapped(&self) -> Self {
        Self { evader: self.evader, p1: self.p2, p2: self.p1 }
    }

    /// Mirror image about the vertical line `x = x_bar / 2`. Labels are kept.
    pub fn reflected(&self, x_bar: f64) -> Self {
        let m = |p: Point| Point::new(x_bar - p.x, p.y);
        Self { evader: m(self.evader), p1: m(self.p1), p2: m(self.p2) }
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        let s = |p: Point| Point::new(lambda * p.x, lambda * p.y);
        Self { evader: s(self.evader), p1: s(self.p1), p2: s(self.p2) }
    }

    pub fn pursuer(&self, which: PursuerId) -> Point {
        match which {
            PursuerId::P1 => self.p1,
            PursuerId::P2 => self.p2,
        }
    }

    /// Terminal condition of the game, if the state is already in the
    /// terminal set (evader on the goal line or at a pursuer's position).
    pub fn terminal_cause(&self) -> Option<TerminalCause> {
        let c1 = self.evader == self.p1;
        let c2 = self.evader == self.p2;
        match (c1, c2) {
            (true, true) => Some(TerminalCause::SimultaneousCapture),
            (true, false) => Some(TerminalCause::CapturedByP1),
            (false, true) => Some(TerminalCause::CapturedByP2),
            _ if self.evader.y <= 0.0 => Some(TerminalCause::GoalReached),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PursuerId {
    P1,
    P2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TerminalCause {
    GoalReached,
    CapturedByP1,
    CapturedByP2,
    SimultaneousCapture,
    Timeout,
}

impl TerminalCause {
    pub fn is_capture(self) -> bool {
        matches!(
            self,
            TerminalCause::CapturedByP1
                | TerminalCause::CapturedByP2
                | TerminalCause::SimultaneousCapture
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// All three players share one speed.
    SameSpeed,
    /// Both pursuers are strictly faster than the evader.
    FastPursuers,
}

/// Speeds, field width and numerical settings of one game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameConfig {
    pub ve: f64,
    pub v1: f64,
    pub v2: f64,
    pub x_bar: f64,
    /// Half-width of the `OnBarrier` band around `B = 0`.
    pub tol: f64,
    /// Grid points used by the goal-line dominance scan.
    pub oracle_resolution: usize,
    regime: Regime,
}

/// Relative tolerance used to decide that two speeds are equal.
const SPEED_EQ_RTOL: f64 = 1e-12;

fn speeds_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= SPEED_EQ_RTOL * a.abs().max(b.abs())
}

impl GameConfig {
    pub const DEFAULT_ORACLE_RESOLUTION: usize = 2000;

    pub fn new(ve: f64, v1: f64, v2: f64, x_bar: f64) -> Result<Self> {
        for (name, v) in [("vE", ve), ("v1", v1), ("v2", v2)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("speed {name} must be positive and finite, got {v}")));
            }
        }
        if !(x_bar > 0.0 && x_bar.is_finite()) {
            return Err(Error::InvalidConfig(format!("field width must be positive, got {x_bar}")));
        }
        let regime = if speeds_equal(ve, v1) && speeds_equal(ve, v2) {
            Regime::SameSpeed
        } else if ve < v1 && ve < v2 && !speeds_equal(ve, v1) && !speeds_equal(ve, v2) {
            Regime::FastPursuers
        } else {
            return Err(Error::UnsupportedRegime { ve, v1, v2 });
        };
        Ok(Self {
            ve,
            v1,
            v2,
            x_bar,
            tol: Self::default_tol(x_bar),
            oracle_resolution: Self::DEFAULT_ORACLE_RESOLUTION,
            regime,
        })
    }

    /// All players at unit speed.
    pub fn same_speed(x_bar: f64) -> Self {
        Self::new(1.0, 1.0, 1.0, x_bar).expect("unit speeds are a valid configuration")
    }

    pub fn default_tol(x_bar: f64) -> f64 {
        1e-9 * (1.0 + x_bar * x_bar)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("tolerance must be non-negative, got {tol}")));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn with_oracle_resolution(mut self, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidConfig(format!("oracle resolution must be at least 2, got {n}")));
        }
        self.oracle_resolution = n;
        Ok(self)
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Evader-to-P1 speed ratio `vE / v1`.
    pub fn gamma1(&self) -> f64 {
        self.ve / self.v1
    }

    /// Evader-to-P2 speed ratio `vE / v2`.
    pub fn gamma2(&self) -> f64 {
        self.ve / self.v2
    }

    /// Pursuer speed ratio `v1 / v2`.
    pub fn gamma(&self) -> f64 {
        self.v1 / self.v2
    }

    pub fn pursuers_equally_fast(&self) -> bool {
        speeds_equal(self.v1, self.v2)
    }

    /// Same game with the pursuer speeds exchanged.
    pub fn with_pursuers_swapped(&self) -> Self {
        Self { v1: self.v2, v2: self.v1, ..*self }
    }

    /// Same game with every length multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            x_bar: lambda * self.x_bar,
            tol: Self::default_tol(lambda * self.x_bar),
            ..*self
        }
    }

    pub fn speed_of(&self, which: PursuerId) -> f64 {
        match which {
            PursuerId::P1 => self.v1,
            PursuerId::P2 => self.v2,
        }
    }

    /// Checks that every player lies in the field `[0, x_bar] × [0, ∞)`.
    pub fn validate_state(&self, state: &GameState) -> Result<()> {
        for (name, p) in [("evader", state.evader), ("P1", state.p1), ("P2", state.p2)] {
            if !p.is_finite() {
                return Err(Error::OutOfDomain(format!("{name} position is not finite")));
            }
            if p.x < 0.0 || p.x > self.x_bar || p.y < 0.0 {
                return Err(Error::OutOfDomain(format!(
                    "{name} at ({}, {}) outside [0, {}] x [0, inf)",
                    p.x, p.y, self.x_bar
                )));
            }
        }
        Ok(())
    }
}

/// Why an evaluation left the regular closed-form path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Degradation {
    /// Both pursuers stand on the same point.
    CoincidentPursuers,
    /// Equal-speed pursuers with `x1 == x2`: their bisector never crosses
    /// the goal line and the lower pursuer owns all of it.
    VerticalBisector,
    /// The slower pursuer's Apollonius circle misses the goal line.
    NoAxisReach,
    /// The pursuer junction on the goal line lies outside `[0, x_bar]`.
    JunctionOutsideField,
    /// The slower pursuer's goal-line cell does not start at the left corner.
    SplitSlowCell,
    /// The tangency thresholds of the two pursuers are out of order.
    UnorderedThresholds,
}

/// A state with pursuer labels arranged so the regime's ordering holds:
/// `x1 ≤ x2` for equal speeds, `v1 ≤ v2` (then `x1 ≤ x2` on ties) otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalState {
    pub state: GameState,
    pub swapped: bool,
    /// `vE / v1` and `vE / v2` for the relabeled pursuers.
    pub gamma1: f64,
    pub gamma2: f64,
    pub degraded: Option<Degradation>,
}

impl CanonicalState {
    /// Maps a canonical pursuer label back to the caller's labeling.
    pub fn original_label(&self, which: PursuerId) -> PursuerId {
        match (which, self.swapped) {
            (PursuerId::P1, true) => PursuerId::P2,
            (PursuerId::P2, true) => PursuerId::P1,
            (w, false) => w,
        }
    }
}

pub fn canonicalize(state: &GameState, config: &GameConfig) -> CanonicalState {
    let swap = match config.regime() {
        Regime::SameSpeed => state.p1.x > state.p2.x,
        Regime::FastPursuers if config.pursuers_equally_fast() => state.p1.x > state.p2.x,
        Regime::FastPursuers => config.v1 > config.v2,
    };
    let (state, gamma1, gamma2) = if swap {
        (state.with_pursuers_swapped(), config.gamma2(), config.gamma1())
    } else {
        (*state, config.gamma1(), config.gamma2())
    };
    let degraded = (state.p1 == state.p2).then_some(Degradation::CoincidentPursuers);
    CanonicalState { state, swapped: swap, gamma1, gamma2, degraded }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regime_detection() {
        assert_eq!(GameConfig::new(1.0, 1.0, 1.0, 10.0).unwrap().regime(), Regime::SameSpeed);
        assert_eq!(GameConfig::new(0.5, 1.0, 2.0, 10.0).unwrap().regime(), Regime::FastPursuers);
        assert_eq!(GameConfig::new(0.5, 1.0, 1.0, 10.0).unwrap().regime(), Regime::FastPursuers);
        for (ve, v1, v2) in [(1.5, 1.0, 2.0), (1.0, 1.0, 2.0), (2.0, 1.0, 1.0)] {
            assert!(matches!(
                GameConfig::new(ve, v1, v2, 10.0),
                Err(Error::UnsupportedRegime { .. })
            ));
        }
        assert!(matches!(GameConfig::new(0.0, 1.0, 1.0, 10.0), Err(Error::InvalidConfig(_))));
        assert!(matches!(GameConfig::new(1.0, 1.0, 1.0, -1.0), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn derived_ratios() {
        let c = GameConfig::new(0.5, 1.0, 2.0, 10.0).unwrap();
        assert_eq!((c.gamma1(), c.gamma2(), c.gamma()), (0.5, 0.25, 0.5));
        assert_eq!(c.tol, 1e-9 * 101.0);
    }

    #[test]
    fn same_speed_orders_by_abscissa() {
        let cfg = GameConfig::same_speed(10.0);
        let s = GameState::from_coords([4.0, 4.0, 6.0, 2.0, 2.0, 2.0]);
        let cs = canonicalize(&s, &cfg);
        assert!(cs.swapped);
        assert_eq!(cs.state.p1, Point::new(2.0, 2.0));
        assert_eq!(cs.state.p2, Point::new(6.0, 2.0));
        assert_eq!(cs.original_label(PursuerId::P1), PursuerId::P2);
        assert_eq!(cs.degraded, None);
    }

    #[test]
    fn fast_orders_by_speed() {
        let cfg = GameConfig::new(0.5, 2.0, 1.0, 10.0).unwrap();
        let s = GameState::from_coords([4.0, 4.0, 2.0, 2.0, 6.0, 2.0]);
        let cs = canonicalize(&s, &cfg);
        assert!(cs.swapped);
        assert_eq!((cs.gamma1, cs.gamma2), (0.5, 0.25));
        assert_eq!(cs.state.p1, Point::new(6.0, 2.0));
    }

    #[test]
    fn coincident_pursuers_are_flagged() {
        let cfg = GameConfig::same_speed(10.0);
        let s = GameState::from_coords([4.0, 4.0, 3.0, 2.0, 3.0, 2.0]);
        assert_eq!(canonicalize(&s, &cfg).degraded, Some(Degradation::CoincidentPursuers));
    }

    #[test]
    fn terminal_set() {
        let s = GameState::from_coords([4.0, 0.0, 1.0, 1.0, 2.0, 2.0]);
        assert_eq!(s.terminal_cause(), Some(TerminalCause::GoalReached));
        let s = GameState::from_coords([1.0, 1.0, 1.0, 1.0, 2.0, 2.0]);
        assert_eq!(s.terminal_cause(), Some(TerminalCause::CapturedByP1));
        let s = GameState::from_coords([2.0, 2.0, 1.0, 1.0, 2.0, 2.0]);
        assert_eq!(s.terminal_cause(), Some(TerminalCause::CapturedByP2));
        let s = GameState::from_coords([2.0, 2.0, 2.0, 2.0, 2.0, 2.0]);
        assert_eq!(s.terminal_cause(), Some(TerminalCause::SimultaneousCapture));
        let s = GameState::from_coords([2.0, 3.0, 1.0, 1.0, 2.0, 2.0]);
        assert_eq!(s.terminal_cause(), None);
    }

    #[test]
    fn field_validation() {
        let cfg = GameConfig::same_speed(10.0);
        assert!(cfg.validate_state(&GameState::from_coords([0.0, 1.0, 10.0, 0.0, 5.0, 5.0])).is_ok());
        for bad in [
            [-0.1, 1.0, 1.0, 1.0, 2.0, 2.0],
            [1.0, 1.0, 10.5, 1.0, 2.0, 2.0],
            [1.0, 1.0, 1.0, 1.0, 2.0, -2.0],
            [f64::NAN, 1.0, 1.0, 1.0, 2.0, 2.0],
        ] {
            assert!(matches!(
                cfg.validate_state(&GameState::from_coords(bad)),
                Err(Error::OutOfDomain(_))
            ));
        }
    }
}
