//! Closed-form Barrier function `B(x)` and winning-region classification.
//!
//! `B < 0` is a pursuer win, `B > 0` an evader win and `|B| ≤ tol` lies on
//! the Barrier. Regular pursuer geometry is evaluated with the piecewise
//! formulas and abscissa thresholds directly. Geometry outside their
//! hypotheses (junction off the field, slower pursuer not owning the left
//! stretch of the goal line, coincident pursuers, ...) is evaluated through
//! [`crate::cells`], which yields the same quadratic forms at the true
//! extremal goal point, and the result carries a [`Degradation`] note.

use serde::{Deserialize, Serialize};

use crate::cells::{self, CandidateKind, Pursuers};
use crate::error::{Error, Result};
use crate::game::{
    canonicalize, CanonicalState, Degradation, GameConfig, GameState, PursuerId, Regime,
};
use crate::geometry::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Segment {
    S1,
    S2,
    S3,
    S4,
    S5,
}

impl Segment {
    pub fn index(self) -> usize {
        self as usize + 1
    }
}

impl std::fmt::Display for Segment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S{}", self.index())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Active {
    P1Only,
    Both,
    P2Only,
}

impl Active {
    fn single(which: PursuerId) -> Self {
        match which {
            PursuerId::P1 => Active::P1Only,
            PursuerId::P2 => Active::P2Only,
        }
    }

    fn swapped(self) -> Self {
        match self {
            Active::P1Only => Active::P2Only,
            Active::P2Only => Active::P1Only,
            Active::Both => Active::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaptureMode {
    SinglePursuer,
    Simultaneous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    PursuerWin,
    EvaderWin,
    OnBarrier,
}

impl Outcome {
    pub fn from_value(value: f64, tol: f64) -> Self {
        if value < -tol {
            Outcome::PursuerWin
        } else if value > tol {
            Outcome::EvaderWin
        } else {
            Outcome::OnBarrier
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierEvaluation {
    /// `B(x)` in squared field units.
    pub value: f64,
    pub segment: Segment,
    pub active: Active,
    pub capture_mode: CaptureMode,
    pub outcome: Outcome,
    /// Abscissa of the goal point that decides the game.
    pub goal_x: f64,
    pub degraded: Option<Degradation>,
}

impl BarrierEvaluation {
    fn new(
        value: f64,
        segment: Segment,
        active: Active,
        goal_x: f64,
        tol: f64,
        degraded: Option<Degradation>,
    ) -> Self {
        let capture_mode = if active == Active::Both {
            CaptureMode::Simultaneous
        } else {
            CaptureMode::SinglePursuer
        };
        Self {
            value,
            segment,
            active,
            capture_mode,
            outcome: Outcome::from_value(value, tol),
            goal_x,
            degraded,
        }
    }
}

/// Abscissa where the bisector of two equal-speed pursuers meets the goal
/// axis: `½(x2² + y2² − x1² − y1²) / (x2 − x1)`.
pub fn xi_same(p1: Point, p2: Point) -> Result<f64> {
    if p1.x == p2.x {
        return Err(Error::VerticalBisector);
    }
    Ok(0.5 * (p2.norm_sq() - p1.norm_sq()) / (p2.x - p1.x))
}

/// Both axis crossings of the Apollonius circle of the slower pursuer `p1`
/// against the faster `p2` (`gamma = v1 / v2`), ascending; `None` when the
/// circle misses the axis.
pub fn fast_junctions(p1: Point, p2: Point, gamma: f64) -> Result<Option<(f64, f64)>> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::InvalidRatio(gamma));
    }
    if p1 == p2 {
        return Err(Error::DegenerateInput("pursuers at the same point"));
    }
    let g2 = gamma * gamma;
    let k = 1.0 - g2;
    let disc = g2 * (p1.x - p2.x).powi(2) - k * (p1.y * p1.y - g2 * p2.y * p2.y);
    if disc < 0.0 {
        return Ok(None);
    }
    let base = p1.x - g2 * p2.x;
    let root = disc.sqrt();
    Ok(Some(((base - root) / k, (base + root) / k)))
}

/// Right-hand axis crossing of the slower pursuer's Apollonius circle, the
/// point reached at the same time by both pursuers; `None` when the circle
/// does not reach the axis.
pub fn xi_fast(p1: Point, p2: Point, gamma: f64) -> Result<Option<f64>> {
    Ok(fast_junctions(p1, p2, gamma)?.map(|(_, hi)| hi))
}

/// Equal speeds. Expects canonical labels (`x1 ≤ x2`).
pub fn barrier_same(cs: &CanonicalState, config: &GameConfig) -> BarrierEvaluation {
    let GameState { evader: e, p1, p2 } = cs.state;
    let x_bar = config.x_bar;
    let tol = config.tol;

    let degraded = cs.degraded.or_else(|| match xi_same(p1, p2) {
        Err(_) => Some(Degradation::VerticalBisector),
        Ok(xi) if !(0.0..=x_bar).contains(&xi) => Some(Degradation::JunctionOutsideField),
        Ok(_) => None,
    });
    if let Some(note) = degraded {
        return from_cells(cs, config, note);
    }

    let xi = xi_same(p1, p2).expect("checked above");
    if e.x <= p1.x {
        let b1 = p1.norm_sq() - e.norm_sq();
        BarrierEvaluation::new(b1, Segment::S1, Active::P1Only, 0.0, tol, None)
    } else if e.x < p2.x {
        let b2 = (p1.x - xi).powi(2) + p1.y * p1.y - (e.x - xi).powi(2) - e.y * e.y;
        BarrierEvaluation::new(b2, Segment::S2, Active::Both, xi, tol, None)
    } else {
        let b3 = (p2.x - x_bar).powi(2) + p2.y * p2.y - (e.x - x_bar).powi(2) - e.y * e.y;
        BarrierEvaluation::new(b3, Segment::S3, Active::P2Only, x_bar, tol, None)
    }
}

/// Abscissa thresholds separating the five fast-regime segments.
pub fn fast_thresholds(p1: Point, p2: Point, gamma1: f64, gamma2: f64, xi: f64, x_bar: f64) -> [f64; 4] {
    let (s1, s2) = (gamma1 * gamma1, gamma2 * gamma2);
    [
        s1 * p1.x,
        (1.0 - s1) * xi + s1 * p1.x,
        (1.0 - s2) * xi + s2 * p2.x,
        (1.0 - s2) * x_bar + s2 * p2.x,
    ]
}

/// Junction abscissa for the fast regime when it lies where the five-segment
/// layout applies, otherwise the reason it does not.
pub(crate) fn regular_fast_junction(
    cs: &CanonicalState,
    config: &GameConfig,
) -> std::result::Result<f64, Degradation> {
    if let Some(note) = cs.degraded {
        return Err(note);
    }
    let GameState { p1, p2, .. } = cs.state;
    let x_bar = config.x_bar;
    let (lo, xi) = if config.pursuers_equally_fast() {
        let xi = xi_same(p1, p2).map_err(|_| Degradation::VerticalBisector)?;
        (f64::NEG_INFINITY, xi)
    } else {
        match fast_junctions(p1, p2, cs.gamma2 / cs.gamma1) {
            Ok(Some(span)) => span,
            Ok(None) => return Err(Degradation::NoAxisReach),
            Err(_) => return Err(Degradation::CoincidentPursuers),
        }
    };
    if lo > 0.0 {
        return Err(Degradation::SplitSlowCell);
    }
    if !(0.0..=x_bar).contains(&xi) {
        return Err(Degradation::JunctionOutsideField);
    }
    let t = fast_thresholds(p1, p2, cs.gamma1, cs.gamma2, xi, x_bar);
    if t[1] > t[2] {
        return Err(Degradation::UnorderedThresholds);
    }
    Ok(xi)
}

/// Both pursuers faster than the evader. Expects canonical labels
/// (`v1 ≤ v2`).
pub fn barrier_fast(cs: &CanonicalState, config: &GameConfig) -> BarrierEvaluation {
    let xi = match regular_fast_junction(cs, config) {
        Ok(xi) => xi,
        Err(note) => return from_cells(cs, config, note),
    };
    let GameState { evader: e, p1, p2 } = cs.state;
    let (g1, g2) = (cs.gamma1, cs.gamma2);
    let x_bar = config.x_bar;
    let tol = config.tol;
    let t = fast_thresholds(p1, p2, g1, g2, xi, x_bar);

    if e.x <= t[0] {
        let b1 = cells::corner_value(0.0, p1, g1, e);
        BarrierEvaluation::new(b1, Segment::S1, Active::P1Only, 0.0, tol, None)
    } else if e.x <= t[1] {
        let b2 = cells::tangency_value(p1, g1, e);
        let a1 = cells::vertex_abscissa(p1, g1, e);
        BarrierEvaluation::new(b2, Segment::S2, Active::P1Only, a1, tol, None)
    } else if e.x <= t[2] {
        let b3 = cells::corner_value(xi, p1, g1, e);
        BarrierEvaluation::new(b3, Segment::S3, Active::Both, xi, tol, None)
    } else if e.x <= t[3] {
        let b4 = cells::tangency_value(p2, g2, e);
        let a2 = cells::vertex_abscissa(p2, g2, e);
        BarrierEvaluation::new(b4, Segment::S4, Active::P2Only, a2, tol, None)
    } else {
        let b5 = cells::corner_value(x_bar, p2, g2, e);
        BarrierEvaluation::new(b5, Segment::S5, Active::P2Only, x_bar, tol, None)
    }
}

/// Evaluation at the exact extremal goal point from the cell partition,
/// reported with the matching segment formula.
fn from_cells(cs: &CanonicalState, config: &GameConfig, note: Degradation) -> BarrierEvaluation {
    let e = cs.state.evader;
    let pursuers = Pursuers { p1: cs.state.p1, gamma1: cs.gamma1, p2: cs.state.p2, gamma2: cs.gamma2 };
    let best = cells::best_goal_point(e, &pursuers, config.x_bar);
    let (p, gamma) = pursuers.get(best.owner);
    let fast = config.regime() == Regime::FastPursuers;
    let (segment, active, value) = match best.kind {
        CandidateKind::LeftCorner => (Segment::S1, Active::single(best.owner), cells::corner_value(best.g, p, gamma, e)),
        CandidateKind::RightCorner => (
            if fast { Segment::S5 } else { Segment::S3 },
            Active::single(best.owner),
            cells::corner_value(best.g, p, gamma, e),
        ),
        CandidateKind::Junction => (
            if fast { Segment::S3 } else { Segment::S2 },
            Active::Both,
            cells::corner_value(best.g, p, gamma, e),
        ),
        CandidateKind::Vertex => (
            match best.owner {
                PursuerId::P1 => Segment::S2,
                PursuerId::P2 => Segment::S4,
            },
            Active::single(best.owner),
            cells::tangency_value(p, gamma, e),
        ),
    };
    BarrierEvaluation::new(value, segment, active, best.g, config.tol, Some(note))
}

/// Classifies a state into the pursuers' or evader's winning region.
/// `active` refers to the caller's pursuer labels.
pub fn classify(state: &GameState, config: &GameConfig) -> Result<BarrierEvaluation> {
    config.validate_state(state)?;
    if let Some(cause) = state.terminal_cause() {
        return Err(Error::AlreadyTerminal(cause));
    }
    let cs = canonicalize(state, config);
    let mut ev = match config.regime() {
        Regime::SameSpeed => barrier_same(&cs, config),
        Regime::FastPursuers => barrier_fast(&cs, config),
    };
    if cs.swapped {
        ev.active = ev.active.swapped();
    }
    Ok(ev)
}
