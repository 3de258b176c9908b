//! Goal-line cells: the partition of `[0, x_bar]` into the stretches where
//! each pursuer is the binding one, and the extremal goal points that decide
//! the game of kind on arbitrary pursuer geometry.
//!
//! For a goal point `g` the evader beats pursuer `i` there iff
//! `h_i(g) = γ_i²·|g − P_i|² − |g − E|² > 0`. The pursuer with the smaller
//! `h_i` binds. `h1 − h2` does not depend on the evader, so the cells are a
//! function of the pursuers alone; within a cell the binding `h_i` is a
//! concave quadratic (linear at equal speeds) whose maximum sits at a cell
//! end or at the centre abscissa of the evader/pursuer Apollonius circle.

use serde::{Deserialize, Serialize};

use crate::game::PursuerId;
use crate::geometry::Point;

/// `γ²·|g − P|² − |g − E|²` for the goal point `(g, 0)`.
#[inline]
pub fn corner_value(g: f64, pursuer: Point, gamma: f64, evader: Point) -> f64 {
    let gp = (pursuer.x - g) * (pursuer.x - g) + pursuer.y * pursuer.y;
    let ge = (evader.x - g) * (evader.x - g) + evader.y * evader.y;
    gamma * gamma * gp - ge
}

/// Division-free tangency form
/// `γ²(x_P² + (1−γ²)y_P²) + γ²x_E² − (1−γ²)y_E² − 2γ²x_P·x_E`, equal to
/// `(1 − γ²)·max_g corner_value(g, ..)`. Zero exactly when the
/// evader/pursuer Apollonius circle touches the goal axis.
#[inline]
pub fn tangency_value(pursuer: Point, gamma: f64, evader: Point) -> f64 {
    let g2 = gamma * gamma;
    let k = 1.0 - g2;
    g2 * (pursuer.x * pursuer.x + k * pursuer.y * pursuer.y) + g2 * evader.x * evader.x
        - k * evader.y * evader.y
        - 2.0 * g2 * pursuer.x * evader.x
}

/// Abscissa of the evader/pursuer Apollonius circle centre, where the
/// pursuer's corner value peaks. Only meaningful for `gamma < 1`.
#[inline]
pub fn vertex_abscissa(pursuer: Point, gamma: f64, evader: Point) -> f64 {
    let g2 = gamma * gamma;
    (evader.x - g2 * pursuer.x) / (1.0 - g2)
}

/// Real roots of `a·x² + b·x + c`, ascending. Degrades to the linear case
/// when `a` is negligible; an identically-zero polynomial has no roots.
pub fn real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 || !scale.is_finite() {
        return Vec::new();
    }
    let eps = 1e-14 * scale;
    if a.abs() <= eps {
        if b.abs() <= eps {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return vec![0.0];
    }
    let (r1, r2) = (q / a, c / q);
    if r1 <= r2 {
        vec![r1, r2]
    } else {
        vec![r2, r1]
    }
}

/// Coefficients of `h1(g) − h2(g)` as a polynomial in `g`.
fn binding_gap(p1: Point, g1: f64, p2: Point, g2: f64) -> (f64, f64, f64) {
    let (s1, s2) = (g1 * g1, g2 * g2);
    (
        s1 - s2,
        -2.0 * (s1 * p1.x - s2 * p2.x),
        s1 * p1.norm_sq() - s2 * p2.norm_sq(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub lo: f64,
    pub hi: f64,
    pub owner: PursuerId,
}

/// Pursuer data in the labeling the cells refer to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pursuers {
    pub p1: Point,
    pub gamma1: f64,
    pub p2: Point,
    pub gamma2: f64,
}

impl Pursuers {
    pub fn get(&self, which: PursuerId) -> (Point, f64) {
        match which {
            PursuerId::P1 => (self.p1, self.gamma1),
            PursuerId::P2 => (self.p2, self.gamma2),
        }
    }

    /// Abscissae in the open interval `(0, x_bar)` where the binding pursuer
    /// changes.
    pub fn junctions(&self, x_bar: f64) -> Vec<f64> {
        let (a, b, c) = binding_gap(self.p1, self.gamma1, self.p2, self.gamma2);
        let mut xs: Vec<f64> = real_roots(a, b, c)
            .into_iter()
            .filter(|&x| x > 0.0 && x < x_bar)
            .collect();
        xs.dedup();
        xs
    }

    fn binds(&self, g: f64) -> PursuerId {
        let (a, b, c) = binding_gap(self.p1, self.gamma1, self.p2, self.gamma2);
        if (a * g + b) * g + c <= 0.0 {
            PursuerId::P1
        } else {
            PursuerId::P2
        }
    }

    /// Partition of `[0, x_bar]` into maximal cells of one binding pursuer.
    pub fn cells(&self, x_bar: f64) -> Vec<Cell> {
        let mut bounds = vec![0.0];
        bounds.extend(self.junctions(x_bar));
        bounds.push(x_bar);
        let mut cells: Vec<Cell> = Vec::with_capacity(bounds.len() - 1);
        for w in bounds.windows(2) {
            let owner = self.binds(0.5 * (w[0] + w[1]));
            match cells.last_mut() {
                Some(last) if last.owner == owner => last.hi = w[1],
                _ => cells.push(Cell { lo: w[0], hi: w[1], owner }),
            }
        }
        cells
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CandidateKind {
    LeftCorner,
    RightCorner,
    /// Boundary between two cells.
    Junction,
    /// Peak of the owner's corner value inside its cell.
    Vertex,
}

/// A goal point that may maximize the evader's advantage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub g: f64,
    pub kind: CandidateKind,
    pub owner: PursuerId,
    /// `min(h1, h2)` at `g`.
    pub advantage: f64,
}

/// The goal point where `min(h1, h2)` is largest, searched over cell ends
/// and interior vertices. Exact: every maximizer is one of these points.
pub fn best_goal_point(evader: Point, pursuers: &Pursuers, x_bar: f64) -> Candidate {
    let adv = |g: f64| {
        corner_value(g, pursuers.p1, pursuers.gamma1, evader)
            .min(corner_value(g, pursuers.p2, pursuers.gamma2, evader))
    };
    let cells = pursuers.cells(x_bar);
    let last = cells.len() - 1;
    let mut best: Option<Candidate> = None;
    let mut offer = |c: Candidate| {
        if best.is_none_or(|b| c.advantage > b.advantage) {
            best = Some(c);
        }
    };
    for (i, cell) in cells.iter().enumerate() {
        let lo_kind = if i == 0 { CandidateKind::LeftCorner } else { CandidateKind::Junction };
        offer(Candidate { g: cell.lo, kind: lo_kind, owner: cell.owner, advantage: adv(cell.lo) });
        if i == last {
            offer(Candidate {
                g: cell.hi,
                kind: CandidateKind::RightCorner,
                owner: cell.owner,
                advantage: adv(cell.hi),
            });
        }
        let (p, gamma) = pursuers.get(cell.owner);
        if gamma < 1.0 {
            let a = vertex_abscissa(p, gamma, evader);
            if a > cell.lo && a < cell.hi {
                offer(Candidate { g: a, kind: CandidateKind::Vertex, owner: cell.owner, advantage: adv(a) });
            }
        }
    }
    best.expect("the goal line has at least one cell")
}
