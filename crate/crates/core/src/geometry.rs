//! Dominance-region primitives: perpendicular bisectors between equal-speed
//! players, Apollonius circles between players of different speeds, and
//! their crossings with the goal axis `y = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative tolerance used for tangency tests.
pub const DEFAULT_TANGENCY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    #[inline]
    pub fn dist_sq(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    /// Point reached by moving `step` units from `self` towards `target`.
    /// Returns `self` unchanged when the two points coincide.
    pub fn step_towards(self, target: Point, step: f64) -> Point {
        let d = self.dist(target);
        if d == 0.0 {
            return self;
        }
        let s = step / d;
        Point::new(self.x + s * (target.x - self.x), self.y + s * (target.y - self.y))
    }
}

/// Line `a·x + b·y = c` with `a² + b² = 1`.
///
/// The normal `(a, b)` points from the first defining point towards the
/// second, so `signed_distance` is positive on the second point's side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImplicitLine {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl ImplicitLine {
    #[inline]
    pub fn signed_distance(&self, z: Point) -> f64 {
        self.a * z.x + self.b * z.y - self.c
    }

    /// A point of the line at arc-length parameter `t` from the foot of the
    /// perpendicular dropped from the origin.
    pub fn point_at(&self, t: f64) -> Point {
        Point::new(self.a * self.c - self.b * t, self.b * self.c + self.a * t)
    }

    /// Abscissa where the line meets `y = 0`, if it is not parallel to it.
    pub fn axis_crossing(&self) -> Option<f64> {
        (self.a != 0.0).then(|| self.c / self.a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    /// Positive outside the circle, negative inside.
    #[inline]
    pub fn signed_distance(&self, z: Point) -> f64 {
        z.dist(self.center) - self.radius
    }

    #[inline]
    pub fn point_at_angle(&self, theta: f64) -> Point {
        Point::new(
            self.center.x + self.radius * theta.cos(),
            self.center.y + self.radius * theta.sin(),
        )
    }
}

/// How a circle meets the goal axis `y = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AxisCrossing {
    None,
    Tangent(f64),
    /// Two crossings, sorted ascending.
    TwoPoints(f64, f64),
}

impl AxisCrossing {
    pub fn xs(&self) -> Vec<f64> {
        match *self {
            AxisCrossing::None => Vec::new(),
            AxisCrossing::Tangent(x) => vec![x],
            AxisCrossing::TwoPoints(lo, hi) => vec![lo, hi],
        }
    }

    /// The largest crossing, if any.
    pub fn max(&self) -> Option<f64> {
        match *self {
            AxisCrossing::None => None,
            AxisCrossing::Tangent(x) | AxisCrossing::TwoPoints(_, x) => Some(x),
        }
    }
}

/// Perpendicular bisector of `pq`: the boundary between the dominance regions
/// of two equal-speed players standing at `p` and `q`.
pub fn orthogonal_bisector(p: Point, q: Point) -> Result<ImplicitLine> {
    let len = p.dist(q);
    if !(len > 0.0) {
        return Err(Error::DegenerateInput("bisector of coincident points"));
    }
    let a = (q.x - p.x) / len;
    let b = (q.y - p.y) / len;
    let m = p.midpoint(q);
    Ok(ImplicitLine { a, b, c: a * m.x + b * m.y })
}

/// Apollonius circle `{z : |z − evader| = ratio·|z − pursuer|}` where
/// `ratio = v_evader / v_pursuer`. The evader's dominance region is the
/// open disk bounded by the circle.
pub fn apollonius_circle(evader: Point, pursuer: Point, ratio: f64) -> Result<Circle> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::InvalidRatio(ratio));
    }
    let d = evader.dist(pursuer);
    if !(d > 0.0) {
        return Err(Error::DegenerateInput("Apollonius circle of coincident points"));
    }
    let r2 = ratio * ratio;
    let k = 1.0 / (1.0 - r2);
    Ok(Circle {
        center: Point::new(k * (evader.x - r2 * pursuer.x), k * (evader.y - r2 * pursuer.y)),
        radius: ratio * k * d,
    })
}

/// Real roots of `(x − cx)² + cy² = r²`. The circle counts as tangent when
/// `|r − |cy|| ≤ tol·(1 + r)`.
pub fn axis_crossings(c: &Circle, tol: f64) -> AxisCrossing {
    let cy = c.center.y.abs();
    let r = c.radius;
    if (r - cy).abs() <= tol * (1.0 + r) {
        return AxisCrossing::Tangent(c.center.x);
    }
    if r < cy {
        return AxisCrossing::None;
    }
    let half = ((r - cy) * (r + cy)).sqrt();
    AxisCrossing::TwoPoints(c.center.x - half, c.center.x + half)
}
