//! Cross-sections of the Barrier for fixed pursuer positions: the curve of
//! evader positions with `B = 0`, as a left-to-right chain of circle and
//! hyperbola arcs over `[0, x_bar]`. The evader wins below the curve.

use serde::{Deserialize, Serialize};

use crate::barrier::{self, Active, Segment};
use crate::cells::{real_roots, Pursuers};
use crate::error::{Error, Result};
use crate::game::{canonicalize, CanonicalState, Degradation, GameConfig, GameState, PursuerId, Regime};
use crate::geometry::Point;

/// Relative residual accepted for points on a curve.
pub const CURVE_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Curve {
    /// `(x − cx)² + (y − cy)² = r²`.
    CircleArc { center: Point, radius: f64 },
    /// `a·x² + c·y² + d·x + f = 0` with `a > 0`, `c < 0`, upper branch.
    HyperbolaArc { a: f64, c: f64, d: f64, f: f64 },
}

impl Curve {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Curve::CircleArc { .. } => "CircleArc",
            Curve::HyperbolaArc { .. } => "HyperbolaArc",
        }
    }

    /// `y²` as a quadratic `[x², x, 1]` in `x`, assuming a centre on the
    /// goal axis for circles.
    fn y_sq_coeffs(&self) -> [f64; 3] {
        match *self {
            Curve::CircleArc { center, radius } => {
                [-1.0, 2.0 * center.x, radius * radius - center.x * center.x]
            }
            Curve::HyperbolaArc { a, c, d, f } => [-a / c, -d / c, -f / c],
        }
    }

    /// Square of the upper-branch height at `x`, relative to the circle
    /// centre height for circles.
    pub fn y_sq(&self, x: f64) -> f64 {
        match *self {
            Curve::CircleArc { center, radius } => {
                let dx = x - center.x;
                (radius - dx) * (radius + dx)
            }
            Curve::HyperbolaArc { a, c, d, f } => -((a * x + d) * x + f) / c,
        }
    }

    /// Upper-branch point at `x`, if the curve has one.
    pub fn y_at(&self, x: f64) -> Option<f64> {
        let y2 = self.y_sq(x);
        let cy = match self {
            Curve::CircleArc { center, .. } => center.y,
            Curve::HyperbolaArc { .. } => 0.0,
        };
        let slack = CURVE_RTOL * (1.0 + self.scale());
        if y2 >= 0.0 {
            Some(cy + y2.sqrt())
        } else if y2 >= -slack {
            Some(cy)
        } else {
            None
        }
    }

    /// Value of the implicit equation at `p`.
    pub fn residual(&self, p: Point) -> f64 {
        match *self {
            Curve::CircleArc { center, radius } => {
                (p.x - center.x).powi(2) + (p.y - center.y).powi(2) - radius * radius
            }
            Curve::HyperbolaArc { a, c, d, f } => a * p.x * p.x + c * p.y * p.y + d * p.x + f,
        }
    }

    /// Magnitude used to make residuals relative.
    pub fn scale(&self) -> f64 {
        match *self {
            Curve::CircleArc { center, radius } => radius * radius + center.norm_sq(),
            Curve::HyperbolaArc { a, c, d, f } => a.abs().max(c.abs()).max(d.abs()).max(f.abs()),
        }
    }

    fn circle_on_axis(x: f64, radius_sq: f64) -> Curve {
        Curve::CircleArc { center: Point::new(x, 0.0), radius: radius_sq.max(0.0).sqrt() }
    }

    /// Evader positions where the pursuer's Apollonius circle touches the
    /// goal axis.
    fn tangency_hyperbola(pursuer: Point, gamma: f64) -> Curve {
        let g2 = gamma * gamma;
        let k = 1.0 - g2;
        Curve::HyperbolaArc {
            a: g2,
            c: -k,
            d: -2.0 * g2 * pursuer.x,
            f: g2 * (pursuer.x * pursuer.x + k * pursuer.y * pursuer.y),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSegment {
    pub curve: Curve,
    pub lo: f64,
    pub hi: f64,
    pub segment: Segment,
    pub active: Active,
}

impl CurveSegment {
    pub fn is_empty(&self) -> bool {
        !(self.hi > self.lo)
    }

    pub fn point_at(&self, x: f64) -> Option<Point> {
        self.curve.y_at(x).map(|y| Point::new(x, y))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossSection {
    pub regime: Regime,
    pub x_bar: f64,
    /// Pursuer positions in the caller's labeling.
    pub p1: Point,
    pub p2: Point,
    pub segments: Vec<CurveSegment>,
    pub degraded: Option<Degradation>,
}

impl CrossSection {
    /// Largest mismatch between the ends of segments that share an
    /// abscissa.
    pub fn max_junction_gap(&self) -> f64 {
        self.segments
            .windows(2)
            .filter(|w| w[0].hi == w[1].lo)
            .map(|w| {
                let x = w[0].hi;
                match (w[0].curve.y_at(x), w[1].curve.y_at(x)) {
                    (Some(a), Some(b)) => (a - b).abs(),
                    _ => f64::INFINITY,
                }
            })
            .fold(0.0, f64::max)
    }
}

fn check_pursuers(p1: Point, p2: Point, x_bar: f64) -> Result<()> {
    for (name, p) in [("P1", p1), ("P2", p2)] {
        if !p.is_finite() || p.x < 0.0 || p.x > x_bar || p.y < 0.0 {
            return Err(Error::OutOfDomain(format!("{name} at ({}, {}) outside the field", p.x, p.y)));
        }
    }
    Ok(())
}

fn relabel(active: Active, swapped: bool) -> Active {
    match (active, swapped) {
        (Active::P1Only, true) => Active::P2Only,
        (Active::P2Only, true) => Active::P1Only,
        (a, _) => a,
    }
}

fn finish(
    cs: &CanonicalState,
    regime: Regime,
    x_bar: f64,
    segments: Vec<CurveSegment>,
    degraded: Option<Degradation>,
) -> CrossSection {
    let segments = segments
        .into_iter()
        .filter(|s| !s.is_empty())
        .map(|s| CurveSegment { active: relabel(s.active, cs.swapped), ..s })
        .collect();
    let (p1, p2) = if cs.swapped { (cs.state.p2, cs.state.p1) } else { (cs.state.p1, cs.state.p2) };
    CrossSection { regime, x_bar, p1, p2, segments, degraded }
}

/// Cross-section for equal-speed players: three circle arcs centred on the
/// goal axis at `0`, at the pursuer junction and at `x_bar`.
pub fn section_same(p1: Point, p2: Point, x_bar: f64) -> Result<CrossSection> {
    let config = GameConfig::same_speed(x_bar);
    check_pursuers(p1, p2, x_bar)?;
    let cs = canonicalize(&GameState::new(Point::ORIGIN, p1, p2), &config);
    let (p1, p2) = (cs.state.p1, cs.state.p2);
    let note = cs.degraded.or_else(|| match barrier::xi_same(p1, p2) {
        Err(_) => Some(Degradation::VerticalBisector),
        Ok(xi) if !(0.0..=x_bar).contains(&xi) => Some(Degradation::JunctionOutsideField),
        Ok(_) => None,
    });
    if let Some(note) = note {
        let segments = envelope(&cs, &config);
        return Ok(finish(&cs, Regime::SameSpeed, x_bar, segments, Some(note)));
    }
    let xi = barrier::xi_same(p1, p2)?;
    let segments = vec![
        CurveSegment {
            curve: Curve::circle_on_axis(0.0, p1.norm_sq()),
            lo: 0.0,
            hi: p1.x,
            segment: Segment::S1,
            active: Active::P1Only,
        },
        CurveSegment {
            curve: Curve::circle_on_axis(xi, (p1.x - xi).powi(2) + p1.y * p1.y),
            lo: p1.x,
            hi: p2.x,
            segment: Segment::S2,
            active: Active::Both,
        },
        CurveSegment {
            curve: Curve::circle_on_axis(x_bar, (p2.x - x_bar).powi(2) + p2.y * p2.y),
            lo: p2.x,
            hi: x_bar,
            segment: Segment::S3,
            active: Active::P2Only,
        },
    ];
    Ok(finish(&cs, Regime::SameSpeed, x_bar, segments, None))
}

/// Cross-section for pursuers faster than the evader: circle, hyperbola,
/// circle, hyperbola, circle.
pub fn section_fast(p1: Point, p2: Point, config: &GameConfig) -> Result<CrossSection> {
    if config.regime() != Regime::FastPursuers {
        return Err(Error::UnsupportedRegime { ve: config.ve, v1: config.v1, v2: config.v2 });
    }
    let x_bar = config.x_bar;
    check_pursuers(p1, p2, x_bar)?;
    let cs = canonicalize(&GameState::new(Point::ORIGIN, p1, p2), config);
    let xi = match barrier::regular_fast_junction(&cs, config) {
        Ok(xi) => xi,
        Err(note) => {
            let segments = envelope(&cs, config);
            return Ok(finish(&cs, Regime::FastPursuers, x_bar, segments, Some(note)));
        }
    };
    let (p1, p2) = (cs.state.p1, cs.state.p2);
    let (g1, g2) = (cs.gamma1, cs.gamma2);
    let t = barrier::fast_thresholds(p1, p2, g1, g2, xi, x_bar);
    let segments = vec![
        CurveSegment {
            curve: Curve::circle_on_axis(0.0, g1 * g1 * p1.norm_sq()),
            lo: 0.0,
            hi: t[0],
            segment: Segment::S1,
            active: Active::P1Only,
        },
        CurveSegment {
            curve: Curve::tangency_hyperbola(p1, g1),
            lo: t[0],
            hi: t[1],
            segment: Segment::S2,
            active: Active::P1Only,
        },
        CurveSegment {
            curve: Curve::circle_on_axis(xi, g1 * g1 * ((p1.x - xi).powi(2) + p1.y * p1.y)),
            lo: t[1],
            hi: t[2],
            segment: Segment::S3,
            active: Active::Both,
        },
        CurveSegment {
            curve: Curve::tangency_hyperbola(p2, g2),
            lo: t[2],
            hi: t[3],
            segment: Segment::S4,
            active: Active::P2Only,
        },
        CurveSegment {
            curve: Curve::circle_on_axis(x_bar, g2 * g2 * ((p2.x - x_bar).powi(2) + p2.y * p2.y)),
            lo: t[3],
            hi: x_bar,
            segment: Segment::S5,
            active: Active::P2Only,
        },
    ];
    Ok(finish(&cs, Regime::FastPursuers, x_bar, segments, None))
}

/// Cross-section for either regime.
pub fn section(p1: Point, p2: Point, config: &GameConfig) -> Result<CrossSection> {
    match config.regime() {
        Regime::SameSpeed => section_same(p1, p2, config.x_bar),
        Regime::FastPursuers => section_fast(p1, p2, config),
    }
}

/// Upper envelope of every curve that bounds the evader's winning region
/// for one goal-line candidate: the corner and junction circles of each
/// cell and, for faster pursuers, the tangency hyperbola over the abscissae
/// whose Apollonius centre falls inside the owner's cell.
pub fn envelope(cs: &CanonicalState, config: &GameConfig) -> Vec<CurveSegment> {
    let x_bar = config.x_bar;
    let fast = config.regime() == Regime::FastPursuers;
    let pursuers = Pursuers { p1: cs.state.p1, gamma1: cs.gamma1, p2: cs.state.p2, gamma2: cs.gamma2 };
    let cells = pursuers.cells(x_bar);

    let mut pieces: Vec<CurveSegment> = Vec::new();
    let add_circle = |g: f64, owner: PursuerId, pieces: &mut Vec<CurveSegment>| {
        if pieces.iter().any(|p| matches!(p.curve, Curve::CircleArc { center, .. } if center.x == g)) {
            return;
        }
        let (p, gamma) = pursuers.get(owner);
        let r2 = gamma * gamma * ((p.x - g).powi(2) + p.y * p.y);
        let r = r2.sqrt();
        let (segment, active) = if g == 0.0 {
            (Segment::S1, single(owner))
        } else if g == x_bar {
            (if fast { Segment::S5 } else { Segment::S3 }, single(owner))
        } else {
            (if fast { Segment::S3 } else { Segment::S2 }, Active::Both)
        };
        pieces.push(CurveSegment {
            curve: Curve::circle_on_axis(g, r2),
            lo: (g - r).max(0.0),
            hi: (g + r).min(x_bar),
            segment,
            active,
        });
    };
    for cell in &cells {
        add_circle(cell.lo, cell.owner, &mut pieces);
        add_circle(cell.hi, cell.owner, &mut pieces);
    }
    for cell in &cells {
        let (p, gamma) = pursuers.get(cell.owner);
        if gamma >= 1.0 {
            continue;
        }
        let g2 = gamma * gamma;
        let lo = ((1.0 - g2) * cell.lo + g2 * p.x).max(0.0);
        let hi = ((1.0 - g2) * cell.hi + g2 * p.x).min(x_bar);
        pieces.push(CurveSegment {
            curve: Curve::tangency_hyperbola(p, gamma),
            lo,
            hi,
            segment: if cell.owner == PursuerId::P1 { Segment::S2 } else { Segment::S4 },
            active: single(cell.owner),
        });
    }
    pieces.retain(|p| !p.is_empty());

    let mut xs = vec![0.0, x_bar];
    for (i, a) in pieces.iter().enumerate() {
        xs.push(a.lo);
        xs.push(a.hi);
        let ca = a.curve.y_sq_coeffs();
        for b in &pieces[i + 1..] {
            let cb = b.curve.y_sq_coeffs();
            xs.extend(real_roots(ca[0] - cb[0], ca[1] - cb[1], ca[2] - cb[2]));
        }
    }
    xs.retain(|x| (0.0..=x_bar).contains(x));
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + x_bar));

    let mut out: Vec<CurveSegment> = Vec::new();
    for w in xs.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let top = pieces
            .iter()
            .filter(|p| p.lo <= mid && mid <= p.hi)
            .map(|p| (p, p.curve.y_sq(mid)))
            .filter(|(_, y2)| *y2 >= 0.0)
            .max_by(|a, b| a.1.total_cmp(&b.1));
        let Some((piece, _)) = top else { continue };
        match out.last_mut() {
            Some(last) if last.curve == piece.curve && last.hi == w[0] => last.hi = w[1],
            _ => out.push(CurveSegment { lo: w[0], hi: w[1], ..*piece }),
        }
    }
    out
}

fn single(which: PursuerId) -> Active {
    match which {
        PursuerId::P1 => Active::P1Only,
        PursuerId::P2 => Active::P2Only,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectionSample {
    pub segment_index: usize,
    pub x: f64,
    pub y: f64,
}

impl SectionSample {
    pub fn point(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

/// `n_per_segment` equally spaced abscissae on every non-empty segment,
/// with the upper-branch height of its curve.
pub fn sample_section(cs: &CrossSection, n_per_segment: usize) -> Result<Vec<SectionSample>> {
    if n_per_segment < 2 {
        return Err(Error::Usage(format!("need at least 2 samples per segment, got {n_per_segment}")));
    }
    let mut out = Vec::with_capacity(cs.segments.len() * n_per_segment);
    for (index, seg) in cs.segments.iter().enumerate() {
        if seg.is_empty() {
            continue;
        }
        let step = (seg.hi - seg.lo) / (n_per_segment - 1) as f64;
        for k in 0..n_per_segment {
            let x = if k == n_per_segment - 1 { seg.hi } else { seg.lo + step * k as f64 };
            let y = seg.curve.y_at(x).ok_or_else(|| {
                Error::SectionInconsistency(format!(
                    "segment {index} ({}) has no point above the axis at x = {x}",
                    seg.segment
                ))
            })?;
            out.push(SectionSample { segment_index: index, x, y });
        }
    }
    Ok(out)
}

/// Height of the section curve at `x`; the largest one where segments
/// overlap at a shared end.
pub fn section_height(section: &CrossSection, x: f64) -> Option<f64> {
    section
        .segments
        .iter()
        .filter(|s| s.lo <= x && x <= s.hi)
        .filter_map(|s| s.curve.y_at(x))
        .reduce(f64::max)
}
