//! Brute-force goal-line dominance scan.
//!
//! The evader can force a goal iff some goal point `g` is reached by the
//! evader strictly before either pursuer: the straight run to `g` then stays
//! inside the evader's (convex) dominance region. The scan is independent
//! of the closed forms and uses plain distances, not squared forms.

use serde::{Deserialize, Serialize};

use crate::game::{GameConfig, GameState};
use crate::geometry::Point;

/// Interval width at which golden-section refinement stops.
pub const REFINE_WIDTH: f64 = 1e-10;

/// Grid-local maxima refined per scan.
const REFINED_PEAKS: usize = 3;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GoalMargin {
    /// `max_g min_i (γ_i·|g − P_i| − |g − E|)`, in field units.
    pub margin: f64,
    /// Abscissa of the maximizing goal point.
    pub argmax_x: f64,
}

/// Evader advantage at goal point `(g, 0)`: how much earlier, in evader
/// travel distance, the evader arrives than the first pursuer.
pub fn advantage_at(g: f64, state: &GameState, config: &GameConfig) -> f64 {
    let goal = Point::new(g, 0.0);
    let de = goal.dist(state.evader);
    let a1 = config.gamma1() * goal.dist(state.p1) - de;
    let a2 = config.gamma2() * goal.dist(state.p2) - de;
    a1.min(a2)
}

/// Maximizes a function on `[lo, hi]` assuming it is unimodal there.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > width {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Best goal point for the evader by a uniform scan of `oracle_resolution`
/// points on `[0, x_bar]`, refined by golden section around the best
/// grid-local maxima.
pub fn goal_margin(state: &GameState, config: &GameConfig) -> GoalMargin {
    let n = config.oracle_resolution.max(2);
    let x_bar = config.x_bar;
    let h = x_bar / (n - 1) as f64;
    let grid_x = |k: usize| if k == n - 1 { x_bar } else { h * k as f64 };
    let f = |g: f64| advantage_at(g, state, config);
    let values: Vec<f64> = (0..n).map(|k| f(grid_x(k))).collect();

    let mut peaks: Vec<usize> = (0..n)
        .filter(|&k| {
            let left = k == 0 || values[k - 1] <= values[k];
            let right = k == n - 1 || values[k + 1] <= values[k];
            left && right
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    peaks.truncate(REFINED_PEAKS);

    let mut best = GoalMargin { margin: values[peaks[0]], argmax_x: grid_x(peaks[0]) };
    for k in peaks {
        let lo = grid_x(k.saturating_sub(1));
        let hi = grid_x((k + 1).min(n - 1));
        let (x, v) = golden_section_max(f, lo, hi, REFINE_WIDTH);
        if v > best.margin {
            best = GoalMargin { margin: v, argmax_x: x };
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, v) = golden_section_max(|x| -(x - 0.3).powi(2) + 2.0, 0.0, 1.0, 1e-12);
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-6);
        assert_abs_diff_eq!(v, 2.0, epsilon = 1e-12);
        let (x, _) = golden_section_max(|x| -(x - 0.7f64).abs(), 0.0, 1.0, 1e-12);
        assert_abs_diff_eq!(x, 0.7, epsilon = 1e-10);
    }

    #[test]
    fn same_speed_evader_win() {
        let cfg = GameConfig::same_speed(10.0);
        let m = goal_margin(&GameState::from_coords([4.0, 1.0, 2.0, 2.0, 6.0, 2.0]), &cfg);
        assert_abs_diff_eq!(m.argmax_x, 4.0, epsilon = 1e-6);
        assert_abs_diff_eq!(m.margin, 8f64.sqrt() - 1.0, epsilon = 1e-9);
    }

    #[test]
    fn fast_barrier_state_has_zero_margin() {
        let cfg = GameConfig::new(0.5, 1.0, 2.0, 10.0).unwrap();
        let m = goal_margin(&GameState::from_coords([4.0 / 3.0, 5.0 / 6.0, 0.0, 1.0, 4.0, 2.0]), &cfg);
        assert!(m.margin.abs() <= 1e-6, "{m:?}");
        assert_abs_diff_eq!(m.argmax_x, 4.0 / 3.0, epsilon = 1e-4);
    }

    #[test]
    fn equidistant_corner() {
        let cfg = GameConfig::same_speed(12.0);
        let m = goal_margin(&GameState::from_coords([0.0, 3.0, 3.0, 0.0, 10.0, 5.0]), &cfg);
        assert_eq!(m.argmax_x, 0.0);
        assert_abs_diff_eq!(m.margin, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn margin_is_monotone_in_evader_height() {
        let cfg = GameConfig::new(0.5, 1.0, 2.0, 10.0).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for k in (1..=40).rev() {
            let y = 0.25 * k as f64;
            let m = goal_margin(&GameState::from_coords([3.0, y, 1.0, 2.0, 7.0, 4.0]), &cfg).margin;
            assert!(m >= prev - 1e-12, "y={y} margin={m} prev={prev}");
            prev = m;
        }
    }
}
