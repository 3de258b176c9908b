use proptest::prelude::*;

use pursuit_barrier::barrier::{fast_thresholds, xi_fast, xi_same};
use pursuit_barrier::cells::{corner_value, tangency_value};
use pursuit_barrier::export::{export_section, ExportFormat};
use pursuit_barrier::oracle::goal_margin;
use pursuit_barrier::section::{sample_section, section};
use pursuit_barrier::simulate::{simulate, SimOptions};
use pursuit_barrier::sweep::{sweep_agreement, SweepOptions};
use pursuit_barrier::{classify, GameConfig, GameState, Outcome, Point, Segment};

const X_BAR: f64 = 10.0;

fn point() -> impl Strategy<Value = Point> {
    (0.0..=X_BAR, 0.01..X_BAR).prop_map(|(x, y)| Point::new(x, y))
}

fn state() -> impl Strategy<Value = GameState> {
    (point(), point(), point()).prop_map(|(e, p1, p2)| GameState::new(e, p1, p2))
}

fn fast_config() -> impl Strategy<Value = GameConfig> {
    prop_oneof![
        Just(GameConfig::new(0.5, 1.0, 2.0, X_BAR).unwrap()),
        Just(GameConfig::new(0.3, 0.5, 0.6, X_BAR).unwrap()),
        Just(GameConfig::new(0.9, 1.0, 1.5, X_BAR).unwrap()),
    ]
}

fn any_config() -> impl Strategy<Value = GameConfig> {
    prop_oneof![Just(GameConfig::same_speed(X_BAR)), fast_config()]
}

fn close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * (1.0 + a.abs().max(b.abs()))
}

/// Junction and thresholds of a regular fast-regime pair with `v1 < v2`.
fn regular_fast(p1: Point, p2: Point, cfg: &GameConfig) -> Option<(f64, [f64; 4])> {
    let cs = section(p1, p2, cfg).ok()?;
    if cs.degraded.is_some() {
        return None;
    }
    let xi = xi_fast(p1, p2, cfg.gamma()).ok()??;
    Some((xi, fast_thresholds(p1, p2, cfg.gamma1(), cfg.gamma2(), xi, X_BAR)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn same_speed_segments_agree_at_thresholds(p1 in point(), p2 in point(), y in 0.01..X_BAR) {
        prop_assume!(p1.x < p2.x);
        let xi = xi_same(p1, p2).unwrap();
        prop_assume!((0.0..=X_BAR).contains(&xi));
        let e = Point::new(p1.x, y);
        prop_assert!(close(corner_value(0.0, p1, 1.0, e), corner_value(xi, p1, 1.0, e), 1e-9));
        let e = Point::new(p2.x, y);
        prop_assert!(close(corner_value(xi, p2, 1.0, e), corner_value(X_BAR, p2, 1.0, e), 1e-9));
    }

    #[test]
    fn fast_segments_agree_at_thresholds(cfg in fast_config(), p1 in point(), p2 in point(), y in 0.01..X_BAR) {
        let (g1, g2) = (cfg.gamma1(), cfg.gamma2());
        let (k1, k2) = (1.0 - g1 * g1, 1.0 - g2 * g2);
        let Some((xi, t)) = regular_fast(p1, p2, &cfg) else { return Err(TestCaseError::reject("irregular")) };
        let at = |x: f64| Point::new(x, y);
        // Tangency forms carry the factor 1 − γ² relative to corner values.
        prop_assert!(close(tangency_value(p1, g1, at(t[0])), k1 * corner_value(0.0, p1, g1, at(t[0])), 1e-9));
        prop_assert!(close(tangency_value(p1, g1, at(t[1])), k1 * corner_value(xi, p1, g1, at(t[1])), 1e-9));
        prop_assert!(close(tangency_value(p2, g2, at(t[2])), k2 * corner_value(xi, p1, g1, at(t[2])), 1e-9));
        prop_assert!(close(tangency_value(p2, g2, at(t[3])), k2 * corner_value(X_BAR, p2, g2, at(t[3])), 1e-9));
    }

    #[test]
    fn reflection_maps_segments(cfg in any_config(), s in state()) {
        let Ok(base) = classify(&s, &cfg) else { return Err(TestCaseError::reject("terminal")) };
        prop_assume!(base.degraded.is_none());
        let m = classify(&s.reflected(X_BAR).with_pursuers_swapped(), &cfg.with_pursuers_swapped()).unwrap();
        prop_assume!(m.degraded.is_none());
        let last = if cfg.regime() == pursuit_barrier::Regime::SameSpeed { 3 } else { 5 };
        prop_assert_eq!(m.segment.index(), last + 1 - base.segment.index());
        prop_assert_eq!(m.outcome, base.outcome);
        prop_assert!(close(m.value, base.value, 1e-9), "{} vs {}", m.value, base.value);
    }

    #[test]
    fn middle_segment_barrier_is_simultaneous(cfg in fast_config(), p1 in point(), p2 in point(), u in 0.0..1.0f64) {
        let Some((xi, t)) = regular_fast(p1, p2, &cfg) else { return Err(TestCaseError::reject("irregular")) };
        prop_assume!(t[2] - t[1] > 1e-6);
        let cs = section(p1, p2, &cfg).unwrap();
        let seg = cs.segments.iter().find(|s| s.segment == Segment::S3).unwrap();
        let x = t[1] + u * (t[2] - t[1]);
        let e = seg.point_at(x).unwrap();
        prop_assume!(e.y > 1e-3);
        let goal = Point::new(xi, 0.0);
        let te = e.dist(goal) / cfg.ve;
        prop_assert!(close(te, p1.dist(goal) / cfg.v1, 1e-6));
        prop_assert!(close(te, p2.dist(goal) / cfg.v2, 1e-6));
    }

    #[test]
    fn section_separates_the_winning_regions(cfg in any_config(), p1 in point(), p2 in point()) {
        prop_assume!(p1 != p2);
        let cs = section(p1, p2, &cfg).unwrap();
        let delta = 1e-3 * X_BAR;
        for s in sample_section(&cs, 7).unwrap() {
            let on = GameState::new(s.point(), p1, p2);
            if s.y <= delta || on.terminal_cause().is_some() {
                continue;
            }
            let eval = classify(&on, &cfg).unwrap();
            prop_assert_eq!(eval.outcome, Outcome::OnBarrier, "{:?} B={}", s, eval.value);
            let below = GameState::new(Point::new(s.x, s.y - delta), p1, p2);
            let above = GameState::new(Point::new(s.x, s.y + delta), p1, p2);
            prop_assert_eq!(classify(&below, &cfg).unwrap().outcome, Outcome::EvaderWin);
            prop_assert_eq!(classify(&above, &cfg).unwrap().outcome, Outcome::PursuerWin);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn oracle_is_grid_independent(cfg in any_config(), s in state()) {
        let coarse = goal_margin(&s, &cfg).margin;
        let fine_cfg = cfg.with_oracle_resolution(2 * cfg.oracle_resolution).unwrap();
        let fine = goal_margin(&s, &fine_cfg).margin;
        prop_assert!((coarse - fine).abs() <= 1e-6 * X_BAR, "{coarse} vs {fine}");
    }

    #[test]
    fn simulated_players_move_at_full_speed(cfg in any_config(), s in state()) {
        prop_assume!(s.terminal_cause().is_none());
        let mut opts = SimOptions::defaults(&cfg, &s);
        opts.t_max = 200.0 * opts.dt;
        let Ok(traj) = simulate(&s, &cfg, &opts) else { return Err(TestCaseError::reject("rejected")) };
        let n = traj.samples.len();
        for (k, w) in traj.samples.windows(2).enumerate() {
            let (a, b) = (w[0].state, w[1].state);
            for (from, to, v, last_evader_step) in [
                (a.p1, b.p1, cfg.v1, false),
                (a.p2, b.p2, cfg.v2, false),
                (a.evader, b.evader, cfg.ve, k + 2 == n),
            ] {
                let step = v * opts.dt;
                let moved = from.dist(to);
                prop_assert!(moved <= step * (1.0 + 1e-12));
                if !last_evader_step {
                    prop_assert!(moved >= step * (1.0 - 1e-12), "moved {moved} of {step}");
                }
            }
        }
    }
}

#[test]
fn outputs_are_deterministic() {
    let cfg = GameConfig::new(0.5, 1.0, 2.0, X_BAR).unwrap();
    let cs = section(Point::new(2.0, 1.5), Point::new(7.0, 3.0), &cfg).unwrap();
    let samples = sample_section(&cs, 40).unwrap();
    for format in [ExportFormat::Csv, ExportFormat::Json, ExportFormat::Svg] {
        assert_eq!(export_section(&cs, &samples, format).unwrap(), export_section(&cs, &samples, format).unwrap());
    }
    let cfg = cfg.with_oracle_resolution(300).unwrap();
    let opts = SweepOptions::new(&cfg, 300, 17);
    let a = serde_json::to_string(&sweep_agreement(&cfg, &opts)).unwrap();
    let b = serde_json::to_string(&sweep_agreement(&cfg, &opts)).unwrap();
    assert_eq!(a, b);
}
