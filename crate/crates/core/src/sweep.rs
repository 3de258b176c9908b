//! Randomized agreement checks between the Barrier classification and the
//! goal-line dominance scan.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::barrier::{classify, Outcome, Segment};
use crate::game::{Degradation, GameConfig, GameState};
use crate::geometry::Point;
use crate::oracle::goal_margin;
use crate::section::section;

/// States evaluated per parallel batch.
const BATCH: usize = 256;

/// Uniform state with abscissae in `[0, x_bar]` and heights in `(0, depth]`.
pub fn random_state<R: Rng>(rng: &mut R, x_bar: f64, depth: f64) -> GameState {
    let mut point = || {
        let x = rng.gen_range(0.0..=x_bar);
        let y = depth - rng.gen_range(0.0..depth);
        Point::new(x, y)
    };
    GameState { evader: point(), p1: point(), p2: point() }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    /// States that must pass the band filter and be compared.
    pub n_states: usize,
    pub seed: u64,
    /// States with `|B| <= band` are skipped as too close to call.
    pub band: f64,
    /// Sampling depth of the field.
    pub depth: f64,
    /// Draw budget before giving up on reaching `n_states`.
    pub max_draws: usize,
}

impl SweepOptions {
    /// `band = 1e-3·(1 + x_bar²)`, `depth = x_bar`, `max_draws = 10·n_states`.
    pub fn new(config: &GameConfig, n_states: usize, seed: u64) -> Self {
        Self {
            n_states,
            seed,
            band: 1e-3 * (1.0 + config.x_bar * config.x_bar),
            depth: config.x_bar,
            max_draws: n_states.saturating_mul(10).max(100),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disagreement {
    pub draw: usize,
    pub state: GameState,
    pub barrier: f64,
    pub outcome: Outcome,
    pub margin: f64,
    pub degraded: Option<Degradation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: GameConfig,
    pub options: SweepOptions,
    pub drawn: usize,
    /// Terminal, coincident or otherwise unclassifiable draws.
    pub rejected: usize,
    /// Draws inside the band.
    pub filtered: usize,
    pub checked: usize,
    pub agreements: usize,
    pub regular: usize,
    pub degraded: BTreeMap<String, usize>,
    pub evader_wins: usize,
    pub pursuer_wins: usize,
    pub disagreements: Vec<Disagreement>,
    pub warnings: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.checked > 0
    }
}

enum Check {
    Rejected,
    Filtered,
    Compared { agree: bool, evader_wins: bool, degraded: Option<Degradation>, barrier: f64, outcome: Outcome, margin: f64 },
}

fn check_state(state: &GameState, config: &GameConfig, band: f64) -> Check {
    let Ok(eval) = classify(state, config) else {
        return Check::Rejected;
    };
    if eval.value.abs() <= band {
        return Check::Filtered;
    }
    let margin = goal_margin(state, config).margin;
    let agree = (eval.value > 0.0) == (margin > 0.0) && margin != 0.0;
    Check::Compared {
        agree,
        evader_wins: eval.value > 0.0,
        degraded: eval.degraded,
        barrier: eval.value,
        outcome: eval.outcome,
        margin,
    }
}

/// Draws random states until `n_states` have cleared the band filter and
/// compares the sign of `B` with the sign of the dominance margin.
pub fn sweep_agreement(config: &GameConfig, options: &SweepOptions) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut report = SweepReport {
        config: *config,
        options: *options,
        drawn: 0,
        rejected: 0,
        filtered: 0,
        checked: 0,
        agreements: 0,
        regular: 0,
        degraded: BTreeMap::new(),
        evader_wins: 0,
        pursuer_wins: 0,
        disagreements: Vec::new(),
        warnings: Vec::new(),
    };

    'outer: while report.checked < options.n_states && report.drawn < options.max_draws {
        let batch = BATCH.min(options.max_draws - report.drawn);
        let states: Vec<GameState> =
            (0..batch).map(|_| random_state(&mut rng, config.x_bar, options.depth)).collect();
        let checks: Vec<Check> = states.par_iter().map(|s| check_state(s, config, options.band)).collect();
        for (state, check) in states.into_iter().zip(checks) {
            if report.checked >= options.n_states {
                break 'outer;
            }
            let draw = report.drawn;
            report.drawn += 1;
            match check {
                Check::Rejected => report.rejected += 1,
                Check::Filtered => report.filtered += 1,
                Check::Compared { agree, evader_wins, degraded, barrier, outcome, margin } => {
                    report.checked += 1;
                    if evader_wins {
                        report.evader_wins += 1;
                    } else {
                        report.pursuer_wins += 1;
                    }
                    match degraded {
                        None => report.regular += 1,
                        Some(d) => *report.degraded.entry(format!("{d:?}")).or_default() += 1,
                    }
                    if agree {
                        report.agreements += 1;
                    } else {
                        report.disagreements.push(Disagreement { draw, state, barrier, outcome, margin, degraded });
                    }
                }
            }
        }
    }

    if report.checked < options.n_states {
        report.warnings.push(format!(
            "only {} of {} states cleared the band filter within {} draws",
            report.checked, options.n_states, options.max_draws
        ));
    }
    if report.checked == 0 {
        report.warnings.push("no state was compared; the sweep passes vacuously".into());
    } else if report.evader_wins == 0 || report.pursuer_wins == 0 {
        report.warnings.push("only one outcome was sampled".into());
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandOptions {
    /// States wanted on each Barrier segment.
    pub per_segment: usize,
    pub seed: u64,
    pub depth: f64,
    /// `|margin|` bound for a state built on the Barrier.
    pub threshold: f64,
    /// Pursuer pairs drawn before giving up.
    pub max_pairs: usize,
}

impl BandOptions {
    /// `threshold = 1e-4·x_bar`, `depth = x_bar`.
    pub fn new(config: &GameConfig, per_segment: usize, seed: u64) -> Self {
        Self {
            per_segment,
            seed,
            depth: config.x_bar,
            threshold: 1e-4 * config.x_bar,
            max_pairs: per_segment.saturating_mul(200).max(1000),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandCase {
    pub segment: Segment,
    pub state: GameState,
    pub barrier: f64,
    pub classified_segment: Segment,
    pub outcome: Outcome,
    pub margin: f64,
}

impl BandCase {
    fn passes(&self, threshold: f64) -> bool {
        self.outcome == Outcome::OnBarrier && self.margin.abs() <= threshold
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandReport {
    pub config: GameConfig,
    pub options: BandOptions,
    pub pairs_drawn: usize,
    /// Cases built on each segment.
    pub per_segment: BTreeMap<Segment, usize>,
    pub checked: usize,
    pub max_abs_margin: f64,
    pub failures: Vec<BandCase>,
    pub warnings: Vec<String>,
}

impl BandReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

fn segments_of(config: &GameConfig) -> Vec<Segment> {
    match config.regime() {
        crate::game::Regime::SameSpeed => vec![Segment::S1, Segment::S2, Segment::S3],
        crate::game::Regime::FastPursuers => {
            vec![Segment::S1, Segment::S2, Segment::S3, Segment::S4, Segment::S5]
        }
    }
}

/// Places evaders on the Barrier cross-section of random regular pursuer
/// pairs, one per segment and pair, and checks that each is classified
/// `OnBarrier` with a dominance margin of at most `threshold`.
pub fn barrier_band_check(config: &GameConfig, options: &BandOptions) -> BandReport {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let wanted = segments_of(config);
    let mut counts: BTreeMap<Segment, usize> = wanted.iter().map(|&s| (s, 0)).collect();
    let min_width = 1e-6 * config.x_bar;
    let min_height = 1e-6 * config.x_bar;
    let mut cases = Vec::new();
    let mut pairs = 0;

    while pairs < options.max_pairs && counts.values().any(|&c| c < options.per_segment) {
        pairs += 1;
        let draw = random_state(&mut rng, config.x_bar, options.depth);
        let Ok(cs) = section(draw.p1, draw.p2, config) else { continue };
        if cs.degraded.is_some() {
            continue;
        }
        for seg in &cs.segments {
            let count = counts.entry(seg.segment).or_default();
            if *count >= options.per_segment || seg.hi - seg.lo <= 2.0 * min_width {
                continue;
            }
            let x = rng.gen_range(seg.lo + min_width..seg.hi - min_width);
            let Some(y) = seg.curve.y_at(x) else { continue };
            if y <= min_height {
                continue;
            }
            let state = GameState { evader: Point::new(x, y), p1: cs.p1, p2: cs.p2 };
            let Ok(eval) = classify(&state, config) else { continue };
            *count += 1;
            cases.push(BandCase {
                segment: seg.segment,
                state,
                barrier: eval.value,
                classified_segment: eval.segment,
                outcome: eval.outcome,
                margin: 0.0,
            });
        }
    }

    cases.par_iter_mut().for_each(|c| c.margin = goal_margin(&c.state, config).margin);
    let max_abs_margin = cases.iter().map(|c| c.margin.abs()).fold(0.0, f64::max);
    let failures: Vec<BandCase> = cases.iter().filter(|c| !c.passes(options.threshold)).copied().collect();

    let mut warnings = Vec::new();
    for (seg, &n) in &counts {
        if n < options.per_segment {
            warnings.push(format!("segment {seg}: {n} of {} cases built", options.per_segment));
        }
    }
    BandReport {
        config: *config,
        options: *options,
        pairs_drawn: pairs,
        per_segment: counts,
        checked: cases.len(),
        max_abs_margin,
        failures,
        warnings,
    }
}
