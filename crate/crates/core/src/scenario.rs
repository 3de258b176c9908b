//! Flat JSON scenario files: one game state plus its configuration.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{GameConfig, GameState};
use crate::geometry::Point;
use crate::simulate::SimOptions;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub x_e: f64,
    pub y_e: f64,
    pub x_1: f64,
    pub y_1: f64,
    pub x_2: f64,
    pub y_2: f64,
    pub v_e: f64,
    pub v_1: f64,
    pub v_2: f64,
    pub x_bar: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_resolution: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Scenario {
    pub fn new(state: &GameState, ve: f64, v1: f64, v2: f64, x_bar: f64) -> Self {
        let [x_e, y_e, x_1, y_1, x_2, y_2] = state.coords();
        Self {
            schema_version: SCHEMA_VERSION,
            x_e,
            y_e,
            x_1,
            y_1,
            x_2,
            y_2,
            v_e: ve,
            v_1: v1,
            v_2: v2,
            x_bar,
            tol: None,
            oracle_resolution: None,
            dt: None,
            eps: None,
            t_max: None,
            seed: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| Error::Scenario(e.to_string()))?;
        if s.schema_version != SCHEMA_VERSION {
            return Err(Error::Scenario(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                s.schema_version
            )));
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Scenario(m) => Error::Scenario(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenarios serialize")
    }

    pub fn state(&self) -> GameState {
        GameState {
            evader: Point::new(self.x_e, self.y_e),
            p1: Point::new(self.x_1, self.y_1),
            p2: Point::new(self.x_2, self.y_2),
        }
    }

    pub fn config(&self) -> Result<GameConfig> {
        let mut cfg = GameConfig::new(self.v_e, self.v_1, self.v_2, self.x_bar)?;
        if let Some(tol) = self.tol {
            cfg = cfg.with_tol(tol)?;
        }
        if let Some(n) = self.oracle_resolution {
            cfg = cfg.with_oracle_resolution(n)?;
        }
        Ok(cfg)
    }

    /// Simulator settings, falling back to the defaults per field.
    pub fn sim_options(&self, config: &GameConfig) -> SimOptions {
        let d = SimOptions::defaults(config, &self.state());
        SimOptions {
            dt: self.dt.unwrap_or(d.dt),
            eps: self.eps.unwrap_or(d.eps),
            t_max: self.t_max.unwrap_or(d.t_max),
        }
    }
}
