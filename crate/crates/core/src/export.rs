//! Serialization of cross-sections and trajectories.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Degradation, Regime};
use crate::geometry::Point;
use crate::section::{CrossSection, CurveSegment, SectionSample};
use crate::simulate::Trajectory;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
    Svg,
}

impl ExportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ExportFormat::Csv => "csv",
            ExportFormat::Json => "json",
            ExportFormat::Svg => "svg",
        }
    }
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            "svg" => Ok(ExportFormat::Svg),
            other => Err(Error::Usage(format!("unsupported export format '{other}' (csv, json, svg)"))),
        }
    }
}

/// JSON form of a sampled cross-section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionDocument {
    pub regime: Regime,
    pub x_bar: f64,
    pub p1: Point,
    pub p2: Point,
    pub degraded: Option<Degradation>,
    pub segments: Vec<CurveSegment>,
    pub samples: Vec<SectionSample>,
}

impl SectionDocument {
    pub fn new(cs: &CrossSection, samples: &[SectionSample]) -> Self {
        Self {
            regime: cs.regime,
            x_bar: cs.x_bar,
            p1: cs.p1,
            p2: cs.p2,
            degraded: cs.degraded,
            segments: cs.segments.clone(),
            samples: samples.to_vec(),
        }
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        serde_json::from_slice(bytes).map_err(|e| Error::Scenario(e.to_string()))
    }

    pub fn section(&self) -> CrossSection {
        CrossSection {
            regime: self.regime,
            x_bar: self.x_bar,
            p1: self.p1,
            p2: self.p2,
            segments: self.segments.clone(),
            degraded: self.degraded,
        }
    }
}

pub fn export_section(cs: &CrossSection, samples: &[SectionSample], format: ExportFormat) -> Result<Vec<u8>> {
    match format {
        ExportFormat::Csv => section_csv(cs, samples),
        ExportFormat::Json => Ok(serde_json::to_vec_pretty(&SectionDocument::new(cs, samples))
            .expect("section documents serialize")),
        ExportFormat::Svg => section_svg(cs, samples).map(String::into_bytes),
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn section_csv(cs: &CrossSection, samples: &[SectionSample]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["segment_index", "kind", "x", "y"]).map_err(csv_error)?;
    for s in samples {
        let kind = cs
            .segments
            .get(s.segment_index)
            .ok_or_else(|| Error::SectionInconsistency(format!("sample refers to segment {}", s.segment_index)))?
            .curve
            .kind_name();
        w.write_record([s.segment_index.to_string(), kind.to_string(), s.x.to_string(), s.y.to_string()])
            .map_err(csv_error)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

const SVG_WIDTH: f64 = 800.0;
const SVG_MARGIN: f64 = 40.0;

/// Maps field coordinates to SVG user units, y pointing down.
struct Frame {
    scale: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        SVG_MARGIN + self.scale * x
    }

    fn y(&self, y: f64) -> f64 {
        SVG_MARGIN + self.scale * (self.y_max - y)
    }

    fn pt(&self, p: Point) -> String {
        format!("{:.6},{:.6}", self.x(p.x), self.y(p.y))
    }
}

/// Maximal runs of samples with no gap between consecutive segments.
fn runs(cs: &CrossSection, samples: &[SectionSample]) -> Vec<Vec<Point>> {
    let mut out: Vec<Vec<Point>> = Vec::new();
    let mut prev: Option<SectionSample> = None;
    for &s in samples {
        let joined = prev.is_some_and(|p| {
            p.segment_index == s.segment_index
                || (cs.segments[p.segment_index].hi == cs.segments[s.segment_index].lo && p.x == s.x)
        });
        match out.last_mut() {
            Some(run) if joined => run.push(s.point()),
            _ => out.push(vec![s.point()]),
        }
        prev = Some(s);
    }
    out
}

fn section_svg(cs: &CrossSection, samples: &[SectionSample]) -> Result<String> {
    if samples.is_empty() {
        return Err(Error::Usage("an SVG section needs at least one sample".into()));
    }
    if let Some(s) = samples.iter().find(|s| s.segment_index >= cs.segments.len()) {
        return Err(Error::SectionInconsistency(format!("sample refers to segment {}", s.segment_index)));
    }
    let top = samples.iter().map(|s| s.y).chain([cs.p1.y, cs.p2.y]).fold(0.0, f64::max);
    let y_max = 1.2 * if top > 0.0 { top } else { cs.x_bar };
    let scale = (SVG_WIDTH - 2.0 * SVG_MARGIN) / cs.x_bar;
    let f = Frame { scale, y_max };
    let height = 2.0 * SVG_MARGIN + scale * y_max;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{height:.3}" viewBox="0 0 {SVG_WIDTH} {height:.3}">"#
    );
    let _ = writeln!(
        svg,
        r#"<title>Barrier cross-section, {:?}, x_bar = {}</title>"#,
        cs.regime, cs.x_bar
    );
    let _ = writeln!(
        svg,
        r##"<rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}" fill="#f4f8f0" stroke="#888"/>"##,
        f.x(0.0),
        f.y(y_max),
        scale * cs.x_bar,
        scale * y_max
    );
    for run in runs(cs, samples) {
        let (first, last) = (run[0], run[run.len() - 1]);
        let mut region: Vec<String> = vec![f.pt(Point::new(first.x, 0.0))];
        region.extend(run.iter().map(|&p| f.pt(p)));
        region.push(f.pt(Point::new(last.x, 0.0)));
        let _ = writeln!(
            svg,
            r##"<polygon class="evader-region" points="{}" fill="#9ecae1" fill-opacity="0.5"/>"##,
            region.join(" ")
        );
        let line: Vec<String> = run.iter().map(|&p| f.pt(p)).collect();
        let _ = writeln!(
            svg,
            r##"<polyline class="barrier" points="{}" fill="none" stroke="#08519c" stroke-width="2"/>"##,
            line.join(" ")
        );
    }
    let _ = writeln!(
        svg,
        r##"<line class="goal" x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="#d62728" stroke-width="3"/>"##,
        f.x(0.0),
        f.y(0.0),
        f.x(cs.x_bar),
        f.y(0.0)
    );
    for (label, p) in [("P1", cs.p1), ("P2", cs.p2)] {
        let _ = writeln!(
            svg,
            r##"<circle class="pursuer" cx="{:.6}" cy="{:.6}" r="5" fill="#222"/><text x="{:.6}" y="{:.6}" font-size="14">{label}</text>"##,
            f.x(p.x),
            f.y(p.y),
            f.x(p.x) + 7.0,
            f.y(p.y) - 7.0
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Trajectory as CSV with header `t,xE,yE,x1,y1,x2,y2`.
pub fn write_trajectory_csv<W: Write>(traj: &Trajectory, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "xE", "yE", "x1", "y1", "x2", "y2"]).map_err(csv_error)?;
    for s in &traj.samples {
        let mut row = vec![s.t.to_string()];
        row.extend(s.state.coords().iter().map(f64::to_string));
        w.write_record(&row).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameConfig;
    use crate::section::{sample_section, section};

    fn example() -> (CrossSection, Vec<SectionSample>) {
        let cs = section(Point::new(2.0, 2.0), Point::new(6.0, 2.0), &GameConfig::same_speed(10.0)).unwrap();
        let samples = sample_section(&cs, 20).unwrap();
        (cs, samples)
    }

    #[test]
    fn parses_format_tags() {
        assert_eq!("SVG".parse::<ExportFormat>().unwrap(), ExportFormat::Svg);
        assert!(matches!("png".parse::<ExportFormat>(), Err(Error::Usage(_))));
    }

    #[test]
    fn csv_header_and_rows() {
        let (cs, samples) = example();
        let text = String::from_utf8(export_section(&cs, &samples, ExportFormat::Csv).unwrap()).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("segment_index,kind,x,y"));
        assert_eq!(lines.count(), samples.len());
    }

    #[test]
    fn json_round_trips_exactly() {
        let (cs, samples) = example();
        let bytes = export_section(&cs, &samples, ExportFormat::Json).unwrap();
        let doc = SectionDocument::parse(&bytes).unwrap();
        assert_eq!(doc.section(), cs);
        assert_eq!(doc.samples, samples);
    }

    #[test]
    fn svg_has_field_goal_and_pursuers() {
        let (cs, samples) = example();
        let svg = String::from_utf8(export_section(&cs, &samples, ExportFormat::Svg).unwrap()).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("class=\"pursuer\"").count(), 2);
        assert_eq!(svg.matches("class=\"goal\"").count(), 1);
        assert!(svg.contains("class=\"barrier\""));
        assert!(matches!(export_section(&cs, &[], ExportFormat::Svg), Err(Error::Usage(_))));
    }

    #[test]
    fn svg_polyline_passes_through_pursuer_markers() {
        let (cs, samples) = example();
        let svg = String::from_utf8(export_section(&cs, &samples, ExportFormat::Svg).unwrap()).unwrap();
        let polyline = svg.lines().find(|l| l.contains("class=\"barrier\"")).unwrap();
        for marker in svg.lines().filter(|l| l.contains("class=\"pursuer\"")) {
            let attr = |name: &str| {
                let start = marker.find(&format!("{name}=\"")).unwrap() + name.len() + 2;
                marker[start..].split('"').next().unwrap().to_string()
            };
            let pair = format!("{},{}", attr("cx"), attr("cy"));
            assert!(polyline.contains(&pair), "{pair} not on the polyline");
        }
    }
}
