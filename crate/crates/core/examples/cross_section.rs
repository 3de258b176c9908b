//! Build a Barrier cross-section and write it as CSV, JSON and SVG.
//!
//! `cargo run --example cross_section -- [out_dir]`

use std::path::PathBuf;

use pursuit_barrier::export::{export_section, ExportFormat};
use pursuit_barrier::section::{sample_section, section};
use pursuit_barrier::{GameConfig, Point};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let config = GameConfig::new(0.5, 1.0, 2.0, 10.0)?;
    let cs = section(Point::new(2.0, 1.5), Point::new(7.0, 3.0), &config)?;
    for seg in &cs.segments {
        println!("{} {:12} x in [{:.4}, {:.4}] active={:?}", seg.segment, seg.curve.kind_name(), seg.lo, seg.hi, seg.active);
    }
    println!("max junction gap: {:.2e}", cs.max_junction_gap());
    let samples = sample_section(&cs, 60)?;
    for format in [ExportFormat::Csv, ExportFormat::Json, ExportFormat::Svg] {
        let path = out_dir.join(format!("cross_section.{}", format.extension()));
        std::fs::write(&path, export_section(&cs, &samples, format)?)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
