use std::fmt::Write as _;
use std::str::FromStr;

use fogsim_engine::TickMetrics;

/// Output shape for exported metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    /// One comma-separated line per second, with a header.
    Rows,
    /// One line per event-log entry, in order.
    Events,
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rows" => Ok(ExportFormat::Rows),
            "events" => Ok(ExportFormat::Events),
            other => Err(format!("unknown format '{other}' (expected rows|events)")),
        }
    }
}

/// Render metrics as text. Byte-stable: identical metrics produce identical
/// output. Row columns are second, requests served per fog (ascending fog
/// id), cloud, absorbed, rejected, and the cumulative blacklist size.
pub fn export_metrics(metrics: &[TickMetrics], format: ExportFormat) -> String {
    let mut out = String::from("format=1\n");
    match format {
        ExportFormat::Rows => {
            let mut header = String::from("second");
            if let Some(first) = metrics.first() {
                for fid in first.served_per_fog.keys() {
                    let _ = write!(header, ",{fid}");
                }
            }
            header.push_str(",cloud,absorbed,rejected,blacklist");
            out.push_str(&header);
            out.push('\n');
            for m in metrics {
                let _ = write!(out, "{}", m.second);
                for served in m.served_per_fog.values() {
                    let _ = write!(out, ",{served}");
                }
                let _ = writeln!(
                    out,
                    ",{},{},{},{}",
                    m.cloud_served, m.absorbed, m.rejected_at_detection, m.blacklist_size
                );
            }
        }
        ExportFormat::Events => {
            for m in metrics {
                for event in &m.events {
                    let _ = writeln!(out, "{event}");
                }
            }
        }
    }
    out
}
