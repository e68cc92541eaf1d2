use std::fmt::Write as _;
use std::io::Write;

use unitfield_core::Report;

use crate::CliError;

/// Column order of the CSV summary; fixed for schema version 1.
pub const CSV_HEADER: [&str; 9] = ["theorem", "surface", "field", "lhs", "rhs", "gap", "pass", "equality", "resolution"];

fn resolution_label(r: &[usize]) -> String {
    r.iter().map(usize::to_string).collect::<Vec<_>>().join("x")
}

/// One row per check. Floats use shortest round-trip scientific notation, so
/// identical reports give byte-identical output.
pub fn write_csv<W: Write>(report: &Report, out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for c in &report.checks {
        w.write_record([
            c.id.clone(),
            report.surface.name.clone(),
            report.field.clone(),
            format!("{:e}", c.lhs),
            format!("{:e}", c.rhs),
            format!("{:e}", c.gap),
            c.pass.to_string(),
            c.equality.to_string(),
            resolution_label(&c.resolution),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}

pub fn write_json<W: Write>(report: &Report, out: W) -> Result<(), CliError> {
    serde_json::to_writer_pretty(out, report).map_err(|e| CliError::Io(e.to_string()))
}

/// Human-readable summary printed after a run.
pub fn render_summary(report: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} / {}  suite {}  resolution {}",
        report.surface.name,
        report.field,
        report.suite,
        resolution_label(&report.resolution)
    );
    let _ = writeln!(
        s,
        "energy {:.12}  bending {:.12}  degree {} (raw {:.3e}, residual {:.1e})",
        report.energy, report.total_bending, report.degree.degree, report.degree.raw, report.degree.residual
    );
    if let Some(w) = &report.degree.warning {
        let _ = writeln!(s, "warning: {w}");
    }
    let _ = writeln!(s, "{:<26} {:>20} {:>20} {:>11}  {:<4}  eq", "check", "lhs", "rhs", "gap", "");
    for c in &report.checks {
        let _ = writeln!(
            s,
            "{:<26} {:>20.12} {:>20.12} {:>11.3e}  {:<4}  {}",
            c.id,
            c.lhs,
            c.rhs,
            c.gap,
            if c.pass { "PASS" } else { "FAIL" },
            if c.equality { "=" } else { "" }
        );
    }
    let stalled: Vec<&str> =
        report.convergence.rows.iter().filter(|r| !r.converged).map(|r| r.name.as_str()).collect();
    if !stalled.is_empty() {
        let _ = writeln!(s, "not converged: {}", stalled.join(", "));
    }
    let _ = writeln!(s, "equalities: {}", report.equalities().len());
    s
}
