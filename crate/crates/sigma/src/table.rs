//! CSV summary of a scan: one row per verdict.

use std::path::Path;

use sigma_core::report::SigmaReport;

use crate::error::{CliError, CliResult};

pub fn csv_string(report: &SigmaReport) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (1..=report.deck_rank).map(|i| format!("xi_{i}")).collect();
    header.extend(["k", "ring", "status"].map(String::from));
    w.write_record(&header)?;
    for v in &report.verdicts {
        let mut row: Vec<String> = v.xi.coeffs().iter().map(ToString::to_string).collect();
        row.extend([v.k.to_string(), v.ring.to_string(), v.status_name().to_string()]);
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_csv(path: &Path, report: &SigmaReport) -> CliResult<()> {
    crate::format::write_text(path, &csv_string(report)?)
}
