//! JSON and CSV encodings. Floats are written in shortest round-trip form, so
//! no value loses digits in either format.

use std::fs;
use std::io::Write;

use serde::Serialize;

use crate::config::{OutputFormat, RunConfig};
use crate::dirac::{DiracReport, FlatDiracRow};
use crate::error::CliError;
use crate::verify::VerifyReport;

fn csv_with_header<R: Serialize, M: Serialize>(schema: &str, command: &str, metadata: &M, rows: &[R], pass: bool) -> Result<Vec<u8>, CliError> {
    let mut out = Vec::new();
    writeln!(out, "# schema_version: {schema}")?;
    writeln!(out, "# command: {command}")?;
    if let serde_json::Value::Object(map) = serde_json::to_value(metadata)? {
        for (key, value) in map {
            writeln!(out, "# {key}: {value}")?;
        }
    }
    writeln!(out, "# pass: {pass}")?;
    let mut writer = csv::Writer::from_writer(&mut out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    drop(writer);
    Ok(out)
}

pub fn encode_verify(report: &VerifyReport, format: OutputFormat) -> Result<Vec<u8>, CliError> {
    match format {
        OutputFormat::Json => json(report),
        OutputFormat::Csv => csv_with_header(report.schema_version, report.command, &report.metadata, &report.rows, report.pass),
    }
}

pub fn encode_dirac(report: &DiracReport, format: OutputFormat) -> Result<Vec<u8>, CliError> {
    match format {
        OutputFormat::Json => json(report),
        OutputFormat::Csv => {
            let flat: Vec<FlatDiracRow> = report.rows.iter().map(FlatDiracRow::from).collect();
            if flat.is_empty() {
                // Keep the column names even without rows.
                let mut out = csv_with_header(report.schema_version, report.command, &report.metadata, &flat, report.pass)?;
                out.extend_from_slice(FLAT_HEADER.as_bytes());
                out.push(b'\n');
                return Ok(out);
            }
            csv_with_header(report.schema_version, report.command, &report.metadata, &flat, report.pass)
        }
    }
}

const FLAT_HEADER: &str = "n,k,r,b,l,dim_v,matrix_eigenvalue,matrix_eigenvalue_im,closed_form,residual,\
ker_d_prime,ker_d_double_prime,ker_d,kernel_checks,recursion_matches,adjoint_similar,pass";

fn json<T: Serialize>(report: &T) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(report)?;
    out.push(b'\n');
    Ok(out)
}

pub fn emit(bytes: &[u8], config: &RunConfig) -> Result<(), CliError> {
    match &config.out {
        Some(path) => fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}
