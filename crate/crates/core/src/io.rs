//! Text formats shared by the command line: CSV tables and real formatting.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::propagator::{Component, SweepRecord, SweepRow};
use crate::rational::{format_rational, parse_rational};

pub const SCHEMA_VERSION: u32 = 1;

pub const SWEEP_HEADER: &str = "P,Q,t,v,component,exact_re,exact_im,closed_re,closed_im,abs_err,rel_err,schema_version";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_sweep_csv<W: Write>(out: &mut W, records: &[SweepRecord]) -> std::io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for record in records {
        match record {
            SweepRecord::Row(r) => writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{SCHEMA_VERSION}",
                r.p,
                r.q,
                format_rational(&r.t),
                format_rational(&r.v),
                r.component.label(),
                format_real(r.exact_re),
                format_real(r.exact_im),
                format_real(r.closed_re),
                format_real(r.closed_im),
                format_real(r.abs_err),
                format_real(r.rel_err),
            )?,
            SweepRecord::Skipped { size, .. } => {
                writeln!(out, ",,,,skipped:N={size},,,,,,,{SCHEMA_VERSION}")?
            }
        }
    }
    Ok(())
}

fn component_from_label(s: &str) -> Option<Component> {
    Component::ALL.into_iter().find(|c| c.label() == s)
}

/// Reads back the rows written by [`write_sweep_csv`]; skipped lines are
/// dropped.
pub fn read_sweep_csv<R: BufRead>(input: R) -> Result<Vec<SweepRow>> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .transpose()
        .map_err(|e| Error::Parse(e.to_string()))?
        .ok_or_else(|| Error::Parse("empty CSV".into()))?;
    if header.trim() != SWEEP_HEADER {
        return Err(Error::Parse(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for line in lines {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 12 {
            return Err(Error::Parse(format!("expected 12 fields: {line:?}")));
        }
        if f[4].starts_with("skipped") {
            continue;
        }
        let int = |s: &str| s.parse::<u32>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
        let real = |s: &str| s.parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
        rows.push(SweepRow {
            p: int(f[0])?,
            q: int(f[1])?,
            t: parse_rational(f[2])?,
            v: parse_rational(f[3])?,
            component: component_from_label(f[4]).ok_or_else(|| Error::Parse(format!("component {:?}", f[4])))?,
            exact_re: real(f[5])?,
            exact_im: real(f[6])?,
            closed_re: real(f[7])?,
            closed_im: real(f[8])?,
            abs_err: real(f[9])?,
            rel_err: real(f[10])?,
        });
    }
    Ok(rows)
}
