use clap::ValueEnum;
use serde::Serialize;
use std::io::{self, Write};
use tunnel_core::{Result, ScatteringResult};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One grid point. `status` is a [`tunnel_core::Status`] name or `Error`.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub x: f64,
    pub t: Option<f64>,
    pub r: Option<f64>,
    pub status: String,
}

impl Row {
    pub fn from_result(x: f64, r: Result<ScatteringResult>) -> Self {
        match r {
            Ok(s) => Self {
                x,
                t: s.t,
                r: s.r,
                status: s.status.to_string(),
            },
            Err(e) => {
                eprintln!("error at {x}: {e}");
                Self {
                    x,
                    t: None,
                    r: None,
                    status: "Error".to_string(),
                }
            }
        }
    }

    pub fn is_error(&self) -> bool {
        self.status == "Error"
    }
}

/// 17 significant digits, `.` decimal point.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(float).unwrap_or_default()
}

#[derive(Serialize)]
struct Record<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    series: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    u0: Option<f64>,
    #[serde(rename = "T")]
    t: Option<f64>,
    #[serde(rename = "R")]
    r: Option<f64>,
    status: &'a str,
}

fn record<'a>(series: Option<&'a str>, x_name: &str, row: &'a Row) -> Record<'a> {
    let (epsilon, u0) = if x_name == "u0" {
        (None, Some(row.x))
    } else {
        (Some(row.x), None)
    };
    Record {
        series,
        epsilon,
        u0,
        t: row.t,
        r: row.r,
        status: &row.status,
    }
}

fn write_json(out: &mut impl Write, records: &[Record]) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, records)?;
    writeln!(out)
}

/// `x_name` is the header of the swept column, `epsilon` or `u0`.
pub fn write_rows(
    out: &mut impl Write,
    format: Format,
    x_name: &str,
    rows: &[Row],
) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{x_name},T,R,status")?;
            for row in rows {
                writeln!(
                    out,
                    "{},{},{},{}",
                    float(row.x),
                    opt(row.t),
                    opt(row.r),
                    row.status
                )?;
            }
            Ok(())
        }
        Format::Json => {
            let recs: Vec<Record> = rows.iter().map(|r| record(None, x_name, r)).collect();
            write_json(out, &recs)
        }
    }
}

pub fn write_series(
    out: &mut impl Write,
    format: Format,
    series: &[(&str, Vec<Row>)],
) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "series,epsilon,T,R,status")?;
            for (tag, rows) in series {
                for row in rows {
                    writeln!(
                        out,
                        "{tag},{},{},{},{}",
                        float(row.x),
                        opt(row.t),
                        opt(row.r),
                        row.status
                    )?;
                }
            }
            Ok(())
        }
        Format::Json => {
            let recs: Vec<Record> = series
                .iter()
                .flat_map(|(tag, rows)| rows.iter().map(move |r| record(Some(tag), "epsilon", r)))
                .collect();
            write_json(out, &recs)
        }
    }
}
