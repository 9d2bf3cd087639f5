//! `tunnel`: transmission through `u0/|z|^alpha` from the command line.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{Format, Row};
use rayon::prelude::*;
use std::io::{self, Write};
use std::process::ExitCode;
use tunnel_core::oracle::{self, DEFAULT_DELTAS};
use tunnel_core::{selftest, transmission_any, Error, PotentialSpec, Status};

const EXIT_USAGE: u8 = 2;
const EXIT_UNDETERMINED: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

#[derive(Parser)]
#[command(
    name = "tunnel",
    version,
    about = "Tunneling through u0/|z|^alpha without regularization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// T and R at a single energy.
    Point {
        #[arg(long, allow_negative_numbers = true)]
        u0: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        epsilon: f64,
    },
    /// T and R over an energy grid.
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        u0: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        emin: f64,
        #[arg(long)]
        emax: f64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Grid::Log)]
        grid: Grid,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Data behind one of the four figures.
    Figure {
        #[arg(value_enum)]
        id: FigureId,
        /// Overrides the figure's default number of grid points.
        #[arg(long)]
        points: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cutoff-regularized Numerov transmission for a ladder of cutoff radii.
    Oracle {
        #[arg(long, allow_negative_numbers = true)]
        u0: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        epsilon: f64,
        /// Strictly decreasing, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_DELTAS)]
        deltas: Vec<f64>,
    },
    /// Invariant suites of every module.
    Selftest,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Grid {
    Linear,
    Log,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct SweepRequest {
    spec: PotentialSpec,
    e_min: f64,
    e_max: f64,
    points: usize,
    grid: Grid,
}

impl SweepRequest {
    fn new(
        spec: PotentialSpec,
        e_min: f64,
        e_max: f64,
        points: usize,
        grid: Grid,
    ) -> Result<Self, String> {
        if !(e_min > 0.0 && e_min < e_max && e_max.is_finite()) {
            return Err(format!(
                "need 0 < emin < emax, got emin = {e_min}, emax = {e_max}"
            ));
        }
        if points < 2 {
            return Err(format!("need at least 2 points, got {points}"));
        }
        Ok(Self {
            spec,
            e_min,
            e_max,
            points,
            grid,
        })
    }

    fn energies(&self) -> Vec<f64> {
        grid_points(self.e_min, self.e_max, self.points, self.grid)
    }
}

fn grid_points(lo: f64, hi: f64, n: usize, grid: Grid) -> Vec<f64> {
    let last = (n - 1) as f64;
    let lerp = |a: f64, b: f64, i: usize| (a * (last - i as f64) + b * i as f64) / last;
    (0..n)
        .map(|i| match i {
            0 => lo,
            _ if i + 1 == n => hi,
            _ => match grid {
                Grid::Linear => lerp(lo, hi, i),
                Grid::Log => lerp(lo.ln(), hi.ln(), i).exp(),
            },
        })
        .collect()
}

enum Failure {
    ClosedPipe,
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::ClosedPipe;
        }
        Failure::Numeric(format!("write failed: {e}"))
    }
}

fn spec(u0: f64, alpha: f64) -> Result<PotentialSpec, Failure> {
    Ok(PotentialSpec::new(u0, alpha)?)
}

fn evaluate(spec: PotentialSpec, epsilon: f64) -> Row {
    Row::from_result(epsilon, transmission_any(spec, epsilon))
}

fn sweep_rows(req: &SweepRequest) -> Vec<Row> {
    req.energies()
        .into_par_iter()
        .map(|e| evaluate(req.spec, e))
        .collect()
}

fn exit_for_rows<'a>(rows: impl IntoIterator<Item = &'a Row>) -> u8 {
    if rows.into_iter().any(Row::is_error) {
        EXIT_NUMERIC
    } else {
        0
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Failure> {
    let code = match cli.command {
        Command::Point { u0, alpha, epsilon } => {
            let spec = spec(u0, alpha)?;
            let regime = spec.regime()?;
            let r = transmission_any(spec, epsilon)?;
            let fmt = |v: Option<f64>| v.map(output::float).unwrap_or_else(|| "NA".to_string());
            writeln!(
                out,
                "epsilon={} T={} R={} status={} regime={regime}",
                output::float(epsilon),
                fmt(r.t),
                fmt(r.r),
                r.status
            )?;
            if r.status == Status::Undetermined {
                EXIT_UNDETERMINED
            } else {
                0
            }
        }
        Command::Sweep {
            u0,
            alpha,
            emin,
            emax,
            points,
            grid,
            out: o,
        } => {
            let req = SweepRequest::new(spec(u0, alpha)?, emin, emax, points, grid)
                .map_err(Failure::Usage)?;
            let rows = sweep_rows(&req);
            output::write_rows(out, o.format, "epsilon", &rows)?;
            exit_for_rows(&rows)
        }
        Command::Figure { id, points, out: o } => figure(out, id, points, o.format)?,
        Command::Oracle {
            u0,
            alpha,
            epsilon,
            deltas,
        } => {
            oracle::check_ladder(&deltas)?;
            let ts = oracle::cutoff_sweep(u0, alpha, epsilon, &deltas)?;
            writeln!(out, "delta,T")?;
            for (d, t) in ts {
                writeln!(out, "{},{}", output::float(d), output::float(t))?;
            }
            0
        }
        Command::Selftest => {
            let mut ok = true;
            for report in selftest::run_all() {
                let pass = report.passed();
                ok &= pass;
                writeln!(
                    out,
                    "{} {}",
                    report.name,
                    if pass { "PASS" } else { "FAIL" }
                )?;
                for c in report.checks.iter().filter(|c| !c.passed) {
                    eprintln!("{}: {} failed: {}", report.name, c.name, c.detail);
                }
            }
            if ok {
                0
            } else {
                EXIT_NUMERIC
            }
        }
    };
    out.flush()?;
    Ok(code)
}

fn figure(
    out: &mut impl Write,
    id: FigureId,
    points: Option<usize>,
    format: Format,
) -> Result<u8, Failure> {
    let alpha = 0.25;
    match id {
        FigureId::Fig1 | FigureId::Fig2 => {
            let u0 = if id == FigureId::Fig1 { 1.0 } else { -1.0 };
            let req = SweepRequest::new(
                spec(u0, alpha)?,
                1e-6,
                1e2,
                points.unwrap_or(500),
                Grid::Log,
            )
            .map_err(Failure::Usage)?;
            let rows = sweep_rows(&req);
            output::write_rows(out, format, "epsilon", &rows)?;
            Ok(exit_for_rows(&rows))
        }
        FigureId::Fig3 => {
            let n = points.unwrap_or(501);
            if n < 2 {
                return Err(Failure::Usage(format!("need at least 2 points, got {n}")));
            }
            let rows: Vec<Row> = grid_points(-5.0, 5.0, n, Grid::Linear)
                .into_par_iter()
                .map(|u0| {
                    let r = PotentialSpec::new(u0, alpha).and_then(|s| transmission_any(s, 1.0));
                    Row::from_result(u0, r)
                })
                .collect();
            output::write_rows(out, format, "u0", &rows)?;
            Ok(exit_for_rows(&rows))
        }
        FigureId::Fig4 => {
            let n = points.unwrap_or(4000);
            let mut series = Vec::new();
            for (tag, u0) in [("u0=1", 1.0), ("u0=-1", -1.0)] {
                let req = SweepRequest::new(spec(u0, 1.0)?, 1e-4, 1e2, n, Grid::Log)
                    .map_err(Failure::Usage)?;
                series.push((tag, sweep_rows(&req)));
            }
            output::write_series(out, format, &series)?;
            Ok(exit_for_rows(series.iter().flat_map(|(_, rows)| rows)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::ClosedPipe) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_NUMERIC)
        }
    }
}
