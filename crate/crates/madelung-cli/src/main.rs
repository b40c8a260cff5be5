//! `madelung` — N-dimensional Madelung constants from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 convergence failure.

mod output;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use madelung::series::{Evaluator, MadelungQuery, Method};
use madelung::squares::RepTable;
use madelung::{cusp, Error};
use output::{Field, Kind, OutputRecord};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "madelung", version, about = "N-dimensional Madelung constants M_N(s)")]
struct Cli {
    /// Output format for data commands
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write output to a file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Direct,
    Recursive,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Direct => Method::Direct,
            MethodArg::Recursive => Method::Recursive,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute a single Madelung constant M_N(s)
    Compute {
        #[arg(short = 'N', value_parser = clap::value_parser!(u32).range(1..))]
        dimension: u32,
        #[arg(short = 's', allow_negative_numbers = true)]
        exponent: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Remainder target for the truncated series
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
    },
    /// Regenerate the published tables
    Table {
        #[command(subcommand)]
        which: TableKind,
    },
    /// Emit the raw convergence terms a(m), b(2m) (direct) or d(m) (recursive)
    Trace {
        #[arg(short = 'N', value_parser = clap::value_parser!(u32).range(1..))]
        dimension: u32,
        #[arg(short = 's', allow_negative_numbers = true)]
        exponent: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
    },
    /// Run a verification suite; exits 1 if any check fails
    Verify {
        #[arg(value_parser = ["all", "squares", "zucker", "cusp", "continuation"], default_value = "all")]
        suite: String,
    },
    /// Dump a representation-count column r_N(m) as CSV
    DumpR {
        #[arg(short = 'N', value_parser = clap::value_parser!(u32).range(1..))]
        dimension: u32,
        #[arg(long, default_value_t = 100)]
        m_max: u64,
    },
    /// Dump the cusp-form coefficients e_12(n) as CSV
    DumpE12 {
        #[arg(long, default_value_t = 200)]
        n_max: u64,
    },
}

#[derive(Subcommand)]
enum TableKind {
    /// Madelung constants: the four-column table for N ≤ 20, or a single
    /// exponent via -s for N up to 100
    Madelung {
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=100))]
        n_max: u32,
        /// Restrict to one exponent (allows n-max up to 100)
        #[arg(short = 's', allow_negative_numbers = true)]
        exponent: Option<f64>,
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
    },
    /// Coefficients c_{1/2}(m) and counts r_2 … r_10: the published rows by
    /// default, or m = 1..=m-max
    Coefficients {
        #[arg(long)]
        m_max: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Convergence { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> madelung::Result<ExitCode> {
    match &cli.command {
        Command::Compute {
            dimension,
            exponent,
            method,
            tol,
        } => {
            let query = MadelungQuery::new(*dimension, *exponent)
                .with_method((*method).into())
                .with_target_remainder(*tol);
            let v = madelung::madelung(&query)?;
            let record = OutputRecord {
                kind: Kind::Value,
                fields: vec![
                    ("N", Field::Int(*dimension as i64)),
                    ("s", Field::Num(*exponent)),
                    ("value", Field::Num(v.value)),
                    ("m_max_used", Field::Int(v.m_max_used as i64)),
                    ("remainder_estimate", Field::Num(v.remainder_estimate)),
                    ("method_used", Field::Text(v.method_used.to_string())),
                ],
            };
            emit(cli, &[record], None)?;
        }
        Command::Table { which } => match which {
            TableKind::Madelung {
                n_max,
                exponent,
                tol,
            } => {
                let records = table_madelung(*n_max, *exponent, *tol)?;
                emit(cli, &records, None)?;
            }
            TableKind::Coefficients { m_max } => {
                let records = table_coefficients(*m_max);
                let header = ["m", "c_half", "r_2", "r_3", "r_4", "r_6", "r_8", "r_10"];
                emit(cli, &records, Some(&header))?;
            }
        },
        Command::Trace {
            dimension,
            exponent,
            method,
            tol,
        } => {
            let query = MadelungQuery::new(*dimension, *exponent)
                .with_method((*method).into())
                .with_target_remainder(*tol);
            let trace = madelung::convergence_trace(&query)?;
            let mut records = Vec::new();
            if !trace.terms_a.is_empty() {
                for (i, &a) in trace.terms_a.iter().enumerate() {
                    let m = i as i64 + 1;
                    let b = if m % 2 == 0 {
                        Field::Num(trace.terms_paired[(m as usize - 1) / 2])
                    } else {
                        Field::Empty
                    };
                    records.push(OutputRecord {
                        kind: Kind::TracePoint,
                        fields: vec![
                            ("m", Field::Int(m)),
                            ("a", Field::Num(a)),
                            ("b_pair", b),
                            ("d", Field::Empty),
                        ],
                    });
                }
            } else {
                for (m, &d) in trace.terms_d.iter().enumerate() {
                    records.push(OutputRecord {
                        kind: Kind::TracePoint,
                        fields: vec![
                            ("m", Field::Int(m as i64)),
                            ("a", Field::Empty),
                            ("b_pair", Field::Empty),
                            ("d", Field::Num(d)),
                        ],
                    });
                }
            }
            emit(cli, &records, None)?;
        }
        Command::Verify { suite } => {
            let report = verify::run(suite);
            return Ok(if report.failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::DumpR { dimension, m_max } => {
            let mut table = RepTable::new();
            table.ensure(*dimension as usize, *m_max as usize);
            let records: Vec<OutputRecord> = (0..=*m_max)
                .map(|m| OutputRecord {
                    kind: Kind::TableRow,
                    fields: vec![
                        ("m", Field::Int(m as i64)),
                        (
                            "r_N(m)",
                            Field::Count(table.get(*dimension as usize, m as usize).to_string()),
                        ),
                    ],
                })
                .collect();
            emit(cli, &records, None)?;
        }
        Command::DumpE12 { n_max } => {
            let expansion = cusp::CuspExpansion::new(*n_max as usize);
            let records: Vec<OutputRecord> = (1..=*n_max)
                .map(|n| OutputRecord {
                    kind: Kind::TableRow,
                    fields: vec![
                        ("n", Field::Int(n as i64)),
                        (
                            "e_12(n)",
                            Field::Count(expansion.e12(n as usize).unwrap().to_string()),
                        ),
                    ],
                })
                .collect();
            emit(cli, &records, None)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn table_madelung(n_max: u32, exponent: Option<f64>, tol: f64) -> madelung::Result<Vec<OutputRecord>> {
    let mut ev = Evaluator::new();
    if let Some(s) = exponent {
        let sweep = ev.sweep_recursive(
            &MadelungQuery::new(n_max, s)
                .with_method(Method::Recursive)
                .with_target_remainder(tol),
        )?;
        return Ok(sweep
            .iter()
            .enumerate()
            .map(|(i, v)| OutputRecord {
                kind: Kind::TableRow,
                fields: vec![
                    ("N", Field::Int(i as i64 + 1)),
                    ("M", Field::Num(v.value)),
                ],
            })
            .collect());
    }
    if n_max > 20 {
        return Err(Error::Domain(
            "the four-column table is supported for N ≤ 20; pass -s to go higher".into(),
        ));
    }
    let exponents = [0.5, 1.5, 3.0, 6.0];
    let mut columns = Vec::new();
    for &s in &exponents {
        let sweep = ev.sweep_recursive(
            &MadelungQuery::new(n_max, s)
                .with_method(Method::Recursive)
                .with_target_remainder(tol),
        )?;
        columns.push(sweep);
    }
    // the m_max column reports the direct-method cutoff at s = 1/2
    let mut records = Vec::new();
    for n in 1..=n_max {
        let direct = ev.compute(
            &MadelungQuery::new(n, 0.5)
                .with_method(Method::Direct)
                .with_target_remainder(tol),
        )?;
        records.push(OutputRecord {
            kind: Kind::TableRow,
            fields: vec![
                ("N", Field::Int(n as i64)),
                ("m_max", Field::Int(direct.m_max_used as i64)),
                ("M_half", Field::Num(columns[0][(n - 1) as usize].value)),
                ("M_3half", Field::Num(columns[1][(n - 1) as usize].value)),
                ("M_3", Field::Num(columns[2][(n - 1) as usize].value)),
                ("M_6", Field::Num(columns[3][(n - 1) as usize].value)),
            ],
        });
    }
    Ok(records)
}

fn table_coefficients(m_max: Option<u64>) -> Vec<OutputRecord> {
    const PUBLISHED_M: [u64; 29] = [
        1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 40, 60, 80, 100,
        120, 140, 160, 180, 200,
    ];
    let rows: Vec<u64> = match m_max {
        Some(m) => (1..=m).collect(),
        None => PUBLISHED_M.to_vec(),
    };
    let mut table = RepTable::new();
    if let Some(&largest) = rows.last() {
        table.ensure(10, largest as usize);
    }
    rows.iter()
        .map(|&m| {
            let mut fields = vec![
                ("m", Field::Int(m as i64)),
                ("c_half", Field::Num(madelung::series::coefficient_direct(0.5, m))),
            ];
            for &(name, dim) in &[
                ("r_2", 2usize),
                ("r_3", 3),
                ("r_4", 4),
                ("r_6", 6),
                ("r_8", 8),
                ("r_10", 10),
            ] {
                fields.push((name, Field::Count(table.get(dim, m as usize).to_string())));
            }
            OutputRecord {
                kind: Kind::TableRow,
                fields,
            }
        })
        .collect()
}

fn emit(cli: &Cli, records: &[OutputRecord], header: Option<&[&str]>) -> madelung::Result<()> {
    let write_to = |out: &mut dyn Write| -> std::io::Result<()> {
        match cli.format {
            Format::Csv => match header {
                Some(h) => output::write_csv_with_header(out, h, records),
                None => output::write_csv(out, records),
            },
            Format::Json => output::write_json(out, records),
        }
    };
    let result = match &cli.out {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| Error::Domain(format!("cannot create {}: {e}", path.display())))?;
            write_to(&mut file)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_to(&mut lock)
        }
    };
    result.map_err(|e| Error::Domain(format!("write failed: {e}")))
}
