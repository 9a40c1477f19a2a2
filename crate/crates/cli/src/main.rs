//! `zyklus`: batch front end for species, Pólya counting, recurrences,
//! differential operators and power series.

mod commands;
mod error;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CountColumns, GroupTask, RecurrenceTask};
use error::CliError;
use report::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "zyklus", version, about = "Exact enumeration with species, cycle indices and power series")]
struct Cli {
    /// Truncation order N.
    #[arg(short = 'n', long, global = true, default_value_t = 10)]
    order: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Root-finding tolerance for closed forms.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Columns {
    /// Show only labelled counts.
    #[arg(long)]
    labelled: bool,
    /// Show only unlabelled counts.
    #[arg(long)]
    unlabelled: bool,
    /// Also print the cycle index.
    #[arg(long)]
    cycle_index: bool,
}

impl From<&Columns> for CountColumns {
    fn from(c: &Columns) -> Self {
        CountColumns { labelled: c.labelled, unlabelled: c.unlabelled, cycle_index: c.cycle_index }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count a species given by definitions (inline text or a file path).
    Species {
        defs: String,
        /// Name or expression to evaluate; defaults to the trailing expression
        /// or the last definition.
        target: Option<String>,
        #[command(flatten)]
        columns: Columns,
    },
    /// Pólya counting.
    Polya {
        #[command(subcommand)]
        task: PolyaTask,
    },
    /// Linear recurrence given as JSON `{"coeffs": [...], "initials": [...]}`.
    Recurrence {
        json: String,
        #[command(subcommand)]
        task: RecurrenceCmd,
    },
    /// Apply a differential operator (d, d^k, xd, xd^k, shift, delta, id,
    /// hammond:<atom>, optional @Nt) to a species.
    Diffop {
        op: String,
        defs: String,
        target: Option<String>,
        /// Default t-weight bound for operators without @Nt.
        #[arg(long)]
        nt: Option<usize>,
        #[command(flatten)]
        columns: Columns,
    },
    /// Power series operations on comma-separated rational coefficients.
    Series {
        /// add, sub, mul, compose, invert, exp, log, derivative, integral,
        /// ode, lagrange, pow or valuation.
        op: String,
        a: String,
        b: Option<String>,
        /// Exponent q/r for `pow`.
        #[arg(long, allow_hyphen_values = true)]
        power: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum PolyaTask {
    /// Necklaces of n beads in k colours up to rotation and reflection.
    Necklace {
        n: usize,
        k: usize,
        /// Identify rotations only.
        #[arg(long)]
        rotations: bool,
    },
    /// Simple graphs on n vertices up to isomorphism.
    Graphs {
        n: usize,
        #[arg(long)]
        cycle_index: bool,
    },
    /// A permutation group given by name (symmetric:n, cyclic:n, dihedral:n,
    /// trivial:n) or by generators in cycle notation, e.g. "(1 2 3), (1 2)".
    Group {
        spec: String,
        #[arg(long)]
        degree: Option<usize>,
        #[command(subcommand)]
        task: GroupCmd,
    },
}

#[derive(Debug, Subcommand)]
enum GroupCmd {
    Colorings {
        k: usize,
    },
    Inventory {
        k: usize,
        /// Comma-separated colour names.
        #[arg(long, value_delimiter = ',')]
        colors: Option<Vec<String>>,
    },
    CycleIndex,
}

#[derive(Debug, Subcommand)]
enum RecurrenceCmd {
    Terms { m: usize },
    Gf,
    Closed,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let n = cli.order;
    match &cli.command {
        Command::Species { defs, target, columns } => commands::species(defs, target.as_deref(), n, columns.into()),
        Command::Polya { task } => match task {
            PolyaTask::Necklace { n: beads, k, rotations } => commands::necklace(*beads, *k, *rotations, n),
            PolyaTask::Graphs { n: vertices, cycle_index } => commands::graphs(*vertices, n, *cycle_index),
            PolyaTask::Group { spec, degree, task } => {
                let task = match task {
                    GroupCmd::Colorings { k } => GroupTask::Colorings(*k),
                    GroupCmd::Inventory { k, colors } => GroupTask::Inventory { k: *k, colours: colors.clone() },
                    GroupCmd::CycleIndex => GroupTask::CycleIndex,
                };
                commands::group(spec, *degree, task, n)
            }
        },
        Command::Recurrence { json, task } => {
            let task = match task {
                RecurrenceCmd::Terms { m } => RecurrenceTask::Terms(*m),
                RecurrenceCmd::Gf => RecurrenceTask::Gf,
                RecurrenceCmd::Closed => RecurrenceTask::Closed,
            };
            commands::recurrence(json, task, n, cli.tolerance)
        }
        Command::Diffop { op, defs, target, nt, columns } => {
            commands::diffop(op, defs, target.as_deref(), n, nt.unwrap_or(n), columns.into())
        }
        Command::Series { op, a, b, power } => commands::series(op, a, b.as_deref(), power.as_deref(), n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(report.render(cli.format).as_bytes()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
