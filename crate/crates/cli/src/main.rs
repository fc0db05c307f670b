//! `dendcox`: command-line front end for the verification library.
//!
//! Every subcommand produces a [`report::Report`]; `--format json` prints it
//! as one JSON object, `--format text` prints its summary lines.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dendcox::arith::SequenceKind;
use dendcox::spectra::{Claim, MatrixKind, Method};
use dendcox::{Exec, Limits};

use commands::Ctx;
use report::{Report, Status};

#[derive(Parser, Debug)]
#[command(name = "dendcox", version, about = "Exact checks of Tamari and dendriform spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Refuse lattices with more elements than this.
    #[arg(long, global = true, value_name = "BOUND")]
    max_dim: Option<usize>,
    /// Largest dimension for the Berkowitz method.
    #[arg(long, global = true, value_name = "BOUND")]
    max_dim_direct: Option<usize>,
    /// Run every data-parallel loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Accepted for interface compatibility; all computations are deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Catalan,
    A,
    B,
    Bprime,
    Lambda,
}

impl From<Kind> for SequenceKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Catalan => SequenceKind::Catalan,
            Kind::A => SequenceKind::A,
            Kind::B => SequenceKind::B,
            Kind::Bprime => SequenceKind::BPrime,
            Kind::Lambda => SequenceKind::Lambda,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixArg {
    Theta,
    Tau,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Direct,
    Traces,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a sequence: catalan, a, b, bprime or lambda.
    Seq {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        upto: u64,
    },
    /// Build the Tamari lattice on `--leaves` leaves.
    Tamari {
        #[arg(long)]
        leaves: usize,
        /// Print the lattice in the export format instead of a report.
        #[arg(long, value_enum)]
        export: Option<ExportFormat>,
    },
    /// Characteristic polynomial of θ or τ.
    Charpoly {
        #[arg(long)]
        leaves: usize,
        #[arg(long, value_enum)]
        matrix: MatrixArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Verification pipelines.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Plethysm identities, the module identity and Schur sign checks.
    Symcheck {
        #[arg(long)]
        degree: usize,
    },
    /// The six Taylor expansions of the closed forms.
    Taylor {
        #[arg(long)]
        order: usize,
    },
    /// Generating-function product identities and the F_a/F_b relation.
    Series {
        #[arg(long)]
        order: usize,
    },
    /// Cyclic character of the tree module against the traces of τ^k.
    Characters {
        #[arg(long)]
        upto: u64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct RangeArgs {
    /// A single number of leaves.
    #[arg(long)]
    n: Option<usize>,
    /// Every number of leaves from 2 up to this bound.
    #[arg(long)]
    upto: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Characteristic polynomial of τ against the proved factored form.
    Theorem {
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Characteristic polynomial of θ against the conjectured factored form.
    Conjecture {
        #[command(flatten)]
        range: RangeArgs,
    },
    /// The three divisibility-class relations between `a` and `b`.
    Crux {
        #[arg(long)]
        upto: u64,
    },
    /// Squaring the conjectured θ form gives the τ form.
    Forms {
        #[arg(long)]
        upto: u64,
    },
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Seq { .. } => "seq",
        Command::Tamari { .. } => "tamari",
        Command::Charpoly { .. } => "charpoly",
        Command::Verify { what } => match what {
            VerifyCommand::Theorem { .. } => "verify theorem",
            VerifyCommand::Conjecture { .. } => "verify conjecture",
            VerifyCommand::Crux { .. } => "verify crux",
            VerifyCommand::Forms { .. } => "verify forms",
        },
        Command::Symcheck { .. } => "symcheck",
        Command::Taylor { .. } => "taylor",
        Command::Series { .. } => "series",
        Command::Characters { .. } => "characters",
    }
}

fn run(cli: &Cli) -> Result<Report, String> {
    let mut limits = Limits::default();
    if let Some(m) = cli.global.max_dim {
        limits.max_dim_traces = m;
    }
    if let Some(m) = cli.global.max_dim_direct {
        limits.max_dim_direct = m;
    }
    let exec = if cli.global.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let ctx = Ctx { limits, exec };
    match &cli.command {
        Command::Seq { kind, upto } => commands::seq((*kind).into(), *upto),
        Command::Tamari { leaves, .. } => commands::tamari(&ctx, *leaves),
        Command::Charpoly {
            leaves,
            matrix,
            method,
        } => {
            let kind = match matrix {
                MatrixArg::Theta => MatrixKind::Theta,
                MatrixArg::Tau => MatrixKind::Tau,
            };
            let methods: &[Method] = match method {
                MethodArg::Direct => &[Method::Direct],
                MethodArg::Traces => &[Method::Traces],
                MethodArg::Both => &[Method::Traces, Method::Direct],
            };
            commands::charpoly(&ctx, *leaves, kind, methods)
        }
        Command::Verify { what } => match what {
            VerifyCommand::Theorem { range } => {
                commands::verify_claim(&ctx, Claim::Theorem, range.n, range.upto)
            }
            VerifyCommand::Conjecture { range } => {
                commands::verify_claim(&ctx, Claim::Conjecture, range.n, range.upto)
            }
            VerifyCommand::Crux { upto } => commands::verify_crux(*upto),
            VerifyCommand::Forms { upto } => commands::verify_forms(*upto),
        },
        Command::Symcheck { degree } => commands::symcheck(&ctx, *degree),
        Command::Taylor { order } => commands::taylor(*order),
        Command::Series { order } => commands::series(*order),
        Command::Characters { upto } => commands::characters(&ctx, *upto),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Command::Tamari {
        leaves,
        export: Some(ExportFormat::Json),
    } = &cli.command
    {
        let ctx = Ctx {
            limits: Limits {
                max_dim_traces: cli.global.max_dim.unwrap_or(Limits::default().max_dim_traces),
                ..Limits::default()
            },
            exec: Exec::default(),
        };
        return match commands::tamari_export(&ctx, *leaves) {
            Ok(v) => {
                println!("{v}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }

    let report = run(&cli).unwrap_or_else(|e| Report::error(command_name(&cli.command), e));
    if report.status == Status::Error && cli.global.format == Format::Text {
        for l in &report.lines {
            eprintln!("{l}");
        }
    } else {
        match cli.global.format {
            Format::Json => {
                println!("{}", serde_json::to_string(&report).expect("report serializes"));
            }
            Format::Text => {
                for l in &report.lines {
                    println!("{l}");
                }
            }
        }
    }
    ExitCode::from(report.status.exit_code() as u8)
}
