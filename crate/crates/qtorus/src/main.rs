use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use qtorus::run::{self, Command as RunCommand, Invocation, RunError};

#[derive(Parser)]
#[command(
    name = "qtorus",
    about = "Certified norm, seminorm, connection, and bridge computations \
             on quantum tori",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Fixture file describing the algebra and task payload.
    #[arg(long, global = true)]
    fixture: Option<PathBuf>,
    /// Truncation radius override.
    #[arg(long, global = true)]
    radius: Option<i32>,
    /// Tolerance override (engine and check tolerance).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Direction norm override.
    #[arg(long, global = true, value_enum)]
    norm: Option<NormArg>,
    /// Seed override for every deterministic search.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Text)]
    output: OutputArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    L1,
    L2,
    Linf,
}

impl NormArg {
    fn as_str(&self) -> &'static str {
        match self {
            NormArg::L1 => "l1",
            NormArg::L2 => "l2",
            NormArg::Linf => "linf",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputArg {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structural identity battery on random instances.
    Algebra {
        #[command(subcommand)]
        sub: AlgebraSub,
    },
    /// Certified norm interval of the fixture element.
    Norm,
    /// Metric construction and positivity screening.
    Metric {
        #[command(subcommand)]
        sub: MetricSub,
    },
    /// Metric inversion and Christoffel data.
    Connection {
        #[command(subcommand)]
        sub: ConnectionSub,
    },
    /// Lipschitz and D-norm estimates.
    Seminorm {
        #[command(subcommand)]
        sub: SeminormSub,
    },
    /// Sound-mode inequality checks.
    Inequality {
        #[command(subcommand)]
        sub: InequalitySub,
    },
    /// Modular bridges between rescaled metrics.
    Bridge {
        #[command(subcommand)]
        sub: BridgeSub,
    },
    /// Rescaling isometry defects.
    Isometry {
        #[command(subcommand)]
        sub: IsometrySub,
    },
}

#[derive(Subcommand)]
enum AlgebraSub {
    Check,
}

#[derive(Subcommand)]
enum MetricSub {
    Validate,
}

#[derive(Subcommand)]
enum ConnectionSub {
    Compute,
    Check,
}

#[derive(Subcommand)]
#[allow(clippy::upper_case_acronyms)]
enum SeminormSub {
    #[command(name = "L")]
    L,
    #[command(name = "D")]
    D,
}

#[derive(Subcommand)]
enum InequalitySub {
    #[command(name = "G")]
    G,
    #[command(name = "H")]
    H,
    Leibniz,
    Lemma45,
}

#[derive(Subcommand)]
enum BridgeSub {
    Scaling,
    Report,
}

#[derive(Subcommand)]
enum IsometrySub {
    Check,
}

fn to_run_command(cmd: &Cmd) -> RunCommand {
    match cmd {
        Cmd::Algebra {
            sub: AlgebraSub::Check,
        } => RunCommand::AlgebraCheck,
        Cmd::Norm => RunCommand::Norm,
        Cmd::Metric {
            sub: MetricSub::Validate,
        } => RunCommand::MetricValidate,
        Cmd::Connection {
            sub: ConnectionSub::Compute,
        } => RunCommand::ConnectionCompute,
        Cmd::Connection {
            sub: ConnectionSub::Check,
        } => RunCommand::ConnectionCheck,
        Cmd::Seminorm { sub: SeminormSub::L } => RunCommand::SeminormL,
        Cmd::Seminorm { sub: SeminormSub::D } => RunCommand::SeminormD,
        Cmd::Inequality {
            sub: InequalitySub::G,
        } => RunCommand::InequalityG,
        Cmd::Inequality {
            sub: InequalitySub::H,
        } => RunCommand::InequalityH,
        Cmd::Inequality {
            sub: InequalitySub::Leibniz,
        } => RunCommand::InequalityLeibniz,
        Cmd::Inequality {
            sub: InequalitySub::Lemma45,
        } => RunCommand::InequalityLemma45,
        Cmd::Bridge {
            sub: BridgeSub::Scaling,
        } => RunCommand::BridgeScaling,
        Cmd::Bridge {
            sub: BridgeSub::Report,
        } => RunCommand::BridgeReport,
        Cmd::Isometry {
            sub: IsometrySub::Check,
        } => RunCommand::IsometryCheck,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(fixture_path) = cli.fixture else {
        eprintln!("error: --fixture is required");
        return ExitCode::from(2);
    };
    let invocation = Invocation {
        command: to_run_command(&cli.command),
        fixture_path,
        radius: cli.radius,
        tol: cli.tol,
        norm: cli.norm.map(|n| n.as_str().to_owned()),
        seed: cli.seed,
    };
    let started = Instant::now();
    match run::execute(&invocation) {
        Ok(outcome) => {
            if cli.output == OutputArg::Structured {
                print!("{}", run::render_structured(&outcome));
            } else {
                print!("{}", run::render_text(&outcome));
                println!("wall time: {:.3} s", started.elapsed().as_secs_f64());
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(RunError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(RunError::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
