use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qtele::{BasisSpec, Command, OutputFormat, PsiSpec, RunConfig};
use qtele_core::transient::Frame;

/// Qudit teleportation analysis: Bell projections, weak values, partial
/// measurements and the teleportation/cloning trade-off.
#[derive(Parser)]
#[command(name = "qtele", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Qudit dimension (2..=16)
    #[arg(long, default_value_t = 2)]
    d: usize,

    /// Seed for `--psi random`
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StateArgs {
    /// Input state: basis:N, plus or random
    #[arg(long, default_value = "basis:0")]
    psi: PsiSpec,
}

#[derive(Args)]
struct BasisArgs {
    /// Basis measured on A: computational, fourier, chirp or random:SEED
    #[arg(long, default_value = "computational")]
    q_basis: BasisSpec,

    /// Basis measured on B (defaults to the A basis)
    #[arg(long)]
    p_basis: Option<BasisSpec>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Project onto each Bell outcome and check the corrected output
    Teleport {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        state: StateArgs,
        /// Restrict to one Bell outcome
        #[arg(long)]
        m: Option<usize>,
    },
    /// Projector-pair weak values of the A-B transient state
    WeakValues {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        bases: BasisArgs,
        /// Restrict to one Bell outcome
        #[arg(long)]
        m: Option<usize>,
        /// Frame of the B-side projector
        #[arg(long, value_enum, default_value = "corrected")]
        frame: FrameArg,
        /// Append row and column sums
        #[arg(long)]
        check_marginals: bool,
    },
    /// Output joint probabilities after a partial Bell measurement
    JointProbs {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        bases: BasisArgs,
        /// Measurement strength angle in [0, pi/2]
        #[arg(long, default_value_t = FRAC_PI_4)]
        theta: f64,
        /// Bell outcome
        #[arg(long, default_value_t = 0)]
        m: usize,
    },
    /// Fidelities along a theta grid
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Number of grid points, endpoints included
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, default_value_t = 0.0)]
        theta_min: f64,
        #[arg(long, default_value_t = FRAC_PI_2)]
        theta_max: f64,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FrameArg {
    Corrected,
    Raw,
}

fn config(cli: Cli) -> RunConfig {
    let make = |common: Common, psi: PsiSpec, command: Command| RunConfig {
        command,
        d: common.d,
        seed: common.seed,
        psi,
        format: common.format,
        out: common.out,
    };
    match cli.command {
        Cmd::Teleport { common, state, m } => make(common, state.psi, Command::Teleport { m }),
        Cmd::WeakValues {
            common,
            state,
            bases,
            m,
            frame,
            check_marginals,
        } => make(
            common,
            state.psi,
            Command::WeakValues {
                m,
                q_basis: bases.q_basis,
                p_basis: bases.p_basis.unwrap_or(bases.q_basis),
                frame: match frame {
                    FrameArg::Corrected => Frame::Corrected,
                    FrameArg::Raw => Frame::Raw,
                },
                check_marginals,
            },
        ),
        Cmd::JointProbs {
            common,
            state,
            bases,
            theta,
            m,
        } => make(
            common,
            state.psi,
            Command::JointProbs {
                theta,
                m,
                q_basis: bases.q_basis,
                p_basis: bases.p_basis.unwrap_or(bases.q_basis),
            },
        ),
        Cmd::Sweep {
            common,
            points,
            theta_min,
            theta_max,
        } => make(
            common,
            PsiSpec::Basis(0),
            Command::Sweep {
                points,
                theta_min,
                theta_max,
            },
        ),
    }
}

fn main() -> ExitCode {
    let config = config(Cli::parse());
    match qtele::run(&config, io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
