//! `burnside`: command line access to double Burnside groups, ghost rings and fusion systems.

mod commands;
mod error;
mod literal;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{FusionArgs, Flavor};
use output::Format;

#[derive(Parser)]
#[command(name = "burnside", version, about = "Exact computations in double Burnside groups")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct FusionOpts {
    /// the p-group S
    #[arg(long)]
    group: String,
    #[arg(long)]
    prime: Option<usize>,
    /// inner, from-group:<G>, enum:<i> or file:<path>
    #[arg(long, default_value = "inner")]
    fusion: String,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog groups
    Groups,
    /// List the subgroups of a group
    Subgroups { group: String },
    /// Standard basis of B(G,H)
    Basis {
        #[arg(required = true)]
        groups: Vec<String>,
        #[arg(long, value_enum, default_value = "all")]
        system: Flavor,
    },
    /// Table of marks
    Marks {
        #[arg(required = true)]
        groups: Vec<String>,
        #[arg(long, value_enum, default_value = "all")]
        system: Flavor,
    },
    /// Mackey product: `bmul G [H K] A B`
    Bmul {
        #[arg(required = true)]
        args: Vec<String>,
        #[arg(long, value_enum, default_value = "all")]
        system: Flavor,
    },
    /// Mark homomorphism: `rho G [H] A`
    Rho {
        #[arg(required = true)]
        args: Vec<String>,
        #[arg(long, value_enum, default_value = "leftfree")]
        system: Flavor,
    },
    /// Inverse of the mark homomorphism on orbit sums: `rho-inv G [H] X`
    RhoInv {
        #[arg(required = true)]
        args: Vec<String>,
        #[arg(long, value_enum, default_value = "leftfree")]
        system: Flavor,
    },
    /// Ghost ring product of orbit sums: `ghost-mul G [H K] X Y`
    GhostMul {
        #[arg(required = true)]
        args: Vec<String>,
        #[arg(long, value_enum, default_value = "leftfree")]
        system: Flavor,
    },
    /// Homogeneous components of an element: `grading G [H] A`
    Grading {
        #[arg(required = true)]
        args: Vec<String>,
        #[arg(long, value_enum, default_value = "leftfree")]
        system: Flavor,
    },
    /// The matrix σ_T(a): `sigma G [H] A --t T`
    Sigma {
        #[arg(required = true)]
        args: Vec<String>,
        #[arg(long)]
        t: String,
        #[arg(long, value_enum, default_value = "bifree")]
        system: Flavor,
    },
    /// Blocks of σ̃(a) for a bifree element: `sigma-tilde G A`
    SigmaTilde {
        #[arg(required = true)]
        args: Vec<String>,
    },
    /// Fusion system of a group on a Sylow subgroup
    FusionFromGroup {
        group: String,
        #[arg(long)]
        prime: Option<usize>,
        /// realise the system on this catalog group instead of the Sylow subgroup itself
        #[arg(long)]
        on: Option<String>,
    },
    /// All fusion systems on a p-group
    FusionEnumerate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        prime: Option<usize>,
    },
    /// Characteristic idempotent of a fusion system
    Omega(FusionOpts),
    /// Idempotent, Frobenius and integrality verdicts for a bifree element or for ω_F
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        prime: Option<usize>,
        #[arg(long)]
        fusion: Option<String>,
        element: Option<String>,
    },
    /// Saturation axioms and per-class statistics
    Saturated(FusionOpts),
    /// Check `Fix(ω_F) = S(F)` over all fusion systems on S
    Triangle {
        #[arg(long)]
        group: String,
        #[arg(long)]
        prime: Option<usize>,
    },
}

fn fusion(o: &FusionOpts) -> FusionArgs<'_> {
    FusionArgs {
        group: &o.group,
        prime: o.prime,
        fusion: &o.fusion,
    }
}

fn run(cli: &Cli) -> commands::Out {
    match &cli.command {
        Command::Groups => commands::groups(),
        Command::Subgroups { group } => commands::subgroups(group),
        Command::Basis { groups, system } => commands::basis(groups, *system),
        Command::Marks { groups, system } => commands::marks(groups, *system),
        Command::Bmul { args, system } => commands::bmul(args, *system),
        Command::Rho { args, system } => commands::rho_cmd(args, *system),
        Command::RhoInv { args, system } => commands::rho_inv(args, *system),
        Command::GhostMul { args, system } => commands::ghost_mul(args, *system),
        Command::Grading { args, system } => commands::grading_cmd(args, *system),
        Command::Sigma { args, t, system } => commands::sigma_cmd(args, t, *system),
        Command::SigmaTilde { args } => commands::sigma_tilde_cmd(args),
        Command::FusionFromGroup { group, prime, on } => {
            commands::fusion_from_group_cmd(group, *prime, on.as_deref())
        }
        Command::FusionEnumerate { group, prime } => commands::fusion_enumerate(group, *prime),
        Command::Omega(o) => commands::omega_cmd(fusion(o)),
        Command::Classify {
            group,
            prime,
            fusion,
            element,
        } => commands::classify_cmd(group, *prime, fusion.as_deref(), element.as_deref()),
        Command::Saturated(o) => commands::saturated_cmd(fusion(o)),
        Command::Triangle { group, prime } => commands::triangle_cmd(group, *prime),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(cli.format).as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
