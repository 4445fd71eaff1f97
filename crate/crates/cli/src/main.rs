//! `cables`: exact cable-algebra computations and verification suites.
//!
//! Exit codes: 0 when all checks pass, 1 on a verification failure or
//! computation error, 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cable_cli::json::{cable_to_json, poly_to_json};
use cable_cli::report::RunReport;
use cable_cli::verify::{self, Profile};
use cable_core::dim5::{predicted_dim, Dim5Context};
use cable_core::omega::{DeltaBasis, OmegaContext, DEFAULT_MAX_INDEX};
use cable_core::poly::{format_text, Bigrade};
use cable_core::roberts::RobertsContext;

#[derive(Parser)]
#[command(
    name = "cables",
    version,
    about = "Exact cable-algebra computations for locally nilpotent derivations"
)]
struct Cli {
    /// Truncation bound for the omega ring (x0..xN).
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_INDEX)]
    max_index: usize,

    /// Write the JSON report here instead of rendering text to stderr.
    #[arg(long, global = true)]
    report_file: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Print sigma_0..sigma_N; optionally run the cable invariant suite.
    Sigma {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        verify: bool,
    },
    /// Table of computed vs predicted kernel dimensions at the sigma grades.
    Dims {
        #[arg(long)]
        n_max: usize,
    },
    /// Omega-ring operations.
    Omega {
        #[command(subcommand)]
        cmd: OmegaCmd,
    },
    /// Roberts' dimension-seven operations.
    Roberts {
        #[command(subcommand)]
        cmd: RobertsCmd,
    },
    /// Run the full verification suite.
    VerifyAll {
        #[arg(long, value_enum, default_value = "quick")]
        profile: ProfileArg,
    },
}

#[derive(Subcommand)]
enum OmegaCmd {
    /// Print a quadratic basis vertex.
    Basis {
        #[arg(long, value_enum)]
        kind: BasisKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the first `len` vertices of the reduced basis cable.
    Reduce {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        len: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dimension of the graded piece modulo the fundamental Q-ideal slice.
    Qdim {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
    },
    /// Print the quadratic kernel basis of the t-extension at weight n.
    Vn {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisKind {
    Balanced,
    Small,
}

#[derive(Subcommand)]
enum RobertsCmd {
    /// Print the P-cable prefix P_0..P_N.
    P {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print H_2 and its cyclic orbit with annihilation status.
    Orbit,
    /// Run the dimension-seven verification suite.
    Verify,
}

fn emit_report(report: &RunReport, report_file: Option<&PathBuf>) -> std::io::Result<()> {
    match report_file {
        Some(path) => std::fs::write(path, serde_json::to_string_pretty(&report.render_json())?),
        None => {
            eprint!("{}", report.render_text());
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, cable_core::Error> {
    match cli.command {
        Command::Sigma { n, format, verify } => {
            let mut ctx = Dim5Context::new()?;
            ctx.ensure_sigma(n)?;
            match format {
                Format::Text => {
                    for i in 0..=n {
                        println!("{}", format_text(ctx.sigma(i)?));
                    }
                }
                Format::Json => {
                    let cable = ctx.sigma_cable(n)?;
                    println!("{}", cable_to_json(&cable));
                }
            }
            if verify {
                let mut report = RunReport::new(format!("sigma --n {n} --verify"));
                verify::sigma_suite_on(&mut ctx, &mut report, 0, n);
                emit_report(&report, cli.report_file.as_ref()).ok();
                return Ok(report.all_passed());
            }
            Ok(true)
        }
        Command::Dims { n_max } => {
            let ctx = Dim5Context::new()?;
            let mut ok = true;
            println!("# n computed predicted");
            for n in 0..=n_max {
                let got = ctx.dim_a(2 * n as i64 + 1, n as i64)?;
                let want = predicted_dim(n);
                ok &= got == want;
                println!("{n} {got} {want}");
            }
            Ok(ok)
        }
        Command::Omega { cmd } => {
            let om = OmegaContext::new(cli.max_index)?;
            match cmd {
                OmegaCmd::Basis { kind, n, j, format } => {
                    let basis = match kind {
                        BasisKind::Balanced => DeltaBasis::Balanced,
                        BasisKind::Small => DeltaBasis::Small,
                    };
                    let vertex = om.vertex(&basis, n, j)?;
                    match format {
                        Format::Text => println!("{}", format_text(&vertex)),
                        Format::Json => println!("{}", poly_to_json(&vertex)),
                    }
                }
                OmegaCmd::Reduce { n, len, format } => {
                    if len == 0 {
                        return Err(cable_core::Error::InvalidArgument(
                            "--len must be at least 1".into(),
                        ));
                    }
                    let cable = om.reduce_basis(n, len - 1)?;
                    for e in cable.elements() {
                        match format {
                            Format::Text => println!("{}", format_text(e)),
                            Format::Json => println!("{}", poly_to_json(e)),
                        }
                    }
                }
                OmegaCmd::Qdim { q, r, s } => {
                    let total = om.dim_omega(Bigrade::new(r, s))?;
                    let slice = om
                        .q_ideal_slice(q, Bigrade::new(r, s), &DeltaBasis::Balanced)?
                        .dim();
                    println!("{}", total - slice);
                }
                OmegaCmd::Vn { n } => {
                    for p in om.vn_basis(n)? {
                        println!("{}", format_text(&p));
                    }
                }
            }
            Ok(true)
        }
        Command::Roberts { cmd } => match cmd {
            RobertsCmd::P { n, format } => {
                let mut ctx = RobertsContext::new(2)?;
                let cable = ctx.p_cable(n)?;
                match format {
                    Format::Text => {
                        for e in cable.elements() {
                            println!("{}", format_text(e));
                        }
                    }
                    Format::Json => println!("{}", cable_to_json(&cable)),
                }
                Ok(true)
            }
            RobertsCmd::Orbit => {
                let ctx = RobertsContext::new(2)?;
                let labels = ["H2", "alpha(H2)", "alpha^2(H2)"];
                let mut ok = true;
                for (label, h) in labels.iter().zip(ctx.h_orbit()?) {
                    let killed = ctx.derivation().apply(&h)?.is_zero();
                    ok &= killed;
                    println!(
                        "{label} = {} [annihilated: {}]",
                        format_text(&h),
                        if killed { "yes" } else { "no" }
                    );
                }
                Ok(ok)
            }
            RobertsCmd::Verify => {
                let mut report = RunReport::new("roberts verify");
                let profile = Profile::full();
                verify::criterion_roberts(&mut report, &profile);
                verify::criterion_covariant_spots(&mut report);
                emit_report(&report, cli.report_file.as_ref()).ok();
                Ok(report.all_passed())
            }
        },
        Command::VerifyAll { profile } => {
            let profile = match profile {
                ProfileArg::Quick => Profile::quick(),
                ProfileArg::Full => Profile::full(),
            };
            let report = verify::run_all(&profile);
            emit_report(&report, cli.report_file.as_ref()).ok();
            Ok(report.all_passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
