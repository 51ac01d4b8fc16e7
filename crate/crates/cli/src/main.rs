use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "rpd",
    version,
    about = "Build and verify small triangulations of RP^d"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the cs sphere tower up to `--dim` and write its quotient.
    Build {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also write the full tower with certificates.
        #[arg(long)]
        tower: Option<PathBuf>,
        #[arg(long, default_value_t = 7)]
        max_dim: usize,
    },
    /// Run checks on a complex file or tower file.
    Verify {
        path: PathBuf,
        /// Comma-separated subset of cs,4cycle,pm,links,hz,hgf2,cert.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<Check>>,
        /// Top dimension for integral homology (overrides RPD_ZMAX).
        #[arg(long)]
        zmax: Option<usize>,
        /// Expected homology type; by default a file declaring
        /// `sigma antipodal` is expected to be a sphere, otherwise RP^d.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Write the barycentric-subdivision RP^d on 2^(d+1)-1 vertices.
    Kuhnel {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the lower bound, our vertex count and the Kühnel vertex count.
    Compare {
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Cs,
    #[value(name = "4cycle")]
    FourCycle,
    Pm,
    Links,
    Hz,
    Hgf2,
    Cert,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Sphere,
    Rp,
    None,
}

fn zmax_from_env() -> anyhow::Result<Option<usize>> {
    match std::env::var("RPD_ZMAX") {
        Ok(v) => {
            Ok(Some(v.parse().with_context(|| {
                format!("RPD_ZMAX={v:?} is not a number")
            })?))
        }
        Err(_) => Ok(None),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build {
            dim,
            out,
            tower,
            max_dim,
        } => commands::build(dim, &out, tower.as_deref(), max_dim),
        Command::Verify {
            path,
            checks,
            zmax,
            expect,
        } => zmax_from_env().and_then(|env| {
            commands::verify(
                &path,
                checks.as_deref(),
                zmax.or(env).unwrap_or(rpd_core::homology::DEFAULT_Z_CAP),
                expect,
            )
        }),
        Command::Kuhnel { dim, out } => commands::kuhnel(dim, &out),
        Command::Compare { dim } => commands::compare(dim),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let malformed = e
                .downcast_ref::<rpd_core::Error>()
                .is_some_and(|e| matches!(e, rpd_core::Error::Parse { .. }));
            ExitCode::from(if malformed { 2 } else { 1 })
        }
    }
}
