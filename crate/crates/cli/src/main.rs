#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod check;
mod commands;
mod config;
mod output;
mod ufile;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{BoundsArgs, CheckArgs, Figure1Args, QuadratureArgs, Table1Args, Table2Args};

/// Energy bounds for spherical designs.
#[derive(Debug, Parser)]
#[command(name = "sphdesign", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lower and upper energy bounds for one M or a range of M.
    Bounds(BoundsArgs),
    /// Newtonian energy comparison for n = 3, 4, 5 (strength 4).
    Table1(Table1Args),
    /// Newtonian energy comparison for n = 3, 4, 5 (strength 5), with user-supplied u.
    Table2(Table2Args),
    /// Data series for n = 20, M = 22..28, Newtonian potential.
    Figure1(Figure1Args),
    /// Dump the 1/M quadrature rule for (n, M) as JSON.
    Quadrature(QuadratureArgs),
    /// Run the invariant suites.
    Check(CheckArgs),
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Usage = 2,
    Construction = 3,
    CheckFailed = 4,
}

/// A failure together with the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(error: impl Into<anyhow::Error>) -> Self {
        Self {
            status: Status::Usage,
            error: error.into(),
        }
    }

    pub fn check(error: impl Into<anyhow::Error>) -> Self {
        Self {
            status: Status::CheckFailed,
            error: error.into(),
        }
    }
}

impl From<sphdesign::Error> for Failure {
    fn from(e: sphdesign::Error) -> Self {
        use sphdesign::Error as E;
        let status = match e {
            E::InvalidDimension(_)
            | E::InvalidFamily { .. }
            | E::UnsupportedDegree { .. }
            | E::InvalidStrength { .. }
            | E::StrengthMismatch { .. }
            | E::InvalidCardinality { .. }
            | E::Domain { .. }
            | E::LengthMismatch { .. }
            | E::UnsupportedDerivative { .. }
            | E::InvalidNodes
            | E::InvalidU { .. }
            | E::RequiresUserInput { .. }
            | E::OutOfRange { .. }
            | E::InvalidPointSet(_)
            | E::PotentialSyntax(_) => Status::Usage,
            E::Overflow(_)
            | E::RootIsolation { .. }
            | E::NoConvergence { .. }
            | E::RuleConstruction(_)
            | E::Degenerate(_)
            | E::D1Violation { .. }
            | E::NumericalInconsistency(_) => Status::Construction,
        };
        Self {
            status,
            error: e.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self {
            status: Status::Usage,
            error: e.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                Status::Usage as u8
            } else {
                Status::Ok as u8
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Bounds(args) => commands::bounds(args),
        Command::Table1(args) => commands::table1(args),
        Command::Table2(args) => commands::table2(args),
        Command::Figure1(args) => commands::figure1(args),
        Command::Quadrature(args) => commands::quadrature(args),
        Command::Check(args) => check::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.status as u8)
        }
    }
}
