use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use sphdesign::cardbounds::strength_of;
use sphdesign::tolerance::{D1_GRID_POINTS, D1_MIN_GRID_POINTS};
use sphdesign::{PotentialSpec, ReportOptions};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// A single cardinality or an inclusive integer range `a..b`.
#[derive(Debug, Clone, PartialEq)]
pub enum Cardinalities {
    Single(f64),
    Range(u64, u64),
}

impl Cardinalities {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Cardinalities::Single(m) => vec![m],
            Cardinalities::Range(a, b) => (a..=b).map(|m| m as f64).collect(),
        }
    }
}

impl FromStr for Cardinalities {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some((a, b)) = s.split_once("..") {
            let a: u64 = a
                .trim()
                .parse()
                .map_err(|_| format!("bad range start in {s:?}"))?;
            let b: u64 = b
                .trim()
                .parse()
                .map_err(|_| format!("bad range end in {s:?}"))?;
            if a > b {
                return Err(format!("empty range {s:?}"));
            }
            return Ok(Cardinalities::Range(a, b));
        }
        let m: f64 = s
            .trim()
            .parse()
            .map_err(|_| format!("bad cardinality {s:?}"))?;
        if !m.is_finite() {
            return Err(format!("bad cardinality {s:?}"));
        }
        Ok(Cardinalities::Single(m))
    }
}

fn parse_grid(s: &str) -> Result<usize, String> {
    let g: usize = s.parse().map_err(|_| format!("bad grid size {s:?}"))?;
    if g < D1_MIN_GRID_POINTS {
        return Err(format!(
            "grid must have at least {D1_MIN_GRID_POINTS} points"
        ));
    }
    Ok(g)
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Dimension of the ambient space.
    #[arg(long)]
    pub n: u32,
    /// Cardinality, or an inclusive range such as 22..28.
    #[arg(long = "M")]
    pub m: Cardinalities,
    /// Potential: newton, riesz:<s> or poly:<c0>,<c1>,...
    #[arg(long, default_value = "newton")]
    pub potential: PotentialSpec,
    /// Upper bound on the largest inner product; required for strengths other than 2 and 4.
    #[arg(long)]
    pub u: Option<f64>,
    /// Expected strength; rejected if it differs from the strength implied by M.
    #[arg(long)]
    pub tau: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Points in the D1 certification grid.
    #[arg(long, default_value_t = D1_GRID_POINTS, value_parser = parse_grid)]
    pub grid: usize,
    /// Report energies divided by M^2 (csv and pretty output).
    #[arg(long)]
    pub per_m2: bool,
}

/// A validated `bounds` request.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: u32,
    pub cardinalities: Vec<f64>,
    pub potential: PotentialSpec,
    pub options: ReportOptions,
    pub format: Format,
    pub per_m2: bool,
}

impl RunConfig {
    pub fn from_args(args: BoundsArgs) -> Result<Self, Failure> {
        let cardinalities = args.m.values();
        let strengths = cardinalities
            .iter()
            .map(|&m| strength_of(args.n, m))
            .collect::<Result<Vec<_>, _>>()?;
        if strengths.windows(2).any(|w| w[0] != w[1]) {
            return Err(Failure::usage(anyhow::anyhow!(
                "M range spans several strengths ({}..{})",
                strengths[0],
                strengths[strengths.len() - 1]
            )));
        }
        if let Some(tau) = args.tau {
            if tau != strengths[0] {
                return Err(sphdesign::Error::StrengthMismatch {
                    requested: tau,
                    actual: strengths[0],
                    m: cardinalities[0],
                }
                .into());
            }
        }
        args.potential.resolve(args.n)?;
        Ok(Self {
            n: args.n,
            cardinalities,
            potential: args.potential,
            options: ReportOptions {
                u_override: args.u,
                grid_points: args.grid,
            },
            format: args.format,
            per_m2: args.per_m2,
        })
    }
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Table2Args {
    /// Plain-text file of "n M u" lines supplying u per row.
    #[arg(long)]
    pub u_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Figure1Args {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Report energies divided by M^2.
    #[arg(long)]
    pub per_m2: bool,
}

#[derive(Debug, Args)]
pub struct QuadratureArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long = "M")]
    pub m: f64,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Restrict to one suite: endpoints, quadrature, representation, collapse or tau2.
    #[arg(long)]
    pub suite: Option<String>,
    /// Seed for the evaluation order of cases; results do not depend on it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality_parsing() {
        assert_eq!(
            "10".parse::<Cardinalities>().unwrap(),
            Cardinalities::Single(10.0)
        );
        assert_eq!(
            "22..28".parse::<Cardinalities>().unwrap(),
            Cardinalities::Range(22, 28)
        );
        assert_eq!(
            Cardinalities::Range(22, 24).values(),
            vec![22.0, 23.0, 24.0]
        );
        assert!("28..22".parse::<Cardinalities>().is_err());
        assert!("x".parse::<Cardinalities>().is_err());
        assert!("inf".parse::<Cardinalities>().is_err());
    }

    #[test]
    fn grid_minimum() {
        assert!(parse_grid("1000").is_err());
        assert_eq!(parse_grid("1001").unwrap(), 1001);
    }
}
