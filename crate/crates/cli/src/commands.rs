use std::io::{self, Write};

use anyhow::Context;
use rayon::prelude::*;
use serde::Serialize;
use sphdesign::potentials::newtonian;
use sphdesign::report::SCHEMA_VERSION;
use sphdesign::{full_report, rule_for, BoundReport, Potential, ReportOptions};

use crate::config::{
    BoundsArgs, Figure1Args, Format, QuadratureArgs, RunConfig, Table1Args, Table2Args,
};
use crate::output::{fixed, write_json, Table, Versioned};
use crate::{ufile, Failure};

pub const TABLE1_ROWS: [(u32, u64); 16] = [
    (3, 10),
    (3, 11),
    (4, 15),
    (4, 16),
    (4, 17),
    (4, 18),
    (4, 19),
    (5, 21),
    (5, 22),
    (5, 23),
    (5, 24),
    (5, 25),
    (5, 26),
    (5, 27),
    (5, 28),
    (5, 29),
];

pub const TABLE2_ROWS: [(u32, u64); 12] = [
    (3, 13),
    (3, 14),
    (3, 15),
    (3, 16),
    (4, 21),
    (4, 22),
    (4, 23),
    (4, 24),
    (5, 31),
    (5, 32),
    (5, 33),
    (5, 34),
];

/// Rows whose reference upper bound is inconsistent; left out of comparisons.
pub const MISPRINTED_ROWS: [(u32, u64); 1] = [(3, 16)];

pub const FIGURE1_DIMENSION: u32 = 20;
pub const FIGURE1_RANGE: (u64, u64) = (22, 28);

/// Reports for `cells`, computed in parallel and returned in input order.
fn reports<H, F>(
    cells: &[(u32, u64)],
    potential: F,
    options: impl Fn(u32, u64) -> ReportOptions + Sync,
) -> Result<Vec<BoundReport>, Failure>
where
    H: Potential,
    F: Fn(u32) -> sphdesign::Result<H> + Sync,
{
    cells
        .par_iter()
        .map(|&(n, m)| {
            let h = potential(n)?;
            full_report(n, m as f64, &h, &options(n, m)).map_err(Failure::from)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn scaled(v: Option<f64>, m: f64, per_m2: bool) -> Option<f64> {
    v.map(|v| if per_m2 { v / (m * m) } else { v })
}

pub fn bounds(args: BoundsArgs) -> Result<(), Failure> {
    let cfg = RunConfig::from_args(args)?;
    let h = cfg.potential.resolve(cfg.n)?;
    let reports = cfg
        .cardinalities
        .par_iter()
        .map(|&m| full_report(cfg.n, m, &h, &cfg.options))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = io::stdout().lock();
    match cfg.format {
        Format::Json if reports.len() == 1 => write_json(&mut out, &reports[0]),
        Format::Json => write_json(&mut out, &reports),
        Format::Csv | Format::Pretty => {
            let mut table = Table::new(vec!["n", "M", "tau", "u", "U2", "U1", "L"]);
            for r in &reports {
                let (n, m, tau, u, u2, u1, l) = r.csv_fields();
                table.push(vec![
                    n.to_string(),
                    m.to_string(),
                    tau.to_string(),
                    fixed(u),
                    fixed(scaled(u2, m, cfg.per_m2)),
                    fixed(scaled(u1, m, cfg.per_m2)),
                    fixed(scaled(Some(l), m, cfg.per_m2)),
                ]);
            }
            if cfg.format == Format::Csv {
                table.write_csv(&mut out)
            } else {
                writeln!(out, "potential: {}", reports[0].potential)?;
                table.write_pretty(&mut out)?;
                write_notes(&mut out, &reports)
            }
        }
    }
}

fn write_notes(out: &mut impl Write, reports: &[BoundReport]) -> Result<(), Failure> {
    for r in reports {
        for note in &r.notes {
            writeln!(out, "note (n={}, M={}): {note}", r.n, r.m)?;
        }
    }
    Ok(())
}

pub fn table1(args: Table1Args) -> Result<(), Failure> {
    let reports = reports(&TABLE1_ROWS, newtonian, |_, _| ReportOptions::default())?;
    let mut out = io::stdout().lock();
    if args.format == Format::Json {
        return write_json(&mut out, &reports);
    }
    let mut table = Table::new(vec!["n", "M", "U2", "U1", "L"]);
    for r in &reports {
        table.push(vec![
            r.n.to_string(),
            r.m.to_string(),
            fixed(r.ub2_deg3),
            fixed(r.ub_main),
            fixed(Some(r.ulb)),
        ]);
    }
    match args.format {
        Format::Csv => table.write_csv(&mut out),
        _ => table.write_pretty(&mut out),
    }
}

#[derive(Serialize)]
struct Table2Row<'a> {
    misprinted: bool,
    #[serde(flatten)]
    report: &'a BoundReport,
}

pub fn table2(args: Table2Args) -> Result<(), Failure> {
    let ulist = match &args.u_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(Failure::usage)?;
            ufile::parse(&text).map_err(Failure::usage)?
        }
        None => ufile::UList::new(),
    };
    for key in ulist.keys() {
        if !TABLE2_ROWS.contains(key) {
            eprintln!(
                "warning: u-file entry n={} M={} is not a table row; ignored",
                key.0, key.1
            );
        }
    }
    let reports = reports(&TABLE2_ROWS, newtonian, |n, m| ReportOptions {
        u_override: ulist.get(&(n, m)).copied(),
        ..ReportOptions::default()
    })?;
    let mut out = io::stdout().lock();
    let misprinted = |r: &BoundReport| MISPRINTED_ROWS.contains(&(r.n, r.m as u64));
    if args.format == Format::Json {
        let rows: Vec<_> = reports
            .iter()
            .map(|r| Table2Row {
                misprinted: misprinted(r),
                report: r,
            })
            .collect();
        return write_json(&mut out, &rows);
    }
    let mut table = Table::new(vec!["n", "M", "u", "U1", "L", "note"]);
    for r in &reports {
        let mut notes = r.notes.clone();
        if misprinted(r) {
            notes.push("known misprint; excluded from comparisons".into());
        }
        table.push(vec![
            r.n.to_string(),
            r.m.to_string(),
            fixed(r.u_used),
            fixed(r.ub_main),
            fixed(Some(r.ulb)),
            notes.join("; "),
        ]);
    }
    match args.format {
        Format::Csv => table.write_csv(&mut out),
        _ => table.write_pretty(&mut out),
    }
}

#[derive(Serialize)]
struct FigurePoint {
    n: u32,
    #[serde(rename = "M")]
    m: f64,
    #[serde(rename = "L")]
    lower: f64,
    #[serde(rename = "U1")]
    upper: Option<f64>,
    #[serde(rename = "U1_closed_form")]
    closed_form: Option<f64>,
}

pub fn figure1(args: Figure1Args) -> Result<(), Failure> {
    let (a, b) = FIGURE1_RANGE;
    let cells: Vec<_> = (a..=b).map(|m| (FIGURE1_DIMENSION, m)).collect();
    let reports = reports(&cells, newtonian, |_, _| ReportOptions::default())?;
    let points: Vec<FigurePoint> = reports
        .iter()
        .map(|r| FigurePoint {
            n: r.n,
            m: r.m,
            lower: scaled(Some(r.ulb), r.m, args.per_m2).unwrap_or(f64::NAN),
            upper: scaled(r.ub_main, r.m, args.per_m2),
            closed_form: scaled(r.ub_explicit_tau2, r.m, args.per_m2),
        })
        .collect();
    let mut out = io::stdout().lock();
    if args.format == Format::Json {
        #[derive(Serialize)]
        struct Series<'a> {
            per_m2: bool,
            points: &'a [FigurePoint],
        }
        let series = Series {
            per_m2: args.per_m2,
            points: &points,
        };
        return write_json(
            &mut out,
            &Versioned {
                schema_version: SCHEMA_VERSION,
                body: &series,
            },
        );
    }
    let mut table = Table::new(vec!["n", "M", "L", "U1", "U1_closed_form"]);
    for p in &points {
        table.push(vec![
            p.n.to_string(),
            p.m.to_string(),
            fixed(Some(p.lower)),
            fixed(p.upper),
            fixed(p.closed_form),
        ]);
    }
    match args.format {
        Format::Csv => table.write_csv(&mut out),
        _ => table.write_pretty(&mut out),
    }
}

pub fn quadrature(args: QuadratureArgs) -> Result<(), Failure> {
    let rule = rule_for(args.n, args.m)?;
    write_json(
        &mut io::stdout().lock(),
        &Versioned {
            schema_version: SCHEMA_VERSION,
            body: &rule,
        },
    )
}
