//! The bench subcommand: run both algorithms over a grid of Latin-square
//! instances and emit one CSV row per (instance, algorithm) cell.
//!
//! Cells run concurrently, but rows are sorted on a full key before
//! writing, so the artifact is byte-stable apart from wall_time_ns.

use std::fmt::Display;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::Context as _;
use rayon::prelude::*;

use mmpx_core::format::{parse_state, parse_system};
use mmpx_core::{
    random_system, solve_latin, solve_power, verify_eigenpair, BipartiteSystem, Error as CoreError,
    MaskSpec, Rational, StateVector,
};

struct Cell {
    n: usize,
    seed: Option<u64>,
    variant: String,
    sys: BipartiteSystem,
    x0: StateVector,
}

struct Row {
    n: usize,
    seed: Option<u64>,
    variant: String,
    algo: &'static str,
    lambda: Option<Rational>,
    s: Option<usize>,
    r: Option<usize>,
    continuation_steps: Option<usize>,
    map_applications: usize,
    wall_time_ns: u128,
    verified: bool,
}

fn variant_masks(variant: &str) -> anyhow::Result<(MaskSpec, MaskSpec)> {
    match variant {
        "case1" => Ok((MaskSpec::none(), MaskSpec::none())),
        "case2" => Ok((MaskSpec::eps_default(), MaskSpec::none())),
        "case3" => Ok((MaskSpec::none(), MaskSpec::tau_default())),
        "case4" => Ok((MaskSpec::eps_default(), MaskSpec::tau_default())),
        other => anyhow::bail!("unknown variant `{other}` (expected case1..case4)"),
    }
}

pub fn cmd_bench(
    ns: &[usize],
    seeds: u64,
    variants: &[String],
    max_iter: usize,
    out: &PathBuf,
    include: &[PathBuf],
) -> anyhow::Result<u8> {
    let mut cells = Vec::new();
    for &n in ns {
        for seed in 0..seeds {
            for variant in variants {
                let (mask_a, mask_b) = variant_masks(variant)?;
                let sys = random_system(n, seed, &mask_a, &mask_b)?;
                let x0 = StateVector::zeros(n, n);
                cells.push(Cell {
                    n,
                    seed: Some(seed),
                    variant: variant.clone(),
                    sys,
                    x0,
                });
            }
        }
    }
    for spec in include {
        // an include is `<system-file>` or `<system-file>=<x0-file>`
        let raw = spec.to_string_lossy();
        let (sys_path, x0_path) = match raw.split_once('=') {
            Some((s, x)) => (PathBuf::from(s), Some(PathBuf::from(x))),
            None => (spec.clone(), None),
        };
        let text = fs::read_to_string(&sys_path)
            .with_context(|| format!("reading system file {}", sys_path.display()))?;
        let sys = parse_system(&text).with_context(|| format!("in {}", sys_path.display()))?;
        let x0 = match &x0_path {
            Some(p) => {
                let text = fs::read_to_string(p)
                    .with_context(|| format!("reading start state {}", p.display()))?;
                parse_state(&text, sys.m(), sys.n())
                    .with_context(|| format!("in {}", p.display()))?
            }
            None => StateVector::zeros(sys.m(), sys.n()),
        };
        let stem = sys_path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| sys_path.display().to_string());
        cells.push(Cell {
            n: sys.m(),
            seed: None,
            variant: format!("file:{stem}"),
            sys,
            x0,
        });
    }

    let mut rows: Vec<Row> = cells
        .par_iter()
        .map(|cell| -> anyhow::Result<[Row; 2]> {
            Ok([
                run_cell(cell, "latin", max_iter)?,
                run_cell(cell, "power", max_iter)?,
            ])
        })
        .collect::<anyhow::Result<Vec<[Row; 2]>>>()?
        .into_iter()
        .flatten()
        .collect();

    rows.sort_by(|a, b| (a.n, &a.variant, a.seed, a.algo).cmp(&(b.n, &b.variant, b.seed, b.algo)));

    let mut csv =
        String::from("n,seed,variant,algo,lambda,s,r,continuation_steps,map_applications,wall_time_ns,verified\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            row.n,
            opt(&row.seed),
            row.variant,
            row.algo,
            opt(&row.lambda),
            opt(&row.s),
            opt(&row.r),
            opt(&row.continuation_steps),
            row.map_applications,
            row.wall_time_ns,
            row.verified,
        ));
    }
    fs::write(out, csv).with_context(|| format!("writing CSV {}", out.display()))?;
    crate::emit(&format!("rows: {}\n", rows.len()))?;
    Ok(0)
}

fn run_cell(cell: &Cell, algo: &'static str, max_iter: usize) -> anyhow::Result<Row> {
    let started = Instant::now();
    let outcome = match algo {
        "latin" => solve_latin(&cell.sys, &cell.x0, max_iter),
        _ => solve_power(&cell.sys, &cell.x0, max_iter),
    };
    let wall_time_ns = started.elapsed().as_nanos();

    let base = Row {
        n: cell.n,
        seed: cell.seed,
        variant: cell.variant.clone(),
        algo,
        lambda: None,
        s: None,
        r: None,
        continuation_steps: None,
        map_applications: 0,
        wall_time_ns,
        verified: false,
    };
    match outcome {
        Ok((pair, trace)) => {
            let verified = verify_eigenpair(&cell.sys, &pair)?.valid;
            Ok(Row {
                lambda: Some(pair.lambda),
                s: Some(trace.s),
                r: Some(trace.r),
                continuation_steps: Some(trace.continuation_steps),
                map_applications: trace.map_applications,
                verified,
                ..base
            })
        }
        Err(CoreError::NonConvergence { applications, .. }) => Ok(Row {
            map_applications: applications,
            ..base
        }),
        Err(e) => Err(e.into()),
    }
}

fn opt<T: Display>(value: &Option<T>) -> String {
    value.as_ref().map(|v| v.to_string()).unwrap_or_default()
}
