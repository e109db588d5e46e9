use std::path::Path;

use num_rational::Ratio;
use serde::Serialize;
use sumprod_core::regularity::{superset_constraint, superset_from_decomposition, weak_regularity, RegularityConfig};
use sumprod_core::setops::{format_set_line, parse_set_file};
use sumprod_core::sumprod::{
    construct_extremal, exhaustive_search, f_alpha, polya_vinogradov_report, ratio_to_f64, small_alpha_asymptote,
    structured_search, ConstructionParams, SearchConfig, SearchRecord,
};
use sumprod_core::verify::{run_suite, SUITES};
use sumprod_core::{GridFunction64, Rational};

use crate::args::{Cli, ConstructArgs, FalphaArgs, Mode, RegularityArgs, SearchArgs, VerifyArgs};
use crate::cache::ResultCache;
use crate::error::{CliError, CliResult};
use crate::output::{Row, Sink};

#[derive(Debug, Serialize)]
pub struct FalphaRow {
    pub alpha: String,
    pub value: String,
    pub ell: u64,
    pub branch: String,
    pub value_decimal: f64,
    pub asymptote: f64,
}

impl Row for FalphaRow {
    const HEADER: &'static [&'static str] = &["alpha", "value", "ell", "branch", "value_decimal", "asymptote"];
}

impl Row for SearchRecord {
    const HEADER: &'static [&'static str] = &[
        "p",
        "min_card",
        "witness",
        "sum_size",
        "prod_size",
        "ratio",
        "mode",
        "f_alpha_line",
        "garaev_line",
        "conjecture_line",
    ];
}

#[derive(Debug, Serialize)]
pub struct ConstructRow {
    pub p: u64,
    pub ell: u64,
    pub n: u64,
    pub card: usize,
    pub sum_size: usize,
    pub prod_size: usize,
    pub sum_bound: u64,
    pub prod_bound: u64,
    /// `max(2 l alpha, 1/l) p`, with `alpha` as given or `|A|/p`.
    pub bound: f64,
    pub pv_count: usize,
    pub pv_n_over_ell: f64,
    pub pv_deviation: f64,
    pub pv_bound: f64,
    pub pv_within: bool,
    pub set: String,
}

impl Row for ConstructRow {
    const HEADER: &'static [&'static str] = &[
        "p",
        "ell",
        "n",
        "card",
        "sum_size",
        "prod_size",
        "sum_bound",
        "prod_bound",
        "bound",
        "pv_count",
        "pv_n_over_ell",
        "pv_deviation",
        "pv_bound",
        "pv_within",
        "set",
    ];
}

#[derive(Debug, Serialize)]
pub struct RegularityRow {
    pub set_index: usize,
    pub p: usize,
    pub card: usize,
    pub delta: f64,
    pub eps: f64,
    pub iterations: usize,
    pub cells: usize,
    pub final_u2: f64,
    pub energy_trace: String,
    pub kept_cells: usize,
    pub superset_size: usize,
    pub missed_fraction: f64,
    pub spurious_fraction: f64,
    pub missed_ok: bool,
    pub spurious_ok: bool,
}

impl Row for RegularityRow {
    const HEADER: &'static [&'static str] = &[
        "set_index",
        "p",
        "card",
        "delta",
        "eps",
        "iterations",
        "cells",
        "final_u2",
        "energy_trace",
        "kept_cells",
        "superset_size",
        "missed_fraction",
        "spurious_fraction",
        "missed_ok",
        "spurious_ok",
    ];
}

#[derive(Debug, Serialize)]
pub struct VerifyRow {
    pub suite: String,
    pub check: String,
    pub passed: bool,
    pub millis: f64,
    pub detail: String,
}

impl Row for VerifyRow {
    const HEADER: &'static [&'static str] = &["suite", "check", "passed", "millis", "detail"];
}

fn open_cache(path: Option<&Path>) -> CliResult<Option<ResultCache>> {
    path.map(ResultCache::open).transpose()
}

pub fn falpha(cli: &Cli, args: &FalphaArgs) -> CliResult<()> {
    let alphas: Vec<Rational> = match (&args.from, &args.to, &args.step) {
        (Some(from), Some(to), Some(step)) => {
            if *step.numer() <= 0 || from > to {
                return Err(CliError::Usage(format!("malformed range {from}..{to} step {step}")));
            }
            let mut out = Vec::new();
            let mut a = *from;
            while a <= *to {
                out.push(a);
                a += step;
            }
            out
        }
        _ => args.alpha.clone(),
    };
    let mut sink = Sink::open::<FalphaRow>(cli.format, cli.out.as_deref())?;
    for alpha in alphas {
        let profile = f_alpha(&alpha)?;
        sink.row(&FalphaRow {
            alpha: alpha.to_string(),
            value: profile.value.to_string(),
            ell: profile.optimal_ell,
            branch: profile.branch.to_string(),
            value_decimal: ratio_to_f64(&profile.value),
            asymptote: small_alpha_asymptote(ratio_to_f64(&alpha)),
        })?;
    }
    sink.finish()
}

pub fn search_key(p: u64, min_card: usize, mode: Mode) -> String {
    let mode = match mode {
        Mode::Exhaustive => "exhaustive",
        Mode::Structured => "structured",
    };
    format!("p={p};min_card={min_card};mode={mode}")
}

/// `ceil(alpha p)` for `0 < alpha <= 1`.
fn min_card(alpha: &Rational, p: u64) -> CliResult<usize> {
    if *alpha.numer() <= 0 || alpha.numer() > alpha.denom() {
        return Err(CliError::Validation(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    let scaled = Ratio::new(*alpha.numer() as i128 * p as i128, *alpha.denom() as i128);
    Ok(scaled.ceil().to_integer() as usize)
}

pub fn search(cli: &Cli, args: &SearchArgs) -> CliResult<()> {
    let cfg = SearchConfig { workers: cli.workers as usize, exhaustive_limit: args.limit, orbit_reduction: true };
    let mut cache = open_cache(cli.cache.as_deref())?;
    let mut sink = Sink::open::<SearchRecord>(cli.format, cli.out.as_deref())?;
    for &p in &args.p {
        let m = min_card(&args.alpha, p)?;
        let key = search_key(p, m, args.mode);
        let cached = match &cache {
            Some(c) => c.search(&key)?,
            None => None,
        };
        let rec = match cached {
            Some(rec) => rec,
            None => {
                let rec = match args.mode {
                    Mode::Exhaustive => exhaustive_search(p, m, &cfg)?,
                    Mode::Structured => structured_search(p, m, &cfg)?,
                };
                if let Some(c) = cache.as_mut() {
                    c.put_search(&key, &rec)?;
                }
                rec
            }
        };
        sink.row(&rec)?;
    }
    sink.finish()
}

pub fn construct(cli: &Cli, args: &ConstructArgs) -> CliResult<()> {
    let params = match (args.n, &args.alpha) {
        (Some(n), _) => ConstructionParams::new(args.p, args.ell, n)?,
        (None, Some(alpha)) => ConstructionParams::from_alpha(args.p, args.ell, alpha)?,
        (None, None) => return Err(CliError::Usage("one of --alpha or --n is required".into())),
    };
    let (a, report) = construct_extremal(&params)?;
    let pv = polya_vinogradov_report(&params)?;
    let alpha = match (&args.alpha, args.n) {
        (Some(alpha), None) => ratio_to_f64(alpha),
        _ => report.card as f64 / params.p as f64,
    };
    let ell = params.ell as f64;
    let bound = (2.0 * ell * alpha).max(1.0 / ell) * params.p as f64;
    let mut sink = Sink::open::<ConstructRow>(cli.format, cli.out.as_deref())?;
    sink.row(&ConstructRow {
        p: params.p,
        ell: params.ell,
        n: params.n,
        card: report.card,
        sum_size: report.sum_size,
        prod_size: report.prod_size,
        sum_bound: report.sum_bound,
        prod_bound: report.prod_bound,
        bound,
        pv_count: pv.count,
        pv_n_over_ell: pv.n_over_ell,
        pv_deviation: pv.deviation,
        pv_bound: pv.bound,
        pv_within: pv.within,
        set: format_set_line(&a),
    })?;
    sink.finish()
}

fn regularity_config(args: &RegularityArgs) -> CliResult<RegularityConfig> {
    let mut cfg = RegularityConfig::default();
    if let Some(c) = args.arc_constant {
        cfg.arc_constant = c;
    }
    if let Some(c) = args.c0 {
        cfg.increment_floor = c;
    }
    if let Some(c) = args.c1 {
        cfg.correlation_floor = c;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn regularity_key(cfg: &RegularityConfig, delta: f64, set_line: &str) -> String {
    format!(
        "delta={delta:e};c={:e};c0={:e};c1={:e};{set_line}",
        cfg.arc_constant, cfg.increment_floor, cfg.correlation_floor
    )
}

pub fn regularity(cli: &Cli, args: &RegularityArgs) -> CliResult<()> {
    let cfg = regularity_config(args)?;
    if *args.eps.numer() <= 0 {
        return Err(CliError::Validation(format!("eps must be positive, got {}", args.eps)));
    }
    let eps = Ratio::new(*args.eps.numer() as u64, *args.eps.denom() as u64);
    superset_constraint(&eps, args.delta)?;
    let text = std::fs::read_to_string(&args.set_file).map_err(|e| CliError::io(&args.set_file, e))?;
    let sets = parse_set_file(&text)?;
    let mut cache = open_cache(cli.cache.as_deref())?;
    let mut sink = Sink::open::<RegularityRow>(cli.format, cli.out.as_deref())?;
    for (i, a) in sets.iter().enumerate() {
        let f = GridFunction64::indicator(a);
        let key = regularity_key(&cfg, args.delta, &format_set_line(a));
        let cached = match &cache {
            Some(c) => c.decomposition(&key, &f)?,
            None => None,
        };
        let decomposition = match cached {
            Some(d) => d,
            None => {
                let d = weak_regularity(&f, args.delta, &cfg)?;
                if let Some(c) = cache.as_mut() {
                    c.put_decomposition(&key, &d)?;
                }
                d
            }
        };
        let (_, r) = superset_from_decomposition(a, &eps, decomposition)?;
        let d = &r.decomposition;
        sink.row(&RegularityRow {
            set_index: i,
            p: a.group().order(),
            card: a.len(),
            delta: args.delta,
            eps: r.eps,
            iterations: d.iterations,
            cells: d.factor.cells(),
            final_u2: d.final_u2,
            energy_trace: d.energy_trace.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(";"),
            kept_cells: r.kept_cells,
            superset_size: r.superset_size,
            missed_fraction: r.missed_fraction,
            spurious_fraction: r.spurious_fraction,
            missed_ok: r.missed_ok,
            spurious_ok: r.spurious_ok,
        })?;
    }
    sink.finish()
}

pub fn verify(cli: &Cli, args: &VerifyArgs) -> CliResult<()> {
    let names: Vec<&str> = if args.suite == "all" { SUITES.to_vec() } else { vec![args.suite.as_str()] };
    if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
        return Err(CliError::Usage(format!("unknown suite {bad:?}; expected `all` or one of {}", SUITES.join(", "))));
    }
    let mut sink = Sink::open::<VerifyRow>(cli.format, cli.out.as_deref())?;
    let mut failed = Vec::new();
    for name in names {
        let report = run_suite(name)?;
        for c in &report.checks {
            eprintln!("{:<5} {name}/{} ({:.1} ms) {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.millis, c.detail);
            if !c.passed {
                failed.push(format!("{name}/{}", c.name));
            }
            sink.row(&VerifyRow {
                suite: name.to_string(),
                check: c.name.clone(),
                passed: c.passed,
                millis: c.millis,
                detail: c.detail.clone(),
            })?;
        }
    }
    sink.finish()?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::SuiteFailed(format!("failed checks: {}", failed.join(", "))))
    }
}
