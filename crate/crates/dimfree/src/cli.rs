//! Batch command surface: sweeps as subcommands, CSV/JSON tables, and
//! reproducibility manifests.
//!
//! Exit codes are a stable contract: 0 success, 1 invariant violation,
//! 2 usage error, 3 numerical non-convergence. Every run can write a JSON
//! manifest alongside its table; `replay` re-runs a manifest and must
//! reproduce the table byte-for-byte.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{
    check_difference_estimates, check_mu_estimates, default_grid, fit_decay_exponent,
};
use crate::error::Error;
use crate::montecarlo::{chi_square_concentration, mc_gaussian_symbol, mc_sphere_symbol};
use crate::multipliers::{ball_multiplier, difference, gaussian_multiplier, mu, SymbolPair};
use crate::numerics::QuadratureSpec;
use crate::radial::{
    compute_constants, default_eigenvalue_grid, default_t_grid, gauss_max_gaussian_ratio_1d,
    gauss_max_gaussian_ratio_d, homogeneous_lower_bound_1d, spd_eigenvalue,
    spherical_indicator_ratio, threshold_dimension, BoundKind,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;

const DEFAULT_SEED: u64 = 0x00D1_4F8E_E5EE_D001;

/// Everything needed to re-run a command and reproduce its table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Resolved parameters, including the canonical argv under "argv".
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub tool_version: String,
    pub wall_time_ms: u64,
    pub tolerance_set: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Parser)]
#[command(name = "dimfree", version, about = "Sweeps over the radial multiplier symbols")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the table here instead of stdout; a `<path>.manifest.json`
    /// sidecar is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the symbols mu, m, g and their differences on an (r, d) grid.
    Symbols {
        /// Comma-separated dimensions, each >= 3.
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u32>,
        /// Radii: a single value, a comma list, or start:step:end.
        #[arg(long)]
        r: String,
        /// Subset of mu,m,g,differences.
        #[arg(long, default_value = "mu,m,g")]
        which: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Certify the pointwise estimates over the default grids.
    Bounds {
        #[arg(long, value_delimiter = ',', default_values_t = [3u32, 10, 30, 100, 300, 1000])]
        d: Vec<u32>,
        /// Difference pairs to certify (mu_minus_g, mu_minus_m, g_minus_m).
        #[arg(long, value_delimiter = ',')]
        pairs: Vec<String>,
        /// Also fit the decay exponent of each pair's sup-norm in d.
        #[arg(long)]
        fit: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte Carlo checks of the expectation identities.
    Mc {
        #[command(subcommand)]
        sub: McCmd,
    },
    /// Maximal functions on the radial test inputs.
    Radial {
        #[command(subcommand)]
        sub: RadialCmd,
    },
    /// Re-run a recorded manifest; the table must reproduce byte-for-byte.
    Replay {
        manifest: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum McCmd {
    /// E cos(2 pi r X_1 / |X|) for Gaussian X.
    Sphere {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// E cos(2 pi r X_1 / sqrt(d)).
    Gauss {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Frequency of the chi-square concentration window.
    Chisq {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum RadialCmd {
    /// 1D heat-maximal Gaussian ratio against its lower bound.
    Gauss1d {
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// d-dimensional heat-maximal Gaussian ratio and correction term.
    Gaussdd {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Spherical maximal ratio for the ball indicator.
    Indicator {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Eigenvalue supremum of the radial kernel.
    Spd {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Explicit constants of the heat lower-bound optimization.
    Constants {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Heat maximal lower bound for the homogeneous input.
    Homog {
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// A rendered table: fixed header plus string rows.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => {
                let mut s = self.header.join(",");
                s.push('\n');
                for row in &self.rows {
                    s.push_str(&row.join(","));
                    s.push('\n');
                }
                s
            }
            OutputFormat::Json => {
                let objs: Vec<BTreeMap<&str, &str>> = self
                    .rows
                    .iter()
                    .map(|row| {
                        self.header
                            .iter()
                            .zip(row.iter())
                            .map(|(h, v)| (*h, v.as_str()))
                            .collect()
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&objs).unwrap();
                s.push('\n');
                s
            }
        }
    }
}

/// 17 significant digits, locale-free: round-trips every f64 deterministically.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_r_spec(spec: &str) -> Result<Vec<f64>, Error> {
    let parse_one = |s: &str| -> Result<f64, Error> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Parameter(format!("bad radius value {s:?}")))
            .and_then(|v| {
                if v.is_finite() && v >= 0.0 {
                    Ok(v)
                } else {
                    Err(Error::Parameter(format!("radius {v} must be finite and >= 0")))
                }
            })
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let rs = match parts.len() {
        1 => spec.split(',').map(parse_one).collect::<Result<Vec<_>, _>>()?,
        3 => {
            let (start, step, end) = (parse_one(parts[0])?, parse_one(parts[1])?, parse_one(parts[2])?);
            if step <= 0.0 || end < start {
                return Err(Error::Parameter(format!("bad radius range {spec:?}")));
            }
            let n = ((end - start) / step).round() as usize + 1;
            (0..n)
                .map(|i| start + i as f64 * step)
                .filter(|&r| r <= end + 0.5 * step)
                .collect()
        }
        _ => return Err(Error::Parameter(format!("bad radius spec {spec:?}"))),
    };
    if rs.is_empty() {
        return Err(Error::Parameter("empty radius list".into()));
    }
    Ok(rs)
}

fn tolerance_set() -> BTreeMap<String, f64> {
    let spec = QuadratureSpec::default();
    BTreeMap::from([
        ("quad_abs_tol".to_string(), spec.abs_tol),
        ("quad_rel_tol".to_string(), spec.rel_tol),
        ("sup_refine_bracket".to_string(), 1e-4),
        ("near_bound_slack".to_string(), 1e-9),
        ("eigenvalue_tolerance".to_string(), 5e-4),
    ])
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Convergence { .. } => EXIT_NONCONVERGENCE,
        Error::Data(_) => EXIT_VIOLATION,
        Error::Domain(_) | Error::Parameter(_) => EXIT_USAGE,
    }
}

fn emit(
    table: &Table,
    manifest: &mut RunManifest,
    output: &OutputArgs,
    started: Instant,
) -> Result<(), Error> {
    manifest.wall_time_ms = started.elapsed().as_millis() as u64;
    let rendered = table.render(output.format);
    match &output.out {
        Some(path) => {
            std::fs::write(path, rendered.as_bytes())
                .map_err(|e| Error::Data(format!("cannot write {}: {e}", path.display())))?;
            let mpath = PathBuf::from(format!("{}.manifest.json", path.display()));
            let mut blob = serde_json::to_string_pretty(manifest).unwrap();
            blob.push('\n');
            std::fs::write(&mpath, blob.as_bytes())
                .map_err(|e| Error::Data(format!("cannot write {}: {e}", mpath.display())))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.as_bytes())
                .map_err(|e| Error::Data(format!("stdout: {e}")))?;
        }
    }
    Ok(())
}

fn manifest_for(command: &str, argv: Vec<String>, seed: u64, format: OutputFormat) -> RunManifest {
    let mut parameters = BTreeMap::new();
    parameters.insert("argv".to_string(), argv.join(" "));
    parameters.insert("format".to_string(), format.as_str().to_string());
    RunManifest {
        command: command.to_string(),
        parameters,
        seed,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time_ms: 0,
        tolerance_set: tolerance_set(),
    }
}

fn resolve_seed(cli_seed: Option<u64>) -> u64 {
    cli_seed
        .or_else(|| {
            std::env::var("DIMFREE_SEED")
                .ok()
                .and_then(|s| s.parse::<u64>().ok())
        })
        .unwrap_or(DEFAULT_SEED)
}

fn parse_pairs(raw: &[String]) -> Result<Vec<SymbolPair>, Error> {
    if raw.is_empty() {
        return Ok(SymbolPair::ALL.to_vec());
    }
    raw.iter().map(|s| SymbolPair::parse(s)).collect()
}

fn run_symbols(d: &[u32], r_spec: &str, which: &str, output: &OutputArgs) -> Result<i32, Error> {
    let started = Instant::now();
    if d.is_empty() {
        return Err(Error::Parameter("empty dimension list".into()));
    }
    for &dim in d {
        if dim < 3 {
            return Err(Error::Parameter(format!("dimension {dim} < 3")));
        }
    }
    let rs = parse_r_spec(r_spec)?;
    let mut want_mu = false;
    let mut want_m = false;
    let mut want_g = false;
    let mut want_diff = false;
    for token in which.split(',') {
        match token.trim() {
            "mu" => want_mu = true,
            "m" => want_m = true,
            "g" => want_g = true,
            "differences" => want_diff = true,
            other => return Err(Error::Parameter(format!("unknown symbol {other:?}"))),
        }
    }
    let spec = QuadratureSpec::default();
    // (d, r, symbol name, value, error, method)
    let mut rows_raw: Vec<(u32, f64, String, f64, f64, &'static str)> = Vec::new();
    for &dim in d {
        for &r in &rs {
            if want_mu {
                let v = mu(r, dim, &spec)?;
                rows_raw.push((dim, r, "mu".into(), v.value, v.error_estimate, v.method.as_str()));
            }
            if want_m {
                let v = ball_multiplier(r, dim, &spec)?;
                rows_raw.push((dim, r, "m".into(), v.value, v.error_estimate, v.method.as_str()));
            }
            if want_g {
                let v = gaussian_multiplier(r, dim)?;
                rows_raw.push((dim, r, "g".into(), v.value, v.error_estimate, v.method.as_str()));
            }
            if want_diff {
                for pair in SymbolPair::ALL {
                    let v = difference(pair, r, dim, &spec)?;
                    rows_raw.push((dim, r, pair.as_str().into(), v, f64::NAN, "quadrature"));
                }
            }
        }
    }
    rows_raw.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.1.partial_cmp(&b.1).unwrap())
            .then(a.2.cmp(&b.2))
    });
    let table = Table {
        header: vec!["d", "r", "symbol", "value", "error_estimate", "method"],
        rows: rows_raw
            .into_iter()
            .map(|(dim, r, sym, v, e, m)| {
                let err = if e.is_nan() { String::new() } else { fmt(e) };
                vec![dim.to_string(), fmt(r), sym, fmt(v), err, m.to_string()]
            })
            .collect(),
    };
    let argv = vec![
        "symbols".to_string(),
        "--d".to_string(),
        d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        "--r".to_string(),
        r_spec.to_string(),
        "--which".to_string(),
        which.to_string(),
    ];
    let mut manifest = manifest_for("symbols", argv, 0, output.format);
    emit(&table, &mut manifest, output, started)?;
    Ok(EXIT_OK)
}

fn run_bounds(d: &[u32], pairs_raw: &[String], fit: bool, output: &OutputArgs) -> Result<i32, Error> {
    let started = Instant::now();
    if d.is_empty() {
        return Err(Error::Parameter("empty dimension list".into()));
    }
    for &dim in d {
        if dim < 3 {
            return Err(Error::Parameter(format!("dimension {dim} < 3")));
        }
    }
    let pairs = parse_pairs(pairs_raw)?;
    let spec = QuadratureSpec::default();
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut violated = false;
    for &dim in d {
        let grid = default_grid(dim);
        let mut reports = check_mu_estimates(dim, &grid, &spec)?
            .into_iter()
            .map(|rep| (String::from("mu"), rep))
            .collect::<Vec<_>>();
        for &pair in &pairs {
            for rep in check_difference_estimates(pair, dim, &grid, &spec)? {
                reports.push((pair.as_str().to_string(), rep));
            }
        }
        for (subject, rep) in reports {
            violated |= rep.violated_at_threshold;
            rows.push(vec![
                "bound".to_string(),
                dim.to_string(),
                subject,
                rep.inequality_id.as_str().to_string(),
                fmt(rep.worst_ratio),
                fmt(rep.argmax_r),
                fmt(rep.fitted_constant),
                rep.violated_at_threshold.to_string(),
                rep.skipped_points.to_string(),
                String::new(),
                String::new(),
                String::new(),
            ]);
        }
    }
    if fit {
        let fit_dims: Vec<u32> = d.iter().copied().filter(|&x| x >= 10).collect();
        if fit_dims.len() < 4 {
            return Err(Error::Parameter(
                "decay fit needs at least 4 dimensions >= 10 in --d".into(),
            ));
        }
        for &pair in &pairs {
            let f = fit_decay_exponent(&fit_dims, pair, &spec)?;
            rows.push(vec![
                "decay_fit".to_string(),
                String::new(),
                pair.as_str().to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                fmt(f.slope),
                fmt(f.intercept),
                fmt(f.residual),
            ]);
        }
    }
    let table = Table {
        header: vec![
            "type",
            "d",
            "subject",
            "inequality",
            "worst_ratio",
            "argmax_r",
            "fitted_constant",
            "violated_at_threshold",
            "skipped_points",
            "slope",
            "intercept",
            "residual",
        ],
        rows,
    };
    let mut argv = vec![
        "bounds".to_string(),
        "--d".to_string(),
        d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        "--pairs".to_string(),
        pairs.iter().map(|p| p.as_str()).collect::<Vec<_>>().join(","),
    ];
    if fit {
        argv.push("--fit".to_string());
    }
    let mut manifest = manifest_for("bounds", argv, 0, output.format);
    emit(&table, &mut manifest, output, started)?;
    Ok(if violated { EXIT_VIOLATION } else { EXIT_OK })
}

fn run_mc(sub: &McCmd) -> Result<i32, Error> {
    let started = Instant::now();
    let (kind, r, d, alpha, n, seed, output) = match sub {
        McCmd::Sphere { r, d, n, seed, output } => ("sphere", Some(*r), *d, None, *n, seed, output),
        McCmd::Gauss { r, d, n, seed, output } => ("gauss", Some(*r), *d, None, *n, seed, output),
        McCmd::Chisq { d, alpha, n, seed, output } => {
            ("chisq", None, *d, Some(*alpha), *n, seed, output)
        }
    };
    let seed = resolve_seed(*seed);
    let mut exit = EXIT_OK;
    let (est, exact) = match kind {
        "sphere" => (mc_sphere_symbol(r.unwrap(), d, n, seed)?, None),
        "gauss" => (mc_gaussian_symbol(r.unwrap(), d, n, seed)?, None),
        _ => {
            let alpha = alpha.unwrap();
            let (lo, hi) = crate::montecarlo::concentration_window(d, alpha);
            let exact = crate::montecarlo::chi_square_window_probability(d, lo, hi)?;
            match chi_square_concentration(d, alpha, n, seed) {
                Ok(est) => (est, Some(exact)),
                Err(Error::Data(_)) => {
                    exit = EXIT_VIOLATION;
                    (crate::montecarlo::empirical_window_frequency(d, lo, hi, n, seed)?, Some(exact))
                }
                Err(e) => return Err(e),
            }
        }
    };
    let table = Table {
        header: vec!["kind", "r", "d", "alpha", "mean", "stderr", "n_samples", "seed", "exact"],
        rows: vec![vec![
            kind.to_string(),
            r.map(fmt).unwrap_or_default(),
            d.to_string(),
            alpha.map(fmt).unwrap_or_default(),
            fmt(est.mean),
            fmt(est.stderr),
            est.n_samples.to_string(),
            est.seed.to_string(),
            exact.map(fmt).unwrap_or_default(),
        ]],
    };
    let mut argv = vec!["mc".to_string(), kind.to_string()];
    if let Some(r) = r {
        argv.extend(["--r".to_string(), r.to_string()]);
    }
    argv.extend(["--d".to_string(), d.to_string()]);
    if let Some(a) = alpha {
        argv.extend(["--alpha".to_string(), a.to_string()]);
    }
    argv.extend([
        "--n".to_string(),
        n.to_string(),
        "--seed".to_string(),
        seed.to_string(),
    ]);
    let mut manifest = manifest_for("mc", argv, seed, output.format);
    emit(&table, &mut manifest, output, started)?;
    Ok(exit)
}

fn run_radial(sub: &RadialCmd) -> Result<i32, Error> {
    let started = Instant::now();
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut exit = EXIT_OK;
    let row = |kind: &str, p: Option<f64>, d: Option<u32>, name: &str, value: f64,
               excess: Option<f64>, bound: Option<f64>, bk: Option<BoundKind>| {
        vec![
            kind.to_string(),
            p.map(fmt).unwrap_or_default(),
            d.map(|x| x.to_string()).unwrap_or_default(),
            name.to_string(),
            fmt(value),
            excess.map(fmt).unwrap_or_default(),
            bound.map(fmt).unwrap_or_default(),
            bk.map(|k| match k {
                BoundKind::Lower => "lower".to_string(),
                BoundKind::Upper => "upper".to_string(),
            })
            .unwrap_or_default(),
        ]
    };
    let (argv, output) = match sub {
        RadialCmd::Gauss1d { p, output } => {
            let rep = gauss_max_gaussian_ratio_1d(*p)?;
            if rep.ratio + 1e-9 < rep.analytic_bound {
                exit = EXIT_VIOLATION;
            }
            rows.push(row(
                "gauss1d",
                Some(*p),
                None,
                "ratio",
                rep.ratio,
                Some(rep.ratio_excess),
                Some(rep.analytic_bound),
                Some(rep.bound_kind),
            ));
            (vec!["radial".into(), "gauss1d".into(), "--p".into(), p.to_string()], output)
        }
        RadialCmd::Gaussdd { p, d, output } => {
            let (rep, v) = gauss_max_gaussian_ratio_d(*p, *d)?;
            if rep.ratio > rep.analytic_bound + 1e-9 {
                exit = EXIT_VIOLATION;
            }
            rows.push(row(
                "gaussdd",
                Some(*p),
                Some(*d),
                "ratio",
                rep.ratio,
                Some(rep.ratio_excess),
                Some(rep.analytic_bound),
                Some(rep.bound_kind),
            ));
            rows.push(row("gaussdd", Some(*p), Some(*d), "correction", v, None, None, None));
            (
                vec![
                    "radial".into(),
                    "gaussdd".into(),
                    "--p".into(),
                    p.to_string(),
                    "--d".into(),
                    d.to_string(),
                ],
                output,
            )
        }
        RadialCmd::Indicator { p, d, output } => {
            let rep = spherical_indicator_ratio(*p, *d)?;
            if rep.ratio > rep.analytic_bound + 1e-9 || rep.ratio_excess <= 0.0 {
                exit = EXIT_VIOLATION;
            }
            rows.push(row(
                "indicator",
                Some(*p),
                Some(*d),
                "ratio",
                rep.ratio,
                Some(rep.ratio_excess),
                Some(rep.analytic_bound),
                Some(rep.bound_kind),
            ));
            (
                vec![
                    "radial".into(),
                    "indicator".into(),
                    "--p".into(),
                    p.to_string(),
                    "--d".into(),
                    d.to_string(),
                ],
                output,
            )
        }
        RadialCmd::Spd { p, d, output } => {
            let s = spd_eigenvalue(*p, *d, &default_eigenvalue_grid())?;
            let at_or_above = *d >= threshold_dimension(*p)?;
            if s < 1.0 - 5e-4 || (at_or_above && (s - 1.0).abs() > 5e-4) {
                exit = EXIT_VIOLATION;
            }
            rows.push(row("spd", Some(*p), Some(*d), "eigenvalue", s, None, None, None));
            (
                vec![
                    "radial".into(),
                    "spd".into(),
                    "--p".into(),
                    p.to_string(),
                    "--d".into(),
                    d.to_string(),
                ],
                output,
            )
        }
        RadialCmd::Constants { output } => {
            let rep = compute_constants()?;
            if !(rep.c_infimum > 0.4 && rep.c_infimum <= 1.0)
                || !(rep.x1_root > 0.198 && rep.x1_root < 0.2)
                || rep.h_infimum <= -0.415
            {
                exit = EXIT_VIOLATION;
            }
            rows.push(row("constants", None, None, "c_infimum", rep.c_infimum, None, None, None));
            rows.push(row("constants", None, None, "c_argmin_p", rep.c_argmin_p, None, None, None));
            rows.push(row("constants", None, None, "x1_root", rep.x1_root, None, None, None));
            rows.push(row("constants", None, None, "h_infimum", rep.h_infimum, None, None, None));
            for (p, c) in &rep.c_sharp_values {
                rows.push(row("constants", Some(*p), None, "c_sharp", *c, None, None, None));
            }
            (vec!["radial".into(), "constants".into()], output)
        }
        RadialCmd::Homog { p, output } => {
            let sup = homogeneous_lower_bound_1d(*p, &default_t_grid())?;
            rows.push(row("homog", Some(*p), None, "lower_bound_sup", sup, None, None, None));
            (vec!["radial".into(), "homog".into(), "--p".into(), p.to_string()], output)
        }
    };
    let table = Table {
        header: vec!["kind", "p", "d", "name", "value", "ratio_excess", "analytic_bound", "bound_kind"],
        rows,
    };
    let mut manifest = manifest_for("radial", argv, 0, output.format);
    emit(&table, &mut manifest, output, started)?;
    Ok(exit)
}

fn run_replay(manifest_path: &PathBuf, out: Option<PathBuf>) -> Result<i32, Error> {
    let blob = std::fs::read_to_string(manifest_path)
        .map_err(|e| Error::Parameter(format!("cannot read {}: {e}", manifest_path.display())))?;
    let manifest: RunManifest = serde_json::from_str(&blob)
        .map_err(|e| Error::Parameter(format!("bad manifest: {e}")))?;
    let argv_str = manifest
        .parameters
        .get("argv")
        .ok_or_else(|| Error::Parameter("manifest has no argv".into()))?;
    let mut args: Vec<String> = vec!["dimfree".to_string()];
    args.extend(argv_str.split_whitespace().map(|s| s.to_string()));
    if args.get(1).map(String::as_str) == Some("replay") {
        return Err(Error::Parameter("refusing to replay a replay".into()));
    }
    if let Some(fmtv) = manifest.parameters.get("format") {
        args.extend(["--format".to_string(), fmtv.clone()]);
    }
    if let Some(out) = out {
        args.extend(["--out".to_string(), out.display().to_string()]);
    }
    Ok(run_from(args))
}

/// Entry point shared by the binary and the integration tests. Returns the
/// process exit code.
pub fn run_from<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version through errors with exit code 0.
            let code = if e.exit_code() == 0 { EXIT_OK } else { EXIT_USAGE };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.cmd {
        Cmd::Symbols { d, r, which, output } => run_symbols(d, r, which, output),
        Cmd::Bounds { d, pairs, fit, output } => run_bounds(d, pairs, *fit, output),
        Cmd::Mc { sub } => run_mc(sub),
        Cmd::Radial { sub } => run_radial(sub),
        Cmd::Replay { manifest, out } => run_replay(manifest, out.clone()),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_spec_forms() {
        assert_eq!(parse_r_spec("1.5").unwrap(), vec![1.5]);
        assert_eq!(parse_r_spec("1,2,3").unwrap(), vec![1.0, 2.0, 3.0]);
        let r = parse_r_spec("0:0.5:2").unwrap();
        assert_eq!(r, vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert!(parse_r_spec("2:0.5:1").is_err());
        assert!(parse_r_spec("a,b").is_err());
        assert!(parse_r_spec("1:2").is_err());
    }

    #[test]
    fn float_format_is_17_digits() {
        let s = fmt(2.0 / std::f64::consts::PI);
        assert_eq!(s, "6.3661977236758138e-1");
        assert_eq!(s.parse::<f64>().unwrap(), 2.0 / std::f64::consts::PI);
    }

    #[test]
    fn table_renders_csv_and_json() {
        let t = Table {
            header: vec!["a", "b"],
            rows: vec![vec!["1".into(), "x".into()]],
        };
        assert_eq!(t.render(OutputFormat::Csv), "a,b\n1,x\n");
        let j = t.render(OutputFormat::Json);
        let parsed: Vec<BTreeMap<String, String>> = serde_json::from_str(&j).unwrap();
        assert_eq!(parsed[0]["a"], "1");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_from(["dimfree", "symbols", "--r", "1"]), EXIT_USAGE);
        assert_eq!(
            run_from(["dimfree", "bounds", "--d", "2", "--out", "/tmp/dimfree-test-bounds-reject.csv"]),
            EXIT_USAGE
        );
        assert_eq!(run_from(["dimfree", "nonsense"]), EXIT_USAGE);
    }

    #[test]
    fn manifest_roundtrip() {
        let m = manifest_for(
            "symbols",
            vec!["symbols".into(), "--d".into(), "3".into()],
            7,
            OutputFormat::Csv,
        );
        let blob = serde_json::to_string(&m).unwrap();
        let back: RunManifest = serde_json::from_str(&blob).unwrap();
        assert_eq!(back.command, "symbols");
        assert_eq!(back.parameters["argv"], "symbols --d 3");
        assert_eq!(back.seed, 7);
    }
}
