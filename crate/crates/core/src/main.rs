//! Command-line front end: validate shapes, enumerate fillings, evaluate
//! statistics and exact distributions, apply the bijections, and run the
//! verification suites.

use clap::{Parser, Subcommand, ValueEnum};
use moonfill::bijections;
use moonfill::encoding;
use moonfill::error::{Error, Result};
use moonfill::filling::{self, ColSubset, RowSubset, StatKind};
use moonfill::io;
use moonfill::poly;
use moonfill::shape::MoonPolyomino;
use moonfill::verify::{self, Config, Theorem};
use serde_json::json;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "moonfill", version, about = "Exact chain statistics on 01-fillings of moon polyominoes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatName {
    Ne,
    Se,
    Alpha,
    Beta,
    Gamma,
    Delta,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindName {
    Top,
    Bottom,
    Left,
    Right,
}

impl KindName {
    fn kind(self) -> StatKind {
        match self {
            KindName::Top => StatKind::Top,
            KindName::Bottom => StatKind::Bottom,
            KindName::Left => StatKind::Left,
            KindName::Right => StatKind::Right,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a shape file and echo its structure.
    Validate {
        shape: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Enumerate the fillings with prescribed row and column sums.
    Enumerate {
        shape: PathBuf,
        /// Row sums, e.g. 1,1,0,1
        #[arg(long)]
        rows: String,
        /// Column sums, e.g. 1,0,2
        #[arg(long)]
        cols: String,
        /// Print only the number of fillings.
        #[arg(long)]
        count: bool,
        /// Print every filling, one line each.
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate a chain statistic of one filling.
    Stats {
        shape: PathBuf,
        filling: PathBuf,
        #[arg(long, value_enum)]
        stat: StatName,
        /// Anchor subset (rows for alpha/beta, columns for gamma/delta).
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exact joint distribution of a mixed statistic and its complement.
    Dist {
        shape: PathBuf,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
        #[arg(long, value_enum)]
        stat: KindName,
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite and exit nonzero on any failed check.
    Verify {
        /// One of: row-mixed, col-mixed, product, psi, rho, theta, sigma,
        /// h-transport, invariance, words, matchings, catalan, all.
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Number of random shapes for the randomized suites.
        #[arg(long, default_value_t = 20)]
        shapes: usize,
        #[arg(long, default_value_t = 5)]
        max_rows: usize,
        #[arg(long, default_value_t = 5)]
        max_cols: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Apply one bijection and print its image.
    Bijection {
        /// One of: psi, psi-inv, phi-alpha, theta, Theta, rho, phi-gamma,
        /// xi, Sigma, h, lambda.
        #[arg(long)]
        map: String,
        shape: PathBuf,
        /// Filling file (or composition file for psi-inv).
        input: PathBuf,
        /// Row sums (psi-inv only).
        #[arg(long)]
        rows: Option<String>,
        /// Column sums (psi-inv only).
        #[arg(long)]
        cols: Option<String>,
        /// Anchor subset for Theta, Sigma, and lambda.
        #[arg(long)]
        subset: Option<String>,
        /// Row index for theta.
        #[arg(long)]
        row: Option<usize>,
        /// Column index for xi.
        #[arg(long)]
        col: Option<usize>,
        /// Target shape file for lambda.
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

impl Command {
    fn format(&self) -> Format {
        match self {
            Command::Validate { format, .. }
            | Command::Enumerate { format, .. }
            | Command::Stats { format, .. }
            | Command::Dist { format, .. }
            | Command::Verify { format, .. }
            | Command::Bijection { format, .. } => *format,
        }
    }
}

/// A deterministic run report: command echo, input digests, payload fields
/// in insertion order, named checks, and the wall time (excluded from the
/// determinism guarantee).
struct Report {
    command: String,
    inputs: Vec<(String, String)>,
    payload: Vec<(String, serde_json::Value)>,
    checks: Vec<(String, bool, String)>,
    wall_ms: f64,
}

impl Report {
    fn new() -> Report {
        let command: Vec<String> = std::env::args().collect();
        Report {
            command: command.join(" "),
            inputs: Vec::new(),
            payload: Vec::new(),
            checks: Vec::new(),
            wall_ms: 0.0,
        }
    }

    fn input(&mut self, path: &Path, bytes: &[u8]) {
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        self.inputs.push((path.display().to_string(), format!("{:x}", hasher.finalize())));
    }

    fn field(&mut self, key: &str, value: serde_json::Value) {
        self.payload.push((key.to_string(), value));
    }

    fn check(&mut self, name: &str, pass: bool, detail: &str) {
        self.checks.push((name.to_string(), pass, detail.to_string()));
    }

    fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, pass, _)| *pass)
    }

    fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for (path, digest) in &self.inputs {
            writeln!(out, "input: {path} sha256={digest}").unwrap();
        }
        for (key, value) in &self.payload {
            match value {
                serde_json::Value::String(s) if s.contains('\n') => {
                    writeln!(out, "{key}:").unwrap();
                    for line in s.lines() {
                        writeln!(out, "  {line}").unwrap();
                    }
                }
                serde_json::Value::String(s) => writeln!(out, "{key}: {s}").unwrap(),
                other => writeln!(out, "{key}: {other}").unwrap(),
            }
        }
        for (name, pass, detail) in &self.checks {
            let tag = if *pass { "PASS" } else { "FAIL" };
            if detail.is_empty() {
                writeln!(out, "{tag} {name}").unwrap();
            } else {
                writeln!(out, "{tag} {name}: {detail}").unwrap();
            }
        }
        writeln!(out, "wall_ms: {:.3}", self.wall_ms).unwrap();
        out
    }

    fn render_json(&self) -> serde_json::Value {
        let inputs: serde_json::Map<String, serde_json::Value> = self
            .inputs
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        let payload: serde_json::Map<String, serde_json::Value> =
            self.payload.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        json!({
            "command": self.command,
            "inputs": inputs,
            "payload": payload,
            "checks": self.checks.iter().map(|(name, pass, detail)| {
                json!({ "name": name, "pass": pass, "detail": detail })
            }).collect::<Vec<_>>(),
            "wall_ms": self.wall_ms,
        })
    }
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let threads = std::env::var("MOONFILL_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(1)
        .max(1);
    let format = cli.command.format();
    match dispatch(cli.command, threads) {
        Ok(mut report) => {
            report.wall_ms = started.elapsed().as_secs_f64() * 1e3;
            let code = i32::from(!report.all_pass());
            match format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => println!("{}", report.render_json()),
            }
            std::process::exit(code);
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(2);
        }
    }
}

fn read_file(report: &mut Report, path: &Path) -> Result<String> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    report.input(path, &bytes);
    String::from_utf8(bytes)
        .map_err(|_| Error::Parse(format!("{} is not valid UTF-8", path.display())))
}

fn load_shape(report: &mut Report, path: &Path) -> Result<Arc<MoonPolyomino>> {
    let text = read_file(report, path)?;
    Ok(Arc::new(io::parse_shape(&text)?))
}

fn parse_subset(subset: &Option<String>) -> Result<Vec<usize>> {
    match subset {
        None => Ok(Vec::new()),
        Some(text) => io::parse_vector(text),
    }
}

fn dispatch(command: Command, threads: usize) -> Result<Report> {
    let mut report = Report::new();
    match command {
        Command::Validate { shape, .. } => {
            let shape = load_shape(&mut report, &shape)?;
            let class = shape.classify_columns();
            report.field("rows", json!(shape.n()));
            report.field("cols", json!(shape.m()));
            report.field("area", json!(shape.area()));
            report.field("row_intervals", json!(shape
                .rows()
                .iter()
                .map(|r| json!([r.left, r.right]))
                .collect::<Vec<_>>()));
            report.field("col_lengths", json!(shape.col_lengths()));
            report.field("pivot", json!(class.pivot));
            report.field("left_part", json!(class.left_part()));
            report.field("right_part", json!(class.right_part()));
            report.field("column_order", json!(shape.precedence_order()));
            report.field("left_aligned", json!(shape.is_left_aligned()));
            report.field("top_aligned", json!(shape.is_top_aligned()));
            report.check("shape is a valid moon polyomino", true, "");
        }
        Command::Enumerate { shape, rows, cols, count, list, .. } => {
            let shape = load_shape(&mut report, &shape)?;
            let e = io::parse_vector(&rows)?;
            let s = io::parse_vector(&cols)?;
            let stream = filling::enumerate_fillings(&shape, &e, &s)?;
            let total;
            if count && !list {
                total = stream.count();
            } else {
                let mut lines = Vec::new();
                for (i, f) in stream.enumerate() {
                    let cells: Vec<String> =
                        f.cells().iter().map(|(r, c)| format!("({r},{c})")).collect();
                    lines.push(format!("{}: {}", i + 1, cells.join(" ")));
                }
                total = lines.len();
                report.field("fillings", json!(lines.join("\n")));
            }
            report.field("count", json!(total));
            if let Ok(formula) = poly::product_formula(&shape, &e, &s) {
                report.check(
                    "count matches the closed-form product",
                    formula.eval_at_one() == total.into(),
                    &formula.eval_at_one().to_string(),
                );
            }
        }
        Command::Stats { shape, filling, stat, subset, .. } => {
            let shape = load_shape(&mut report, &shape)?;
            let text = read_file(&mut report, &filling)?;
            let f = io::parse_filling(&text, &shape)?;
            let subset = parse_subset(&subset)?;
            let (ne, se) = f.ne_se();
            match stat {
                StatName::Ne => report.field("ne", json!(ne)),
                StatName::Se => report.field("se", json!(se)),
                StatName::Alpha | StatName::Beta => {
                    let kind =
                        if stat == StatName::Alpha { StatKind::Top } else { StatKind::Bottom };
                    let (value, complement) = f.mixed_pair(kind, &subset)?;
                    report.field("subset", json!(subset));
                    report.field("value", json!(value));
                    report.field("complement", json!(complement));
                }
                StatName::Gamma | StatName::Delta => {
                    let kind =
                        if stat == StatName::Gamma { StatKind::Left } else { StatKind::Right };
                    let (value, complement) = f.mixed_pair(kind, &subset)?;
                    report.field("subset", json!(subset));
                    report.field("value", json!(value));
                    report.field("complement", json!(complement));
                }
            }
            report.field("ne_se", json!([ne, se]));
        }
        Command::Dist { shape, rows, cols, stat, subset, .. } => {
            let shape = load_shape(&mut report, &shape)?;
            let e = io::parse_vector(&rows)?;
            let s = io::parse_vector(&cols)?;
            let subset = parse_subset(&subset)?;
            let dist = filling::distribution_par(&shape, &e, &s, stat.kind(), &subset, threads)?;
            report.field("subset", json!(subset));
            report.field("polynomial", json!(dist.to_string()));
            report.field("terms", dist.to_json());
            report.field("count", json!(dist.eval_at_one().to_string()));
            report.check("distribution is symmetric in p and q", dist.is_symmetric(), "");
        }
        Command::Verify { theorem, seed, shapes, max_rows, max_cols, .. } => {
            let config = Config { seed, shapes, max_rows, max_cols, threads };
            let selected: Vec<Theorem> = if theorem == "all" {
                Theorem::ALL.to_vec()
            } else {
                vec![Theorem::parse(&theorem).ok_or_else(|| {
                    Error::Parse(format!("unknown theorem `{theorem}`"))
                })?]
            };
            report.field("seed", json!(seed));
            for t in selected {
                let suite = verify::run(t, &config);
                for check in &suite.checks {
                    report.check(
                        &format!("{}: {}", suite.theorem, check.name),
                        check.pass,
                        &check.detail,
                    );
                }
            }
        }
        Command::Bijection { map, shape, input, rows, cols, subset, row, col, target, .. } => {
            let shape = load_shape(&mut report, &shape)?;
            let text = read_file(&mut report, &input)?;
            let subset = parse_subset(&subset)?;
            match map.as_str() {
                "psi" => {
                    let f = io::parse_filling(&text, &shape)?;
                    let cs = encoding::psi(&f);
                    report.field("compositions", json!(io::format_compositions(&cs)));
                }
                "psi-inv" => {
                    let cs = io::parse_compositions(&text, shape.m())?;
                    let e = io::parse_vector(&rows.ok_or_else(|| {
                        Error::Parse("psi-inv needs --rows".into())
                    })?)?;
                    let s = io::parse_vector(&cols.ok_or_else(|| {
                        Error::Parse("psi-inv needs --cols".into())
                    })?)?;
                    let f = encoding::psi_inv(&shape, &e, &s, &cs)?;
                    report.field("filling", json!(io::format_filling(&f)));
                }
                other => {
                    let f = io::parse_filling(&text, &shape)?;
                    let image = match other {
                        "phi-alpha" => bijections::phi_alpha(&f),
                        "theta" => {
                            let r = row.ok_or_else(|| Error::Parse("theta needs --row".into()))?;
                            bijections::theta_r(&f, r)?
                        }
                        "Theta" => {
                            let s = RowSubset::new(shape.n(), &subset)?;
                            bijections::theta_alpha(&f, &s)?
                        }
                        "rho" => bijections::rho(&f)?,
                        "phi-gamma" => bijections::phi_gamma(&f),
                        "xi" => {
                            let c = col.ok_or_else(|| Error::Parse("xi needs --col".into()))?;
                            bijections::xi_c(&f, c)?
                        }
                        "Sigma" => {
                            let t = ColSubset::new(shape.m(), &subset)?;
                            bijections::sigma_gamma(&f, &t)?
                        }
                        "h" => bijections::h_transport(&f),
                        "lambda" => {
                            let target_path = target
                                .ok_or_else(|| Error::Parse("lambda needs --target".into()))?;
                            let target = load_shape(&mut report, &target_path)?;
                            let s = RowSubset::new(shape.n(), &subset)?;
                            bijections::lambda_alpha(&f, &s, &target)?
                        }
                        unknown => {
                            return Err(Error::Parse(format!("unknown map `{unknown}`")));
                        }
                    };
                    let (ne, se) = f.ne_se();
                    let (ine, ise) = image.ne_se();
                    report.field("filling", json!(io::format_filling(&image)));
                    if image.shape() != shape.as_ref() {
                        report.field(
                            "image_shape",
                            json!(io::format_shape(image.shape())),
                        );
                    }
                    report.field("ne_se", json!([ne, se]));
                    report.field("image_ne_se", json!([ine, ise]));
                }
            }
            report.check("bijection applied", true, &map);
        }
    }
    Ok(report)
}
