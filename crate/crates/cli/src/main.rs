mod cache;
mod output;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use hecke_core::cellular::CellularBasis;
use hecke_core::schur::{consistency_report, gram_det_closed, SchurRecord};
use hecke_core::scalars::{parse_rational, rational_str, FactoredScalar};
use hecke_core::verify::{gamma_rows, parse_suites, run, Context, GammaRow, Suite, SuiteReport};
use hecke_core::{
    default_binding, multipartitions, standard_tableaux, Algebra, Error, Multipartition,
    ParamBinding, Rational,
};

use cache::Cache;
use output::{emit, Format, Row};

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Exact computations in degenerate cyclotomic Hecke algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Schur elements by every route.
    Schur,
    /// Gram determinants of the Specht modules against Π γ_t.
    Gram,
    /// γ_t for every standard tableau, factored and evaluated.
    Gamma,
    /// Standard tableaux with their residues.
    Tableaux,
    /// Dimension identities.
    Dims,
    /// Run verification suites; exits 1 on any failure.
    Verify,
}

#[derive(clap::Args, Debug, Default)]
struct Opts {
    /// Number of parameters q_1..q_m.
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Rank of the symmetric group.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Comma-separated parameter values, e.g. "0,7" or "0,1/2".
    #[arg(long, global = true)]
    q: Option<String>,
    /// JSON binding file {"m":..,"n":..,"q":["0","7"]}.
    #[arg(long, global = true)]
    binding: Option<PathBuf>,
    /// JSON config file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    output: Option<Format>,
    /// "all" or a comma-separated list of suites.
    #[arg(long, global = true)]
    suites: Option<String>,
    #[arg(long, global = true, env = "HECKE_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Restrict to one multipartition, e.g. "3.1|1".
    #[arg(long, global = true)]
    shape: Option<String>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    m: Option<usize>,
    n: Option<usize>,
    q: Option<Vec<String>>,
    output: Option<Format>,
    suites: Option<String>,
    cache_dir: Option<PathBuf>,
    seed: Option<u64>,
    shape: Option<String>,
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Core(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> CliError {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::SingularTransition | Error::ZeroTrace) => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(s) => write!(f, "config error: {s}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

struct RunConfig {
    command: Command,
    binding: ParamBinding,
    output: Format,
    suites: Vec<Suite>,
    cache: Option<Cache>,
    seed: u64,
    shape: Option<Multipartition>,
}

fn parse_q(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',').map(|x| parse_rational(x.trim()).map_err(CliError::Core)).collect()
}

fn resolve(cli: Cli) -> Result<RunConfig, CliError> {
    let file = match &cli.opts.config {
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?
        }
        None => FileConfig::default(),
    };
    let o = cli.opts;
    let q = match (&o.q, &file.q) {
        (Some(s), _) => Some(parse_q(s)?),
        (None, Some(v)) => Some(v.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>, _>>()?),
        _ => None,
    };
    let from_file = match &o.binding {
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            Some(ParamBinding::from_json(&text)?)
        }
        None => None,
    };
    let m = o.m.or(file.m).or(q.as_ref().map(Vec::len)).or(from_file.as_ref().map(|b| b.m));
    let n = o.n.or(file.n).or(from_file.as_ref().map(|b| b.n));
    let (Some(m), Some(n)) = (m, n) else {
        return Err(CliError::Config("both --m and --n are required".into()));
    };
    if m == 0 || n == 0 {
        return Err(CliError::Config("m and n must be positive".into()));
    }
    let binding = match (q, from_file) {
        (Some(q), _) => ParamBinding::new(n, q),
        (None, Some(b)) => ParamBinding::new(n, b.q),
        (None, None) => default_binding(m, n),
    };
    if binding.m != m {
        return Err(CliError::Config(format!("binding has {} parameters but m = {m}", binding.m)));
    }
    let suites = parse_suites(o.suites.as_deref().or(file.suites.as_deref()).unwrap_or("all"))
        .map_err(|e| CliError::Config(e.to_string()))?;
    let shape = match o.shape.or(file.shape) {
        Some(s) => {
            let l = Multipartition::parse(&s).map_err(|e| CliError::Config(e.to_string()))?;
            if l.m() != m || l.n() != n {
                return Err(CliError::Config(format!("shape {s} is not an {m}-multipartition of {n}")));
            }
            Some(l)
        }
        None => None,
    };
    let cache = match o.cache_dir.or(file.cache_dir) {
        Some(dir) => Some(Cache::new(&dir)?),
        None => None,
    };
    Ok(RunConfig {
        command: cli.command,
        binding,
        output: o.output.or(file.output).unwrap_or(Format::Json),
        suites,
        cache,
        seed: o.seed.or(file.seed).unwrap_or(0),
        shape,
    })
}

impl Row for SchurRecord {
    const HEADER: &'static [&'static str] =
        &["lambda", "schur_factored", "schur_value", "routes_agree", "palindromic"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.lambda.clone(),
            self.schur_factored.to_string(),
            self.schur_value.to_string(),
            self.routes_agree.to_string(),
            self.palindromic.to_string(),
        ]
    }
}

impl Row for GammaRow {
    const HEADER: &'static [&'static str] = &["lambda", "tableau", "gamma_factored", "gamma_value"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.lambda.clone(),
            self.tableau.clone(),
            self.gamma_factored.to_string(),
            self.gamma_value.to_string(),
        ]
    }
}

#[derive(Serialize)]
struct GramRow {
    lambda: String,
    dim: usize,
    #[serde(with = "rational_str")]
    determinant: Rational,
    gamma_product: FactoredScalar,
    #[serde(with = "rational_str")]
    gamma_product_value: Rational,
    agree: bool,
    matrix: Vec<Vec<String>>,
}

impl Row for GramRow {
    const HEADER: &'static [&'static str] =
        &["lambda", "dim", "determinant", "gamma_product", "gamma_product_value", "agree"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.lambda.clone(),
            self.dim.to_string(),
            self.determinant.to_string(),
            self.gamma_product.to_string(),
            self.gamma_product_value.to_string(),
            self.agree.to_string(),
        ]
    }
}

#[derive(Serialize)]
struct TableauRow {
    lambda: String,
    index: usize,
    tableau: String,
    residues: Vec<String>,
    residue_values: Vec<String>,
}

impl Row for TableauRow {
    const HEADER: &'static [&'static str] = &["lambda", "index", "tableau", "residues", "residue_values"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.lambda.clone(),
            self.index.to_string(),
            self.tableau.clone(),
            self.residues.join(";"),
            self.residue_values.join(";"),
        ]
    }
}

#[derive(Serialize)]
struct DimsRow {
    m: usize,
    n: usize,
    shapes: usize,
    dimension: usize,
    sum_std_squared: usize,
    agree: bool,
}

impl Row for DimsRow {
    const HEADER: &'static [&'static str] = &["m", "n", "shapes", "dimension", "sum_std_squared", "agree"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.m.to_string(),
            self.n.to_string(),
            self.shapes.to_string(),
            self.dimension.to_string(),
            self.sum_std_squared.to_string(),
            self.agree.to_string(),
        ]
    }
}

impl Row for SuiteReport {
    const HEADER: &'static [&'static str] = &["suite", "m", "n", "checks", "failed", "passed"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.suite.to_string(),
            self.m.to_string(),
            self.n.to_string(),
            self.checks.to_string(),
            self.failed.to_string(),
            self.passed().to_string(),
        ]
    }
}

fn shapes(cfg: &RunConfig) -> Vec<Multipartition> {
    match &cfg.shape {
        Some(l) => vec![l.clone()],
        None => multipartitions(cfg.binding.m, cfg.binding.n),
    }
}

fn cellular_basis(cfg: &RunConfig, alg: &Algebra) -> Result<CellularBasis, CliError> {
    match &cfg.cache {
        Some(cache) => {
            let (cb, hit) = cache.get_or_compute(&cfg.binding, "cellular", || {
                CellularBasis::new(alg).map_err(CliError::Core)
            })?;
            eprintln!("cache {}: cellular basis", if hit { "hit" } else { "miss" });
            Ok(cb)
        }
        None => Ok(CellularBasis::new(alg)?),
    }
}

/// Returns the rendered report and whether every check passed.
fn execute(cfg: &RunConfig) -> Result<(String, bool), CliError> {
    let b = &cfg.binding;
    match cfg.command {
        Command::Schur => {
            b.require_generic()?;
            let alg = Algebra::new(b);
            let mut rows = consistency_report(&alg)?;
            if let Some(l) = &cfg.shape {
                rows.retain(|r| r.lambda == l.to_string());
            }
            let ok = rows.iter().all(|r| r.routes_agree && r.palindromic);
            Ok((emit(&rows, cfg.output), ok))
        }
        Command::Gram => {
            b.require_generic()?;
            let alg = Algebra::new(b);
            let cb = cellular_basis(cfg, &alg)?;
            let mut rows = Vec::new();
            for l in shapes(cfg) {
                let li = cb.shape_index(&l).expect("shape of the basis");
                let g = cb.gram(&alg, li);
                let det = g.det();
                let prod = gram_det_closed(&l);
                let value = prod.evaluate(b)?;
                let matrix = (0..g.rows)
                    .map(|i| g.row(i).iter().map(|v| v.to_string()).collect())
                    .collect();
                rows.push(GramRow {
                    lambda: l.to_string(),
                    dim: g.rows,
                    agree: det == value,
                    determinant: det,
                    gamma_product: prod,
                    gamma_product_value: value,
                    matrix,
                });
            }
            let ok = rows.iter().all(|r| r.agree);
            Ok((emit(&rows, cfg.output), ok))
        }
        Command::Gamma => {
            b.require_generic()?;
            let mut rows = gamma_rows(b)?;
            if let Some(l) = &cfg.shape {
                rows.retain(|r| r.lambda == l.to_string());
            }
            Ok((emit(&rows, cfg.output), true))
        }
        Command::Tableaux => {
            let mut rows = Vec::new();
            for l in shapes(cfg) {
                for (i, t) in standard_tableaux(&l).iter().enumerate() {
                    let res = t.residues();
                    rows.push(TableauRow {
                        lambda: l.to_string(),
                        index: i,
                        tableau: t.to_string(),
                        residues: res.iter().map(|&r| FactoredScalar::residue(r).to_string()).collect(),
                        residue_values: res.iter().map(|&r| b.residue_value(r).to_string()).collect(),
                    });
                }
            }
            Ok((emit(&rows, cfg.output), true))
        }
        Command::Dims => {
            let all = multipartitions(b.m, b.n);
            let sum: usize = all.iter().map(|l| standard_tableaux(l).len().pow(2)).sum();
            let dimension = b.m.pow(b.n as u32) * (1..=b.n).product::<usize>();
            let row = DimsRow {
                m: b.m,
                n: b.n,
                shapes: all.len(),
                dimension,
                sum_std_squared: sum,
                agree: sum == dimension,
            };
            let ok = row.agree;
            Ok((emit(&[row], cfg.output), ok))
        }
        Command::Verify => {
            let ctx = if cfg.suites.iter().any(|s| {
                matches!(s, Suite::Cellular | Suite::Seminormal | Suite::MatrixUnits)
            }) {
                let alg = Algebra::new(b);
                Context::with_cellular(b, cfg.seed, cellular_basis(cfg, &alg)?)
            } else {
                Context::new(b, cfg.seed)
            };
            let mut reports = Vec::new();
            for &s in &cfg.suites {
                let r = run(&ctx, s)?;
                eprintln!("{}: {}/{} checks passed", s, r.checks - r.failed, r.checks);
                reports.push(r);
            }
            let ok = reports.iter().all(SuiteReport::passed);
            Ok((emit(&reports, cfg.output), ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = resolve(cli).and_then(|cfg| execute(&cfg));
    match result {
        Ok((text, ok)) => {
            let mut out = io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("hecke: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
