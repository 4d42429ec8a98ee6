//! Command-line front end: computes classes and degrees of singular strata with
//! the degeneration engine or the closed forms, compares the two, sweeps
//! degrees over `(n, d)` grids and manages the class cache.
//!
//! All structured output goes to the output stream; diagnostics go to the
//! error stream as one JSON object per line.  Exit codes: `0` success, `1`
//! mismatch, `2` usage error, `3` engine error.

pub mod cache;
pub mod engine;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use strata_closedforms::{closed_form_class, closed_form_degree, lifted_class, n_min, ClosedFormError, TypeId};
use strata_conditions::{condition_report, covariant_conditions, degree_of_minimal_class};
use strata_degen::DegenError;
use strata_diagram::{NewtonDiagram, NormalForm};
use strata_interp::{fit_across_n, sweep, InterpError};
use strata_ring::{rat, Basis, DPolyQ, NumClass, Rational, RingError, Var};
use thiserror::Error;

pub use cache::{Cache, CacheError, CacheKey, CACHE_ENV};
pub use engine::{engine_classes, normalize, EngineClasses};

/// Failures of a CLI invocation, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments.
    #[error("{0}")]
    Usage(String),
    /// Engine and closed form disagree.
    #[error("{0}")]
    Mismatch(String),
    /// The engine failed.
    #[error(transparent)]
    Engine(#[from] DegenError),
    /// The closed-form library failed.
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    /// Ring arithmetic failed.
    #[error(transparent)]
    Ring(#[from] RingError),
    /// The cache failed.
    #[error(transparent)]
    Cache(#[from] CacheError),
    /// Fitting failed.
    #[error(transparent)]
    Interp(#[from] InterpError),
    /// Reading an input file failed.
    #[error("cannot read {path}: {message}")]
    Input {
        /// The file.
        path: String,
        /// Why.
        message: String,
    },
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) | CliError::Interp(InterpError::InconsistentSamples { .. }) => 1,
            CliError::Interp(
                InterpError::InsufficientSamples { .. } | InterpError::DuplicatePoint(_) | InterpError::EmptyRange,
            ) => 2,
            CliError::Usage(_) | CliError::Input { .. } => 2,
            CliError::ClosedForm(ClosedFormError::OutOfValidity { .. } | ClosedFormError::InvalidType(_)) => 2,
            _ => 3,
        }
    }

    /// Short machine-readable kind.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Mismatch(_) => "Mismatch",
            CliError::Engine(DegenError::NonUnique { .. }) => "NonUnique",
            CliError::Engine(DegenError::NoSolution { .. }) => "NoSolution",
            CliError::Engine(_) => "Engine",
            CliError::ClosedForm(ClosedFormError::OutOfValidity { .. }) => "OutOfValidity",
            CliError::ClosedForm(ClosedFormError::InvalidType(_)) => "InvalidType",
            CliError::ClosedForm(ClosedFormError::UnknownConstant { .. }) => "UnknownConstant",
            CliError::ClosedForm(_) => "ClosedForm",
            CliError::Ring(_) => "Ring",
            CliError::Cache(_) => "Cache",
            CliError::Interp(_) => "Interp",
            CliError::Input { .. } => "Input",
        }
    }

    /// The JSON object written to the error stream.
    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() })
    }
}

/// Where a class comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// The degeneration engine.
    Engine,
    /// The closed-form library.
    ClosedForm,
}

#[derive(Parser, Debug)]
#[command(name = "strata", version, about = "Classes and degrees of singular strata of hypersurfaces")]
struct Cli {
    /// Cache file (default: $STRATA_CACHE, else ~/.cache/strata/classes.jsonl).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Neither read nor write the class cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct TypeArgs {
    /// Type name: A1..A4, D4..D6, E6, P8, X9, Q10, S11, U12, ordinary<p>,
    /// corank<r>, red[r:p,...] or discriminant.
    #[arg(long = "type")]
    type_name: String,
    /// Dimension of the projective space.
    #[arg(long)]
    n: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a class as canonical JSON (lifted class by default).
    Class {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_enum, default_value = "engine")]
        source: Source,
        /// Print the class of the minimal lifting instead.
        #[arg(long)]
        minimal: bool,
        /// Specialize the degree and print in the F basis.
        #[arg(long, allow_negative_numbers = true)]
        d: Option<i64>,
        /// Expand into the F basis with coefficients polynomial in d.
        #[arg(long)]
        expand: bool,
        /// Human-readable polynomial text instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Print the degree of the stratum, a polynomial in d (or its value).
    Degree {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_enum, default_value = "engine")]
        source: Source,
        #[arg(long, allow_negative_numbers = true)]
        d: Option<i64>,
    },
    /// Print the covariant condition list of a diagram or normal form.
    Conditions {
        /// Diagram JSON file.
        #[arg(long, conflicts_with_all = ["type_name", "n"])]
        diagram: Option<PathBuf>,
        #[arg(long = "type", requires = "n")]
        type_name: Option<String>,
        #[arg(long, requires = "type_name")]
        n: Option<u32>,
    },
    /// Compare the engine with the closed form; exit 1 on mismatch.
    Compare {
        #[command(flatten)]
        t: TypeArgs,
    },
    /// Fit the degree as a polynomial in d for each n and check every sample.
    Sweep {
        #[arg(long = "type")]
        type_name: String,
        /// Dimensions: `a..b` (inclusive), `a,b,c` or a single value.
        #[arg(long)]
        n: String,
        /// Sample degrees: `a..b` (inclusive), `a,b,c` or a single value.
        #[arg(long, allow_negative_numbers = true)]
        d: String,
        #[arg(long, value_enum, default_value = "engine")]
        source: Source,
        /// Also fit each coefficient of d^k across n with this degree bound.
        #[arg(long)]
        across_n: Option<usize>,
    },
    /// Inspect or clear the class cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum CacheAction {
    /// Print the cache file location.
    Path,
    /// Print one JSON line per valid entry.
    List,
    /// Validate every line; exit 1 if any is corrupt.
    Verify,
    /// Delete the cache file.
    Clear,
}

struct Ctx<'a, O: Write, E: Write> {
    out: &'a mut O,
    err: &'a mut E,
    cache: Option<Cache>,
}

impl<O: Write, E: Write> Ctx<'_, O, E> {
    fn emit(&mut self, line: &str) -> Result<(), CliError> {
        writeln!(self.out, "{line}").map_err(|e| CliError::Input { path: "<stdout>".into(), message: e.to_string() })
    }

    fn warn(&mut self, w: &CacheError) {
        let line = match w {
            CacheError::CorruptCache { line, reason } => {
                json!({ "warning": "CorruptCache", "line": line, "message": reason })
            }
            other => json!({ "warning": "Cache", "message": other.to_string() }),
        };
        let _ = writeln!(self.err, "{line}");
    }

    /// Engine classes, through the cache when one is open.
    fn engine(&mut self, t: &TypeId, n: u32) -> Result<EngineClasses, CliError> {
        let name = t.to_string();
        let find = |cache: &Cache, kind: &str| {
            cache
                .entries()
                .iter()
                .find(|(k, _)| k.type_name == name && k.n == n && k.kind == kind)
                .map(|(_, c)| c.clone())
        };
        if let Some(cache) = &self.cache {
            if let (Some(lifted), Some(minimal)) = (find(cache, "lifted"), find(cache, "minimal")) {
                return Ok(EngineClasses { lifted, minimal });
            }
        }
        let classes = engine_classes(t, n)?;
        if let Some(cache) = &mut self.cache {
            let key = |c: &NumClass, kind: &str| CacheKey {
                type_name: name.clone(),
                n,
                basis: c.spec().basis.to_string(),
                kind: kind.to_string(),
            };
            let stored = cache
                .put(key(&classes.lifted, "lifted"), &classes.lifted)
                .and_then(|()| cache.put(key(&classes.minimal, "minimal"), &classes.minimal));
            if let Err(e) = stored {
                self.warn(&e);
            }
        }
        Ok(classes)
    }

    fn minimal(&mut self, t: &TypeId, n: u32, source: Source) -> Result<NumClass, CliError> {
        match source {
            Source::Engine => Ok(self.engine(t, n)?.minimal),
            Source::ClosedForm => Ok(closed_form_class(t, n)?),
        }
    }
}

/// Parses a type name and checks the dimension against its validity range.
pub fn parse_type(name: &str, n: u32) -> Result<TypeId, CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let t: TypeId = name.parse()?;
    let lo = n_min(&t)?;
    if n < lo {
        return Err(ClosedFormError::OutOfValidity { name: t.to_string(), n, n_min: lo }.into());
    }
    Ok(t)
}

/// Parses `a..b` (inclusive), `a,b,c` or a single integer.
pub fn parse_range<T>(text: &str) -> Result<Vec<T>, CliError>
where
    T: std::str::FromStr + Copy + PartialOrd + TryFrom<i64>,
    i64: From<T>,
{
    let bad = || CliError::Usage(format!("bad range '{text}' (use a..b, a,b,c or a single value)"));
    let one = |s: &str| s.trim().parse::<T>().map_err(|_| bad());
    let values: Vec<T> = if let Some((a, b)) = text.split_once("..") {
        let (a, b) = (i64::from(one(a)?), i64::from(one(b)?));
        if a > b {
            return Err(bad());
        }
        (a..=b).map(|v| T::try_from(v).map_err(|_| bad())).collect::<Result<_, _>>()?
    } else {
        text.split(',').map(one).collect::<Result<_, _>>()?
    };
    if values.is_empty() {
        return Err(bad());
    }
    Ok(values)
}

/// Degree of a minimal class at a fixed `d`, evaluated numerically.
pub fn degree_at(minimal: &NumClass, d: i64) -> Result<Rational, CliError> {
    let n = minimal.spec().n;
    let top = minimal.rebase_at(Basis::F, &rat(d))?.gysin_extract(&[(Var::X, n)])?;
    Ok(top.terms().fold(rat(0), |acc, (_, c)| acc + c))
}

fn degree_poly(minimal: &NumClass) -> Result<DPolyQ, CliError> {
    degree_of_minimal_class(minimal).map_err(|e| CliError::Engine(e.into()))
}

fn render(class: &NumClass, d: Option<i64>, expand: bool, text: bool) -> Result<String, CliError> {
    Ok(match (d, expand) {
        (Some(d), _) => {
            let c = class.rebase_at(Basis::F, &rat(d))?;
            if text { c.to_text() } else { c.to_json() }
        }
        (None, true) => {
            let c = class.lift().rebase(Basis::F)?;
            if text { c.to_text() } else { c.to_json() }
        }
        (None, false) => {
            if text { class.to_text() } else { class.to_json() }
        }
    })
}

fn execute<O: Write, E: Write>(ctx: &mut Ctx<'_, O, E>, command: Command) -> Result<(), CliError> {
    match command {
        Command::Class { t, source, minimal, d, expand, text } => {
            let ty = parse_type(&t.type_name, t.n)?;
            let class = match (source, minimal) {
                (Source::Engine, false) => ctx.engine(&ty, t.n)?.lifted,
                (Source::Engine, true) => ctx.engine(&ty, t.n)?.minimal,
                (Source::ClosedForm, true) => closed_form_class(&ty, t.n)?,
                (Source::ClosedForm, false) => match lifted_class(&ty.to_string(), t.n) {
                    Ok(l) => l.class,
                    Err(ClosedFormError::Missing(_)) => {
                        return Err(CliError::Usage(format!("no lifted closed form for {ty}; use --minimal")))
                    }
                    Err(e) => return Err(e.into()),
                },
            };
            let line = render(&class, d, expand, text)?;
            ctx.emit(&line)
        }
        Command::Degree { t, source, d } => {
            let ty = parse_type(&t.type_name, t.n)?;
            let line = match (source, d) {
                (Source::Engine, Some(d)) => degree_at(&ctx.engine(&ty, t.n)?.minimal, d)?.to_string(),
                (Source::Engine, None) => degree_poly(&ctx.engine(&ty, t.n)?.minimal)?.to_string(),
                (Source::ClosedForm, Some(d)) => closed_form_degree(&ty, t.n)?.eval(&rat(d)).to_string(),
                (Source::ClosedForm, None) => closed_form_degree(&ty, t.n)?.to_string(),
            };
            ctx.emit(&line)
        }
        Command::Conditions { diagram, type_name, n } => {
            let diagram = match (diagram, type_name, n) {
                (Some(path), _, _) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| CliError::Input { path: path.display().to_string(), message: e.to_string() })?;
                    NewtonDiagram::from_json(&text).map_err(|e| CliError::Usage(e.to_string()))?
                }
                (None, Some(name), Some(n)) => {
                    if n == 0 {
                        return Err(CliError::Usage("n must be at least 1".into()));
                    }
                    let form: NormalForm = name.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
                    form.diagram(n as usize).map_err(|e| CliError::Usage(e.to_string()))?
                }
                _ => return Err(CliError::Usage("give --diagram FILE or --type T --n N".into())),
            };
            let spec = covariant_conditions(&diagram).map_err(DegenError::from)?;
            let report = serde_json::to_string(&condition_report(&spec)).expect("report serializes");
            ctx.emit(&report)
        }
        Command::Compare { t } => {
            let ty = parse_type(&t.type_name, t.n)?;
            let oracle = closed_form_class(&ty, t.n)?;
            let oracle_degree = closed_form_degree(&ty, t.n)?;
            let engine = ctx.engine(&ty, t.n)?.minimal;
            let engine_degree = degree_poly(&engine)?;
            let equal = engine == oracle;
            let degree_equal = engine_degree == oracle_degree;
            let report = json!({
                "type": ty.to_string(),
                "n": t.n,
                "equal": equal,
                "degree_equal": degree_equal,
                "engine_degree": engine_degree.to_string(),
                "closed_form_degree": oracle_degree.to_string(),
            });
            ctx.emit(&report.to_string())?;
            if equal && degree_equal {
                Ok(())
            } else {
                Err(CliError::Mismatch(format!("engine and closed form differ for {ty} in dimension {}", t.n)))
            }
        }
        Command::Sweep { type_name, n, d, source, across_n } => {
            let ns: Vec<u32> = parse_range(&n)?;
            let ds: Vec<i64> = parse_range(&d)?;
            let mut classes = Vec::with_capacity(ns.len());
            for &n in &ns {
                let ty = parse_type(&type_name, n)?;
                classes.push((n, ctx.minimal(&ty, n, source)?));
            }
            let name = parse_type(&type_name, ns[0])?.to_string();
            let evaluate = |n: u32, d: i64| {
                let class = &classes.iter().find(|(m, _)| *m == n).expect("class computed for every n").1;
                degree_at(class, d).map_err(|e| e.to_string())
            };
            let table = sweep(&name, evaluate, &ns, &ds, |n| n as usize)?;
            for report in &table.reports {
                let line = serde_json::to_string(report).expect("report serializes");
                ctx.emit(&line)?;
            }
            if let Some(bound) = across_n {
                let fits = fit_across_n(&table.fits, bound)?;
                let rows: Vec<serde_json::Value> = fits
                    .iter()
                    .enumerate()
                    .map(|(k, p)| json!({ "power_of_d": k, "poly_in_n": p.to_string_in("n") }))
                    .collect();
                ctx.emit(&json!({ "type": name, "across_n": rows }).to_string())?;
            }
            Ok(())
        }
        Command::Cache { .. } => unreachable!("handled before the cache is opened"),
    }
}

fn cache_command<O: Write, E: Write>(
    ctx: &mut Ctx<'_, O, E>,
    path: Option<PathBuf>,
    action: CacheAction,
) -> Result<(), CliError> {
    let path = path.ok_or_else(|| CliError::Usage(format!("no cache path: set {CACHE_ENV} or HOME, or pass --cache")))?;
    match action {
        CacheAction::Path => ctx.emit(&path.display().to_string()),
        CacheAction::Clear => {
            let (mut cache, _) = Cache::load(&path)?;
            cache.clear()?;
            ctx.emit(&json!({ "cleared": path.display().to_string() }).to_string())
        }
        CacheAction::List | CacheAction::Verify => {
            let (cache, warnings) = Cache::load(&path)?;
            for w in &warnings {
                ctx.warn(w);
            }
            if matches!(action, CacheAction::List) {
                for (key, class) in cache.entries() {
                    let line = json!({
                        "type": key.type_name,
                        "n": key.n,
                        "basis": key.basis,
                        "kind": key.kind,
                        "terms": class.len(),
                        "sha256": cache::class_checksum(class),
                    });
                    ctx.emit(&line.to_string())?;
                }
                Ok(())
            } else {
                ctx.emit(&json!({ "valid": cache.entries().len(), "corrupt": warnings.len() }).to_string())?;
                if warnings.is_empty() {
                    Ok(())
                } else {
                    Err(CliError::Mismatch(format!("{} corrupt cache line(s)", warnings.len())))
                }
            }
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let error = CliError::Usage(e.render().to_string().trim().to_string());
            let _ = writeln!(err, "{}", error.to_json());
            return error.exit_code();
        }
    };
    let path = cli.cache.clone().or_else(Cache::default_path);
    let mut ctx = Ctx { out, err, cache: None };
    let result = match cli.command {
        Command::Cache { action } => cache_command(&mut ctx, path, action),
        command => {
            if !cli.no_cache {
                if let Some(path) = path {
                    match Cache::load(path) {
                        Ok((cache, warnings)) => {
                            for w in &warnings {
                                ctx.warn(w);
                            }
                            ctx.cache = Some(cache);
                        }
                        Err(e) => ctx.warn(&e),
                    }
                }
            }
            execute(&mut ctx, command)
        }
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(ctx.err, "{}", e.to_json());
            e.exit_code()
        }
    }
}
