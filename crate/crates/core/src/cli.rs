//! The `frobenius` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::composition::CompositionLimits;
use crate::error::{Error, Result};
use crate::field::FieldChoice;
use crate::frobenius::{betti_record, frobenius_complex, poincare_table, BettiConfig, Method};
use crate::gluing::verify_gluing;
use crate::io;
use crate::monoid::Monoid;
use crate::verify::{verify_compositions, verify_dirsum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CommandKind {
    Show,
    Interval,
    ExportComplex,
    Betti,
    Poincare,
    VerifyGluing,
    VerifyDirsum,
    VerifyComp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "frobenius",
    version,
    about = "Frobenius complexes and Betti numbers of affine monoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generators, grading and (with --bound) elements of a monoid.
    Show(RunArgs),
    /// The open interval (0, λ) as a poset.
    Interval(RunArgs),
    /// The Frobenius complex F(λ).
    ExportComplex(RunArgs),
    /// Tor-graded Betti vector at one element.
    Betti(RunArgs),
    /// Truncated Poincaré series.
    Poincare(RunArgs),
    /// Direct against predicted Betti vectors of a glued monoid.
    VerifyGluing(RunArgs),
    /// Direct table of a direct sum against the product of factor tables.
    VerifyDirsum(RunArgs),
    /// Composition posets against Frobenius complexes.
    VerifyComp(RunArgs),
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Monoid descriptor (JSON file).
    #[arg(long)]
    monoid: PathBuf,
    /// Second factor for verify-dirsum.
    #[arg(long)]
    monoid2: Option<PathBuf>,
    /// Element literal, e.g. "[6]" or '{"n":1,"hat1":[0],"hat2":[0]}'.
    #[arg(long)]
    element: Option<String>,
    /// Degree bound for tables and verification.
    #[arg(long)]
    bound: Option<u64>,
    /// Prime p for GF(p); rational coefficients if absent.
    #[arg(long)]
    field: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    #[arg(long, default_value_t = 1_000_000)]
    simplex_cap: usize,
}

/// A fully resolved invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub monoid_file: PathBuf,
    pub monoid2_file: Option<PathBuf>,
    pub element: Option<String>,
    pub degree_bound: Option<u64>,
    pub field: FieldChoice,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub jobs: Option<usize>,
    pub method: Method,
    pub simplex_cap: usize,
}

impl RunConfig {
    fn from_args(command: CommandKind, a: RunArgs) -> Result<Self> {
        let field = match a.field {
            Some(p) => FieldChoice::prime(p)?,
            None => FieldChoice::Rationals,
        };
        Ok(RunConfig {
            command,
            monoid_file: a.monoid,
            monoid2_file: a.monoid2,
            element: a.element,
            degree_bound: a.bound,
            field,
            output: a.output,
            format: a.format,
            jobs: a.jobs,
            method: a.method,
            simplex_cap: a.simplex_cap,
        })
    }

    fn betti_config(&self) -> BettiConfig {
        BettiConfig {
            field: self.field,
            method: self.method,
            simplex_cap: self.simplex_cap,
            ..Default::default()
        }
    }

    fn bound(&self) -> Result<u64> {
        self.degree_bound
            .ok_or_else(|| Error::InvalidArgument(format!("{:?} needs --bound", self.command)))
    }

    fn element_text(&self) -> Result<&str> {
        self.element
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument(format!("{:?} needs --element", self.command)))
    }
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (kind, args) = match cli.command {
        Cmd::Show(a) => (CommandKind::Show, a),
        Cmd::Interval(a) => (CommandKind::Interval, a),
        Cmd::ExportComplex(a) => (CommandKind::ExportComplex, a),
        Cmd::Betti(a) => (CommandKind::Betti, a),
        Cmd::Poincare(a) => (CommandKind::Poincare, a),
        Cmd::VerifyGluing(a) => (CommandKind::VerifyGluing, a),
        Cmd::VerifyDirsum(a) => (CommandKind::VerifyDirsum, a),
        Cmd::VerifyComp(a) => (CommandKind::VerifyComp, a),
    };
    match RunConfig::from_args(kind, args) {
        Ok(config) => run(&config),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Runs one command, writing its output; returns the exit code.
pub fn run(config: &RunConfig) -> i32 {
    let result = match config.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| execute(config)),
            Err(e) => Err(Error::InvalidArgument(format!("thread pool: {e}"))),
        },
        None => execute(config),
    };
    match result.and_then(|(text, code)| emit(config, &text).map(|_| code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn emit(config: &RunConfig, text: &str) -> Result<()> {
    match &config.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn unsupported(config: &RunConfig, format: Format) -> Error {
    Error::InvalidArgument(format!("{format:?} output is not available for {:?}", config.command))
}

/// Produces the output text and exit code of a command.
pub fn execute(config: &RunConfig) -> Result<(String, i32)> {
    let desc = io::read_descriptor(&config.monoid_file)?;
    let monoid = Monoid::new(desc.clone())?;
    let cfg = config.betti_config();
    let text_default = |f: Option<Format>| f.unwrap_or(Format::Text);
    match config.command {
        CommandKind::Show => {
            let elements = config.degree_bound.map(|b| monoid.elements_up_to(b));
            let gens: Vec<String> = monoid.generators().iter().map(|g| g.to_string()).collect();
            let degrees: Vec<u64> = monoid.generators().iter().map(|g| monoid.degree(g)).collect();
            match text_default(config.format) {
                Format::Json => {
                    let value = json!({
                        "descriptor": desc,
                        "generators": monoid.generators(),
                        "generator_degrees": degrees,
                        "zero": monoid.zero(),
                        "rho": monoid.rho(),
                        "elements": elements,
                    });
                    Ok((io::to_json(&value), 0))
                }
                Format::Text => {
                    let mut s = String::new();
                    let _ = writeln!(s, "descriptor: {}", serde_json::to_string(&desc).expect("json"));
                    let _ = writeln!(s, "zero: {}", monoid.zero());
                    for (g, d) in gens.iter().zip(&degrees) {
                        let _ = writeln!(s, "generator {g} degree {d}");
                    }
                    if let Some(rho) = monoid.rho() {
                        let _ = writeln!(s, "rho: {rho} degree {}", monoid.degree(&rho));
                    }
                    if let Some(elems) = elements {
                        for e in elems {
                            let _ = writeln!(s, "{:>4}  {e}", monoid.degree(&e));
                        }
                    }
                    Ok((s, 0))
                }
                f => Err(unsupported(config, f)),
            }
        }
        CommandKind::Interval => {
            let lam = io::parse_element(&monoid, config.element_text()?)?;
            if monoid.is_zero(&lam) {
                return Err(Error::InvalidArgument("the interval (0, 0) is not defined".into()));
            }
            let export = monoid.open_interval(&lam).export();
            match text_default(config.format) {
                Format::Json => Ok((io::to_json(&export), 0)),
                Format::Text => {
                    let mut s = String::new();
                    for (i, e) in export.elements.iter().enumerate() {
                        let _ = writeln!(s, "{i}: {e}");
                    }
                    for (a, b) in &export.covers {
                        let _ = writeln!(s, "{} < {}", export.elements[*a], export.elements[*b]);
                    }
                    Ok((s, 0))
                }
                f => Err(unsupported(config, f)),
            }
        }
        CommandKind::ExportComplex => {
            let lam = io::parse_element(&monoid, config.element_text()?)?;
            let complex = frobenius_complex(&monoid, &lam, config.simplex_cap)?;
            match config.format.unwrap_or(Format::Json) {
                Format::Json => Ok((io::to_json(&io::complex_file(&complex)), 0)),
                Format::Text => Ok((io::face_list(&complex), 0)),
                f => Err(unsupported(config, f)),
            }
        }
        CommandKind::Betti => {
            let lam = io::parse_element(&monoid, config.element_text()?)?;
            let record = betti_record(&monoid, &lam, &cfg)?;
            match config.format.unwrap_or(Format::Csv) {
                Format::Csv => Ok((io::betti_csv(&[(lam, record.betti)]), 0)),
                Format::Json => Ok((io::to_json(&record), 0)),
                Format::Text => Ok((format!("{lam}: {}\n", record.betti), 0)),
            }
        }
        CommandKind::Poincare => {
            let table = poincare_table(&monoid, config.bound()?, &cfg)?;
            match config.format.unwrap_or(Format::Csv) {
                Format::Csv => Ok((io::table_csv(&table), 0)),
                Format::Json => Ok((io::to_json(&table), 0)),
                Format::Text => Ok((io::table_text(&table), 0)),
            }
        }
        CommandKind::VerifyGluing | CommandKind::VerifyDirsum | CommandKind::VerifyComp => {
            let bound = config.bound()?;
            let report = match config.command {
                CommandKind::VerifyGluing => verify_gluing(&monoid, bound, &cfg)?,
                CommandKind::VerifyDirsum => {
                    let second = config
                        .monoid2_file
                        .as_ref()
                        .ok_or_else(|| Error::InvalidArgument("verify-dirsum needs --monoid2".into()))?;
                    verify_dirsum(&desc, &io::read_descriptor(second)?, bound, &cfg)?
                }
                _ => verify_compositions(&monoid, bound, &cfg, CompositionLimits::default()),
            };
            let code = report.exit_code();
            match text_default(config.format) {
                Format::Json => Ok((io::to_json(&report), code)),
                Format::Text => Ok((report.to_text(), code)),
                f => Err(unsupported(config, f)),
            }
        }
    }
}
