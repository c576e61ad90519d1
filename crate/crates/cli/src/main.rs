//! `coxtype`: command-line front end.
//!
//! Exit status: 0 on success, 1 when `--verify` finds a mismatch against the
//! golden data (or no golden data), 2 on invalid input.

mod cache;
mod error;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use coxtype::classify::{sweep_quadruples, verdict_from_eo, ClassificationVerdict};
use coxtype::{EoData, Family, LambdaSpec, LatticeModel, Quadruple, RootDatum, Word};

use crate::cache::Cache;
use crate::error::CliError;
use crate::report::Output;

#[derive(Parser)]
#[command(name = "coxtype", version, about = "EO elements, Newton points and basic loci of Coxeter type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Directory for cached EO element lists.
    #[arg(long, env = "COXTYPE_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Compare the output with the golden file instead of only printing it.
    #[arg(long, global = true)]
    verify: bool,
    /// Overwrite the golden file with the current output.
    #[arg(long, global = true, conflicts_with = "verify")]
    write_golden: bool,
    #[arg(long, env = "COXTYPE_GOLDEN_DIR", global = true)]
    golden_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args, Clone)]
struct QuadArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    rank: usize,
    /// GL model (the default for family A).
    #[arg(long, conflicts_with = "adjoint")]
    gl: bool,
    /// Adjoint model for family A.
    #[arg(long)]
    adjoint: bool,
    /// `omega:k` or `2omega:k`.
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    removed_vertex: usize,
    /// `id`, `sigma0`, `tau:k`, `tau:k*sigma0` or `pi:a,b,...`.
    #[arg(long, default_value = "id")]
    sigma: String,
}

#[derive(Subcommand)]
enum Command {
    /// Full verdict for one quadruple.
    Classify(QuadArgs),
    /// Verdicts for every quadruple up to a rank bound.
    Sweep {
        #[arg(long, default_value_t = 6)]
        max_rank: usize,
    },
    /// The EO elements with per-element records.
    Eo(QuadArgs),
    /// Newton points of the straight non-Coxeter EO elements.
    Newton(QuadArgs),
    /// Index set of the stratification of the basic locus.
    Strata(QuadArgs),
    /// Closure relations between strata.
    Closure(QuadArgs),
    /// Smoothness of the closed strata.
    Smoothness(QuadArgs),
    /// Check a proposed failure witness.
    Witness {
        #[command(flatten)]
        q: QuadArgs,
        #[arg(long)]
        word: String,
    },
    /// EO elements labelled by whether their stratum lies in the basic locus.
    BasicLocus(QuadArgs),
    /// Minimal element under partial σ-conjugation by W_J.
    Reduce {
        #[command(flatten)]
        q: QuadArgs,
        #[arg(long)]
        word: String,
    },
    /// Compare two elements in ≤_{J,σ} and in the Bruhat order.
    Leq {
        #[command(flatten)]
        q: QuadArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        w: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify(_) => "classify",
            Command::Sweep { .. } => "sweep",
            Command::Eo(_) => "eo",
            Command::Newton(_) => "newton",
            Command::Strata(_) => "strata",
            Command::Closure(_) => "closure",
            Command::Smoothness(_) => "smoothness",
            Command::Witness { .. } => "witness",
            Command::BasicLocus(_) => "basic-locus",
            Command::Reduce { .. } => "reduce",
            Command::Leq { .. } => "leq",
        }
    }
}

fn quadruple(a: &QuadArgs) -> Result<Quadruple, CliError> {
    let family = Family::parse(&a.family)?;
    let model = if a.adjoint {
        LatticeModel::Adjoint
    } else if a.gl {
        LatticeModel::Gl
    } else {
        LatticeModel::default_for(family)
    };
    let datum = Arc::new(RootDatum::new(family, a.rank, model)?);
    let sigma = datum.parse_sigma(&a.sigma)?;
    Ok(Quadruple::new(datum, LambdaSpec::parse(&a.lambda)?, a.removed_vertex, sigma)?)
}

/// File-name stem for a quadruple's golden data.
fn slug(q: &Quadruple) -> String {
    let raw = format!("{}_{}_v{}_{}", q.datum.name(), q.lambda, q.removed, q.sigma.label);
    raw.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '-' })
        .collect()
}

struct Ctx {
    cache: Option<Cache>,
}

impl Ctx {
    fn eo(&self, q: &Quadruple) -> Result<EoData, CliError> {
        match &self.cache {
            Some(c) => c.eo(q),
            None => Ok(coxtype::eo_set(q)?),
        }
    }

    fn verdict(&self, q: &Quadruple) -> Result<ClassificationVerdict, CliError> {
        Ok(verdict_from_eo(q, self.eo(q)?))
    }
}

/// Output, golden-file stem, and whether the built-in invariants hold.
fn dispatch(cmd: &Command, ctx: &Ctx) -> Result<(Output, Option<String>, bool), CliError> {
    Ok(match cmd {
        Command::Classify(a) => {
            let v = ctx.verdict(&quadruple(a)?)?;
            (report::classify(&v)?, Some(slug(&v.quadruple)), v.coherent())
        }
        Command::Sweep { max_rank } => {
            let qs = sweep_quadruples(*max_rank);
            let vs: Vec<ClassificationVerdict> = qs.par_iter().map(|q| ctx.verdict(q)).collect::<Result<_, _>>()?;
            let coherent = vs.iter().all(ClassificationVerdict::coherent);
            (report::sweep(*max_rank, &vs), Some(format!("max-rank-{max_rank}")), coherent)
        }
        Command::Eo(a) => {
            let q = quadruple(a)?;
            (report::eo(&q, &ctx.eo(&q)?), Some(slug(&q)), true)
        }
        Command::Newton(a) => {
            let q = quadruple(a)?;
            (report::newton(&q, &ctx.eo(&q)?), Some(slug(&q)), true)
        }
        Command::BasicLocus(a) => {
            let q = quadruple(a)?;
            (report::basic_locus(&q, &ctx.eo(&q)?), Some(slug(&q)), true)
        }
        Command::Strata(a) => {
            let v = ctx.verdict(&quadruple(a)?)?;
            (report::strata(&v)?, Some(slug(&v.quadruple)), true)
        }
        Command::Closure(a) => {
            let v = ctx.verdict(&quadruple(a)?)?;
            let out = report::closure(&v)?;
            let ok = out.json["agrees_with_leq_j_sigma"] == true;
            (out, Some(slug(&v.quadruple)), ok)
        }
        Command::Smoothness(a) => {
            let v = ctx.verdict(&quadruple(a)?)?;
            let out = report::smoothness(&v)?;
            let rows = out.json["rows"].as_array().cloned().unwrap_or_default();
            let ok = rows.iter().all(|r| r["longest_element_check"] == true)
                && (out.json["table_entry"].is_null() || out.json["table_entry"] == out.json["all_smooth"]);
            (out, Some(slug(&v.quadruple)), ok)
        }
        Command::Witness { q, word } => {
            let q = quadruple(q)?;
            let (out, confirmed) = report::witness(&q, &Word::parse(word)?)?;
            (out, None, confirmed)
        }
        Command::Reduce { q, word } => {
            let q = quadruple(q)?;
            (report::reduce(&q, &q.parse_word(word)?)?, None, true)
        }
        Command::Leq { q, x, w } => {
            let q = quadruple(q)?;
            (report::leq(&q, &q.parse_word(x)?, &q.parse_word(w)?)?, None, true)
        }
    })
}

fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

fn first_difference(expected: &str, actual: &str) -> String {
    for (i, (e, a)) in expected.lines().zip(actual.lines()).enumerate() {
        if e != a {
            return format!("line {}: expected `{e}`, got `{a}`", i + 1);
        }
    }
    format!(
        "expected {} lines, got {}",
        expected.lines().count(),
        actual.lines().count()
    )
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let cache = cli.cache_dir.as_deref().map(Cache::new).transpose()?;
    let ctx = Ctx { cache };
    let (out, stem, invariants_hold) = dispatch(&cli.command, &ctx)?;
    let text = out.render(cli.format == Format::Tsv);
    if !(cli.verify || cli.write_golden) {
        return Ok(text);
    }
    let name = cli.command.name();
    let ext = if cli.format == Format::Tsv { "tsv" } else { "json" };
    let path = stem.map(|s| cli.golden_dir.clone().unwrap_or_else(default_golden_dir).join(name).join(format!("{s}.{ext}")));
    if cli.write_golden {
        let path = path.ok_or_else(|| CliError::Invalid(format!("`{name}` has no golden data")))?;
        fs::create_dir_all(path.parent().expect("golden path has a parent")).map_err(|e| CliError::io(&path, e))?;
        fs::write(&path, &text).map_err(|e| CliError::io(&path, e))?;
        return Ok(text);
    }
    if !invariants_hold {
        print!("{text}");
        return Err(CliError::Mismatch(format!("`{name}` output violates its invariants")));
    }
    match path {
        None if name == "witness" => Ok(text),
        None => Err(CliError::Mismatch(format!("no golden data for `{name}`"))),
        Some(path) => {
            let expected = fs::read_to_string(&path)
                .map_err(|_| CliError::Mismatch(format!("missing golden file {}", path.display())))?;
            if expected == text {
                Ok(text)
            } else {
                print!("{text}");
                Err(CliError::Mismatch(format!(
                    "differs from {}: {}",
                    path.display(),
                    first_difference(&expected, &text)
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
