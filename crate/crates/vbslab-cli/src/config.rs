//! Flag parsing and the JSON config file.
//!
//! A config file supplies defaults; any flag given on the command line wins.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use vbslab::HalfInt;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Block eigenvalues.
    Spectrum,
    /// Von Neumann and Rényi entropies plus the large-block limit.
    Entropy,
    /// Brute-force density matrix of an explicit chain or graph.
    Oracle,
    /// Ground-space degeneracy of a block Hamiltonian.
    Degeneracy,
    /// Two-end-spin spectrum of the SU(n) chain.
    Sun,
    /// Cross-check suite; exits nonzero when any check fails.
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// Homogeneous spin-1 chain.
    Spin1,
    /// Homogeneous integer spin-S chain.
    SpinS,
    /// Block given by its bond multiplicities.
    Inhom,
    /// Explicit open chain given by its spins.
    Chain,
    /// SU(n) chain.
    Sun,
    /// Graph read from a JSON file.
    Graph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Sum,
    Recurrence,
    Closed,
    Transfer,
    Oracle,
    All,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Parser, Debug, Default)]
#[command(
    name = "vbslab",
    version,
    about = "Exact entanglement spectra of valence-bond-solid states"
)]
pub struct Cli {
    /// What to compute. May instead come from the config file.
    #[arg(value_enum)]
    pub command: Option<Command>,
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    /// Bulk spin for homogeneous chains, e.g. 2.
    #[arg(long = "S")]
    pub spin: Option<String>,
    /// Comma-separated chain spins, e.g. 1/2,1,1,1/2.
    #[arg(long)]
    pub spins: Option<String>,
    /// Comma-separated bond multiplicities of a block, e.g. 1,2,1.
    #[arg(long, alias = "multiplicities")]
    pub mults: Option<String>,
    /// SU(n) rank.
    #[arg(long)]
    pub n: Option<usize>,
    /// Block length.
    #[arg(long = "L")]
    pub l: Option<usize>,
    /// Bulk sites of a generated chain; defaults to L+2.
    #[arg(long = "N")]
    pub n_bulk: Option<usize>,
    /// Block vertices (0-based): inclusive range a..b, or a comma list.
    #[arg(long)]
    pub block: Option<String>,
    /// Graph JSON file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Comma-separated Rényi orders.
    #[arg(long)]
    pub alphas: Option<String>,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON file with any of the fields above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Config file layout. Lists may be given as JSON arrays or as the same
/// comma-separated strings the flags take.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    command: Option<Command>,
    model: Option<Model>,
    #[serde(alias = "S")]
    spin: Option<ListOrString>,
    spins: Option<ListOrString>,
    #[serde(alias = "multiplicities")]
    mults: Option<ListOrString>,
    n: Option<usize>,
    #[serde(alias = "L")]
    l: Option<usize>,
    #[serde(alias = "N")]
    n_bulk: Option<usize>,
    block: Option<ListOrString>,
    graph: Option<PathBuf>,
    alphas: Option<ListOrString>,
    method: Option<MethodArg>,
    format: Option<Format>,
    output: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ListOrString {
    Text(String),
    Number(serde_json::Number),
    List(Vec<serde_json::Value>),
}

impl ListOrString {
    fn into_text(self) -> String {
        let item = |v: serde_json::Value| match v {
            serde_json::Value::String(s) => s,
            other => other.to_string(),
        };
        match self {
            ListOrString::Text(s) => s,
            ListOrString::Number(n) => n.to_string(),
            ListOrString::List(items) => items.into_iter().map(item).collect::<Vec<_>>().join(","),
        }
    }
}

/// Fully parsed run parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub model: Option<Model>,
    pub spin: Option<HalfInt>,
    pub spins: Option<Vec<HalfInt>>,
    pub mults: Option<Vec<u32>>,
    pub n: Option<usize>,
    pub l: Option<usize>,
    pub n_bulk: Option<usize>,
    pub block: Option<Vec<usize>>,
    pub graph: Option<PathBuf>,
    pub alphas: Vec<f64>,
    pub method: Option<MethodArg>,
    pub format: Format,
    pub output: Option<PathBuf>,
}

pub const DEFAULT_ALPHAS: [f64; 2] = [2.0, 0.5];

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn split(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

pub fn parse_spins(text: &str) -> Result<Vec<HalfInt>, CliError> {
    let v = split(text)
        .map(|s| s.parse::<HalfInt>().map_err(|e| invalid(format!("spin {s:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err(invalid("empty spin list"));
    }
    Ok(v)
}

pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    let v = split(text)
        .map(|s| s.parse::<T>().map_err(|_| invalid(format!("bad {what} entry {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err(invalid(format!("empty {what} list")));
    }
    Ok(v)
}

/// `a..b` (inclusive), a single index, or a comma list.
pub fn parse_block(text: &str) -> Result<Vec<usize>, CliError> {
    if let Some((a, b)) = text.split_once("..") {
        let a: usize = a
            .trim()
            .parse()
            .map_err(|_| invalid(format!("bad block start in {text:?}")))?;
        let b: usize = b
            .trim()
            .parse()
            .map_err(|_| invalid(format!("bad block end in {text:?}")))?;
        if b < a {
            return Err(invalid(format!("empty block range {text:?}")));
        }
        return Ok((a..=b).collect());
    }
    let mut v: Vec<usize> = parse_list(text, "block")?;
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn read_file_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("config {}: {e}", path.display())))
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let file = match &cli.config {
            Some(p) => read_file_config(p)?,
            None => FileConfig::default(),
        };
        let text = |flag: Option<String>, fallback: Option<ListOrString>| {
            flag.or_else(|| fallback.map(ListOrString::into_text))
        };

        let command = cli
            .command
            .or(file.command)
            .ok_or_else(|| invalid("no command given (spectrum, entropy, oracle, degeneracy, sun, verify)"))?;
        let spin = text(cli.spin, file.spin)
            .map(|s| {
                s.trim()
                    .parse::<HalfInt>()
                    .map_err(|e| invalid(format!("S {s:?}: {e}")))
            })
            .transpose()?;
        let spins = text(cli.spins, file.spins).map(|s| parse_spins(&s)).transpose()?;
        let mults = text(cli.mults, file.mults)
            .map(|s| parse_list::<u32>(&s, "multiplicity"))
            .transpose()?;
        let block = text(cli.block, file.block).map(|s| parse_block(&s)).transpose()?;
        let alphas = match text(cli.alphas, file.alphas) {
            Some(s) => parse_list::<f64>(&s, "alpha")?,
            None => DEFAULT_ALPHAS.to_vec(),
        };
        if let Some(a) = alphas.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
            return Err(invalid(format!("Rényi orders must be positive and finite, got {a}")));
        }
        Ok(RunConfig {
            command,
            model: cli.model.or(file.model),
            spin,
            spins,
            mults,
            n: cli.n.or(file.n),
            l: cli.l.or(file.l),
            n_bulk: cli.n_bulk.or(file.n_bulk),
            block,
            graph: cli.graph.or(file.graph),
            alphas,
            method: cli.method.or(file.method),
            format: cli.format.or(file.format).unwrap_or_default(),
            output: cli.output.or(file.output),
        })
    }

    /// Explicit model, or the one implied by which parameters are present.
    pub fn resolved_model(&self) -> Model {
        if let Some(m) = self.model {
            return m;
        }
        if self.command == Command::Sun || self.n.is_some() {
            Model::Sun
        } else if self.graph.is_some() {
            Model::Graph
        } else if self.spins.is_some() {
            Model::Chain
        } else if self.mults.is_some() {
            Model::Inhom
        } else if self.spin.is_some_and(|s| s != HalfInt::from_twice(2)) {
            Model::SpinS
        } else {
            Model::Spin1
        }
    }

    pub fn require_l(&self) -> Result<usize, CliError> {
        self.l.ok_or_else(|| invalid("--L is required for this model"))
    }

    pub fn require_n(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| invalid("--n is required for the SU(n) model"))
    }
}
