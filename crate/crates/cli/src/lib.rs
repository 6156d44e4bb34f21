//! Command-line front end: argument parsing, file loading, dispatch and
//! report writing. `main.rs` only forwards to [`run`].

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use netpolar::alpha_bounds::DEFAULT_TOLERANCE;
use netpolar::axioms::{AxiomKind, Sampler};
use netpolar::builders::{build_parties, build_representatives};
use netpolar::extremal::{DEFAULT_EPS_GRID, DEFAULT_MASS_STEP};
use netpolar::io::{read_mass_points, read_preferences, read_votes};
use netpolar::{
    admissible_interval, build_complete_uniform, build_cosponsorship, build_lattice, build_line,
    build_preference_kemeny, build_vote_hypercube, counterexample_search, geodesic_distances,
    normalized_polarization, polarization, run_suite, validate_network, verify_bipolar_max,
    MeasureParams, Network, Norm, RawEdge, RawNetwork, RawNode, TieRule, ValidateOptions,
};
use serde::de::IgnoredAny;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: schema error: {message}")]
    Schema { path: PathBuf, message: String },
    #[error("{path}: invalid network: {source}")]
    Validation {
        path: PathBuf,
        source: netpolar::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] netpolar::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormArg {
    Manhattan,
    Euclidean,
    Chebyshev,
}

impl From<NormArg> for Norm {
    fn from(n: NormArg) -> Norm {
        match n {
            NormArg::Manhattan => Norm::Manhattan,
            NormArg::Euclidean => Norm::Euclidean,
            NormArg::Chebyshev => Norm::Chebyshev,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieRuleArg {
    StrictMajority,
    ExcludeBill,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum SuiteArg {
    #[value(name = "A1", alias = "a1")]
    A1,
    #[value(name = "A2", alias = "a2")]
    A2,
    #[value(name = "A3", alias = "a3")]
    A3,
    #[value(name = "A3c", alias = "a3c")]
    A3c,
}

#[derive(Debug, Parser, Serialize)]
#[command(name = "netpolar", version, about = "Polarization of weighted networks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct GlobalArgs {
    /// Network description (JSON with `nodes` and `edges`)
    #[arg(long, global = true)]
    pub network: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub alpha: f64,
    /// Scale constant of the measure
    #[arg(long = "K", global = true, default_value_t = 1.0)]
    #[serde(rename = "K")]
    pub k: f64,
    /// Also report the value relative to the bipolar maximum (alpha = 1)
    #[arg(long, global = true)]
    pub normalize: bool,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Report file; only the one-line summary goes to stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Accept disconnected networks, placing separate components at the
    /// largest finite distance
    #[arg(long, global = true)]
    pub allow_disconnected_longest_path: bool,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Polarization of a network
    Compute,
    /// Geodesic distance matrix of a network
    Distances,
    /// Build a network from CSV data
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Seeded randomized check of one axiom
    Axioms {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Threshold for the A3c suite
        #[arg(long)]
        c: Option<f64>,
        /// A1 only: sample inside the closed-form region
        #[arg(long)]
        closed_form_region: bool,
    },
    /// Admissible exponent interval for one or more thresholds
    AlphaBounds {
        #[arg(long = "c", required = true, num_args = 1..)]
        c: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Exhaustive grid check that the bipolar distribution is maximal
    Extremal {
        #[arg(long, default_value_t = 1.0 / 6.0)]
        step: f64,
    },
    /// Search the near-isosceles three-node family for a distribution
    /// beating the bipolar one
    Counterexample {
        #[arg(long, value_delimiter = ',')]
        eps: Option<Vec<f64>>,
        #[arg(long, default_value_t = DEFAULT_MASS_STEP)]
        mass_step: f64,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BuildKind {
    /// Path through 1-D mass points (`x,mass` CSV)
    Line {
        #[arg(long)]
        input: PathBuf,
    },
    /// Unit-distance complete graph on the given group masses
    Complete {
        #[arg(long, value_delimiter = ',', required = true)]
        masses: Vec<f64>,
    },
    /// Vote-combination hypercube (`voter[,party],bill_*` CSV)
    Votes {
        #[arg(long)]
        input: PathBuf,
    },
    /// Representatives linked by vote disagreement share
    Representatives {
        #[arg(long)]
        input: PathBuf,
    },
    /// Ranking permutohedron (`ranking,count` CSV)
    Prefs {
        #[arg(long)]
        input: PathBuf,
    },
    /// Complete graph on points with a norm (`x_1,..,x_m,mass` CSV)
    Lattice {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = NormArg::Euclidean)]
        norm: NormArg,
    },
    /// Co-sponsorship graph (`voter,bill_*` CSV with 1 = sponsored)
    Cosponsor {
        #[arg(long)]
        input: PathBuf,
    },
    /// Party graph from votes with a party column
    Parties {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = TieRuleArg::StrictMajority)]
        tie_rule: TieRuleArg,
    },
}

/// Load and validate a network description.
// Reports written by `build` carry a "config" echo next to the network.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkFile {
    nodes: Vec<RawNode>,
    edges: Vec<RawEdge>,
    #[serde(default)]
    #[allow(dead_code)]
    config: Option<IgnoredAny>,
}

pub fn parse_network_file(path: &Path, options: ValidateOptions) -> CliResult<Network> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let file: NetworkFile = serde_json::from_str(&text).map_err(|e| CliError::Schema {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let raw = RawNetwork {
        nodes: file.nodes,
        edges: file.edges,
    };
    validate_network(&raw, options).map_err(|e| {
        if e.is_schema() {
            CliError::Schema {
                path: path.to_path_buf(),
                message: e.to_string(),
            }
        } else {
            CliError::Validation {
                path: path.to_path_buf(),
                source: e,
            }
        }
    })
}

fn open(path: &Path) -> CliResult<fs::File> {
    fs::File::open(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Output of one command: the stdout summary and the report body.
struct Report {
    summary: String,
    json: Value,
    csv: Option<String>,
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

impl Cli {
    fn options(&self) -> ValidateOptions {
        ValidateOptions {
            allow_disconnected_longest_path: self.global.allow_disconnected_longest_path,
        }
    }

    fn network(&self) -> CliResult<Network> {
        let path = self
            .global
            .network
            .as_deref()
            .ok_or_else(|| CliError::Usage("this command needs --network PATH".into()))?;
        parse_network_file(path, self.options())
    }

    fn params(&self) -> CliResult<MeasureParams> {
        Ok(MeasureParams::new(self.global.k, self.global.alpha)?)
    }

    fn execute(&self) -> CliResult<Report> {
        match &self.command {
            Command::Compute => {
                let net = self.network()?;
                let dm = geodesic_distances(&net);
                let params = self.params()?;
                let r = if self.global.normalize {
                    normalized_polarization(&net, &params, &dm)?
                } else {
                    polarization(&net, &params, &dm)?
                };
                let summary = match r.normalized {
                    Some(n) => format!("P = {} (normalized {n})", r.value),
                    None => format!("P = {}", r.value),
                };
                let csv = format!(
                    "value,normalized,K,alpha\n{},{},{},{}\n",
                    r.value,
                    r.normalized.map(|n| n.to_string()).unwrap_or_default(),
                    r.params.k,
                    r.params.alpha
                );
                Ok(Report {
                    summary,
                    json: to_value(&r),
                    csv: Some(csv),
                })
            }
            Command::Distances => {
                let net = self.network()?;
                let dm = geodesic_distances(&net);
                Ok(Report {
                    summary: format!("{} nodes, diameter {}", dm.len(), dm.diameter()),
                    json: to_value(&dm),
                    csv: Some(dm.to_csv()),
                })
            }
            Command::Build { kind } => {
                let net = self.build(kind)?;
                Ok(Report {
                    summary: format!(
                        "built {} nodes, {} edges, total mass {}",
                        net.len(),
                        net.edges().len(),
                        net.total_mass()
                    ),
                    json: to_value(net.to_raw()),
                    csv: None,
                })
            }
            Command::Axioms {
                suite,
                samples,
                c,
                closed_form_region,
            } => {
                let seed = self
                    .global
                    .seed
                    .ok_or_else(|| CliError::Usage("axioms needs --seed N".into()))?;
                if *samples == 0 {
                    return Err(CliError::Usage("--samples must be at least 1".into()));
                }
                let kind = match suite {
                    SuiteArg::A1 => AxiomKind::A1,
                    SuiteArg::A2 => AxiomKind::A2,
                    SuiteArg::A3 => AxiomKind::A3,
                    SuiteArg::A3c => AxiomKind::A3c,
                };
                let mut sampler = Sampler::new(*samples, seed);
                sampler.closed_form_region = *closed_form_region;
                let r = run_suite(kind, self.global.alpha, *c, &sampler)?;
                Ok(Report {
                    summary: format!(
                        "{}: {} passed, {} failed of {}",
                        r.axiom, r.passes, r.failures, r.samples
                    ),
                    json: to_value(&r),
                    csv: None,
                })
            }
            Command::AlphaBounds { c, tol } => {
                let intervals = c
                    .iter()
                    .map(|&c| admissible_interval(c, *tol))
                    .collect::<netpolar::Result<Vec<_>>>()?;
                let fmt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
                let summary = intervals
                    .iter()
                    .map(|iv| {
                        format!(
                            "c = {}: lower = {}, upper = {:.6}",
                            iv.c,
                            iv.lower.map_or("none".to_string(), |l| format!("{l:.6}")),
                            iv.upper
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("; ");
                let mut csv = String::from("c,alpha_lower,alpha_upper\n");
                for iv in &intervals {
                    csv.push_str(&format!("{},{},{}\n", iv.c, fmt(iv.lower), iv.upper));
                }
                Ok(Report {
                    summary,
                    json: json!({ "intervals": intervals }),
                    csv: Some(csv),
                })
            }
            Command::Extremal { step } => {
                let net = self.network()?;
                let r = verify_bipolar_max(&net, self.global.alpha, *step)?;
                Ok(Report {
                    summary: format!(
                        "bipolar maximal: {} (margin {:e})",
                        r.is_bipolar_max, r.margin
                    ),
                    json: to_value(&r),
                    csv: None,
                })
            }
            Command::Counterexample { eps, mass_step } => {
                let eps = eps.clone().unwrap_or_else(|| DEFAULT_EPS_GRID.to_vec());
                let r = counterexample_search(self.global.alpha, &eps, *mass_step)?;
                let summary = match &r.witness {
                    Some(w) => format!(
                        "witness at eps = {}: masses {:?}, value {} > bipolar {}",
                        w.eps, w.masses, w.value, w.bipolar_value
                    ),
                    None => format!("no witness (best/bipolar = {})", r.best_ratio),
                };
                Ok(Report {
                    summary,
                    json: to_value(&r),
                    csv: None,
                })
            }
        }
    }

    fn build(&self, kind: &BuildKind) -> CliResult<Network> {
        Ok(match kind {
            BuildKind::Line { input } => build_line(&read_mass_points(open(input)?)?)?,
            BuildKind::Complete { masses } => build_complete_uniform(masses)?,
            BuildKind::Votes { input } => build_vote_hypercube(&read_votes(open(input)?)?)?,
            BuildKind::Representatives { input } => {
                build_representatives(&read_votes(open(input)?)?)?
            }
            BuildKind::Prefs { input } => {
                build_preference_kemeny(&read_preferences(open(input)?)?)?
            }
            BuildKind::Lattice { input, norm } => {
                build_lattice(&read_mass_points(open(input)?)?, (*norm).into())?
            }
            BuildKind::Cosponsor { input } => build_cosponsorship(&read_votes(open(input)?)?)?,
            BuildKind::Parties { input, tie_rule } => {
                let rule = match tie_rule {
                    TieRuleArg::StrictMajority => TieRule::StrictMajority,
                    TieRuleArg::ExcludeBill => TieRule::ExcludeBill,
                };
                build_parties(&read_votes(open(input)?)?, rule)?
            }
        })
    }

    /// Render the report file contents, config echo included.
    fn render(&self, report: &Report) -> CliResult<String> {
        let config = to_value(self);
        match self.global.format {
            Format::Json => {
                let mut body = match &report.json {
                    Value::Object(map) => map.clone(),
                    other => {
                        let mut m = serde_json::Map::new();
                        m.insert("result".into(), other.clone());
                        m
                    }
                };
                body.insert("config".into(), config);
                let mut text = serde_json::to_string_pretty(&Value::Object(body))
                    .expect("report serializes");
                text.push('\n');
                Ok(text)
            }
            Format::Csv => {
                let table = report.csv.as_ref().ok_or_else(|| {
                    CliError::Usage("--format csv is only available for compute, distances and alpha-bounds".into())
                })?;
                Ok(format!("# config: {config}\n{table}"))
            }
        }
    }
}

fn execute_and_write(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    let report = cli.execute()?;
    let text = cli.render(&report)?;
    if let Some(path) = &cli.global.out {
        fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    let _ = writeln!(stdout, "{}", report.summary);
    Ok(())
}

/// Parse `args` (program name first), run the command and return the exit
/// code: 0 on success, 1 on domain or I/O errors, 2 on usage errors.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match execute_and_write(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
