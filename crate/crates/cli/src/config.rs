//! Command-line arguments and their validation into a [`JobConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quiver_fixedpoints::{FixedPoint, Permutation, SpinProfile};
use yangian_module::Mode;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "spinlab", version, about = "Exact weight functions, R-matrices and lattice models for higher-spin sl2 modules")]
pub struct Cli {
    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Ascii,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight functions of one chamber and, optionally, their restriction matrix.
    Weights(WeightsArgs),
    /// The R-matrix between two chambers.
    Rmatrix(RmatrixArgs),
    /// Lattice states, partition functions and the comparison with weight functions.
    Lattice(LatticeArgs),
    /// Verification suites; exits 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    /// Spins, e.g. `1,2`; `l` stands for a symbolic spin.
    #[arg(long)]
    pub ell: String,
    #[arg(long)]
    pub v: u32,
    /// Chamber in 1-based one-line notation, e.g. `2,1`.
    #[arg(long, default_value = "id")]
    pub sigma: String,
    /// Also emit the restriction matrix `[W^sigma_lambda |_mu]`.
    #[arg(long)]
    pub restrict: bool,
}

#[derive(Debug, Args)]
pub struct RmatrixArgs {
    #[arg(long)]
    pub ell: String,
    #[arg(long)]
    pub v: u32,
    /// Target chamber; defaults to the identity.
    #[arg(long)]
    pub sigma_prime: Option<String>,
    /// Source chamber; defaults to the longest permutation.
    #[arg(long)]
    pub sigma: Option<String>,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    #[arg(long)]
    pub ell: String,
    #[arg(long)]
    pub v: u32,
    /// North boundary, e.g. `1,0`; all boundaries of grade `v` when omitted.
    #[arg(long)]
    pub boundary: Option<String>,
    /// Include every state with its Boltzmann weight.
    #[arg(long)]
    pub dump_states: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Yangian,
    Properties,
    Lattice,
    Sixvertex,
    Braid,
    All,
}

impl Suite {
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Yangian, Suite::Properties, Suite::Lattice, Suite::Sixvertex, Suite::Braid],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Yangian => "yangian",
            Suite::Properties => "properties",
            Suite::Lattice => "lattice",
            Suite::Sixvertex => "sixvertex",
            Suite::Braid => "braid",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Symbolic,
    Randomized,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub ell: String,
    /// Largest grade checked.
    #[arg(long)]
    pub vmax: u32,
    /// Largest generator index in the Yangian relations.
    #[arg(long, default_value_t = 2)]
    pub rmax: u32,
    /// Largest number of thin lines in the F-basis checks.
    #[arg(long, default_value_t = 4)]
    pub fbasis_vmax: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Symbolic)]
    pub mode: ModeArg,
    /// Required with `--mode randomized`.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
}

/// A validated job.
#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub profile: SpinProfile,
    pub job: Job,
    pub format: Format,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Weights { v: u32, sigma: Permutation, restrict: bool },
    RMatrix { v: u32, sigma_prime: Permutation, sigma: Permutation },
    Lattice { v: u32, boundary: Option<FixedPoint>, dump_states: bool },
    Verify { suite: Suite, v_max: u32, r_max: u32, fbasis_vmax: usize, mode: Mode },
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn profile(text: &str) -> Result<SpinProfile, CliError> {
    SpinProfile::parse(text).map_err(|e| usage(format!("--ell: {e}")))
}

fn permutation(flag: &str, text: &str, w: usize) -> Result<Permutation, CliError> {
    Permutation::parse(text, w).map_err(|e| usage(format!("{flag}: {e}")))
}

fn longest(w: usize) -> Permutation {
    Permutation::from_images((0..w).rev().collect()).expect("reversal is a bijection")
}

impl JobConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let (profile, job) = match &cli.command {
            Command::Weights(a) => {
                let p = profile(&a.ell)?;
                let sigma = permutation("--sigma", &a.sigma, p.w())?;
                (p, Job::Weights { v: a.v, sigma, restrict: a.restrict })
            }
            Command::Rmatrix(a) => {
                let p = profile(&a.ell)?;
                let sigma_prime = match &a.sigma_prime {
                    Some(t) => permutation("--sigma-prime", t, p.w())?,
                    None => Permutation::identity(p.w()),
                };
                let sigma = match &a.sigma {
                    Some(t) => permutation("--sigma", t, p.w())?,
                    None => longest(p.w()),
                };
                (p, Job::RMatrix { v: a.v, sigma_prime, sigma })
            }
            Command::Lattice(a) => {
                let p = profile(&a.ell)?;
                let boundary = match &a.boundary {
                    Some(text) => {
                        let parts = text
                            .split(',')
                            .map(|s| s.trim().parse::<u32>())
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|_| usage(format!("--boundary: `{text}` is not a list of integers")))?;
                        let b = FixedPoint(parts);
                        if b.w() != p.w() || !p.contains(&b) || b.total() != a.v {
                            return Err(usage(format!("--boundary: {b} is not a fixed point of {p} at v = {}", a.v)));
                        }
                        Some(b)
                    }
                    None => None,
                };
                (p, Job::Lattice { v: a.v, boundary, dump_states: a.dump_states })
            }
            Command::Verify(a) => {
                let p = profile(&a.ell)?;
                let mode = match a.mode {
                    ModeArg::Symbolic => Mode::Symbolic,
                    ModeArg::Randomized => {
                        let seed = a.seed.ok_or_else(|| usage("--seed is required with --mode randomized"))?;
                        if a.trials == 0 {
                            return Err(usage("--trials must be positive"));
                        }
                        if p.is_symbolic() {
                            return Err(usage("randomized mode needs concrete spins"));
                        }
                        Mode::Randomized { seed, trials: a.trials }
                    }
                };
                let job = Job::Verify { suite: a.suite, v_max: a.vmax, r_max: a.rmax, fbasis_vmax: a.fbasis_vmax, mode };
                (p, job)
            }
        };
        Ok(JobConfig { profile, job, format: cli.format, output: cli.output.clone() })
    }

    pub fn command_name(&self) -> &'static str {
        match self.job {
            Job::Weights { .. } => "weights",
            Job::RMatrix { .. } => "rmatrix",
            Job::Lattice { .. } => "lattice",
            Job::Verify { .. } => "verify",
        }
    }

    /// The configuration as echoed in artifacts. Thread count and output
    /// path are left out so artifacts do not depend on them.
    pub fn to_json(&self) -> Value {
        let mut out = json!({ "command": self.command_name(), "profile": self.profile.to_json() });
        match &self.job {
            Job::Weights { v, sigma, restrict } => {
                out["v"] = json!(v);
                out["sigma"] = json!(sigma.label());
                out["restrict"] = json!(restrict);
            }
            Job::RMatrix { v, sigma_prime, sigma } => {
                out["v"] = json!(v);
                out["sigma_prime"] = json!(sigma_prime.label());
                out["sigma"] = json!(sigma.label());
            }
            Job::Lattice { v, boundary, dump_states } => {
                out["v"] = json!(v);
                out["boundary"] = json!(boundary.as_ref().map(|b| b.0.clone()));
                out["dump_states"] = json!(dump_states);
            }
            Job::Verify { suite, v_max, r_max, fbasis_vmax, mode } => {
                out["suite"] = json!(suite.name());
                out["vmax"] = json!(v_max);
                out["rmax"] = json!(r_max);
                out["fbasis_vmax"] = json!(fbasis_vmax);
                match mode {
                    Mode::Symbolic => out["mode"] = json!("symbolic"),
                    Mode::Randomized { seed, trials } => {
                        out["mode"] = json!("randomized");
                        out["seed"] = json!(seed);
                        out["trials"] = json!(trials);
                    }
                }
            }
        }
        out
    }

    /// File stem for golden comparisons, derived from the configuration.
    pub fn golden_name(&self) -> String {
        let mut parts = vec![self.command_name().to_string(), format!("{}", self.profile)];
        match &self.job {
            Job::Weights { v, sigma, restrict } => {
                parts.push(format!("v{v}"));
                parts.push(sigma.label());
                if *restrict {
                    parts.push("restrict".into());
                }
            }
            Job::RMatrix { v, sigma_prime, sigma } => {
                parts.push(format!("v{v}"));
                parts.push(sigma_prime.label());
                parts.push(sigma.label());
            }
            Job::Lattice { v, boundary, dump_states } => {
                parts.push(format!("v{v}"));
                if let Some(b) = boundary {
                    parts.push(format!("{b}"));
                }
                if *dump_states {
                    parts.push("states".into());
                }
            }
            Job::Verify { suite, v_max, r_max, fbasis_vmax, mode } => {
                parts.push(suite.name().into());
                parts.push(format!("vmax{v_max}-rmax{r_max}-fb{fbasis_vmax}"));
                if let Mode::Randomized { seed, trials } = mode {
                    parts.push(format!("seed{seed}-trials{trials}"));
                }
            }
        }
        let ext = match self.format {
            Format::Json => "json",
            Format::Latex => "tex",
            Format::Ascii => "txt",
        };
        let stem: String = parts
            .join("-")
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
            .collect();
        format!("{stem}.{ext}")
    }
}
