use clap::{Args, ValueEnum};
use gaussian_engine::ZeroModePolicy;
use lattice_model::{boundary_spectrum, LatticeSpec};
use serde::Deserialize;
use std::path::{Path, PathBuf};
use wavelet_kernels::{daubechies_filters, DEFAULT_QUADRATURE_LEVEL};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyArg {
    /// Zero mode removed (weight 0 in both blocks).
    Deflated,
    /// Zero-mode frequency floored at ε·d₁.
    Regularized,
    /// No treatment; massless states fail.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Options shared by every subcommand. Flags override the config file,
/// which overrides the defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Wavelet family K (3, 4 or 5) [default: 3]
    #[arg(short = 'K', long = "family", global = true)]
    pub k: Option<usize>,
    /// Coarsest-scale ring size L [default: 10]
    #[arg(short = 'L', long = "ring", global = true)]
    pub l: Option<usize>,
    /// Cutoff scale n, V = L·2^n [default: 3]
    #[arg(short = 'n', long = "scales", global = true)]
    pub n: Option<usize>,
    /// Bare mass m0 (also accepted as -m0) [default: 0]
    #[arg(short = 'm', long = "m0", global = true, allow_negative_numbers = true)]
    pub m0: Option<f64>,
    /// Inverse temperature; omit for the ground state
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    /// Zero-mode policy for massless lattices [default: deflated; regularized for boundary subsystems]
    #[arg(long, value_enum, global = true)]
    pub policy: Option<PolicyArg>,
    /// Regularization floor as a multiple of d₁ [default: 1e-6]
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// Write outputs into this directory instead of stdout
    #[arg(short = 'o', long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format [default: csv]
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Dyadic resolution J for sampled wavelet rows [default: 12]
    #[arg(short = 'J', long = "resolution", global = true)]
    pub resolution: Option<u32>,
    /// TOML file with any of: k, l, n, m0, beta, policy, epsilon, out, format, resolution
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    k: Option<usize>,
    l: Option<usize>,
    n: Option<usize>,
    m0: Option<f64>,
    beta: Option<f64>,
    policy: Option<PolicyArg>,
    epsilon: Option<f64>,
    out: Option<PathBuf>,
    format: Option<Format>,
    resolution: Option<u32>,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub m0: f64,
    pub beta: Option<f64>,
    pub policy: Option<PolicyArg>,
    pub epsilon: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub resolution: u32,
}

fn read_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    Ok(toml::from_str(&text)?)
}

impl RunConfig {
    pub fn resolve(args: &RunArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => read_file(path)?,
            None => FileConfig::default(),
        };
        let cfg = Self {
            k: args.k.or(file.k).unwrap_or(3),
            l: args.l.or(file.l).unwrap_or(10),
            n: args.n.or(file.n).unwrap_or(3),
            m0: args.m0.or(file.m0).unwrap_or(0.0),
            beta: args.beta.or(file.beta),
            policy: args.policy.or(file.policy),
            epsilon: args.epsilon.or(file.epsilon).unwrap_or(1e-6),
            out: args.out.clone().or(file.out),
            format: args.format.or(file.format).unwrap_or(Format::Csv),
            resolution: args.resolution.or(file.resolution).unwrap_or(DEFAULT_QUADRATURE_LEVEL),
        };
        if let Some(b) = cfg.beta {
            if !(b > 0.0) || !b.is_finite() {
                return Err(CliError::Validation(format!("beta must be positive and finite, got {b}")));
            }
        }
        if !(cfg.epsilon > 0.0) {
            return Err(CliError::Validation(format!("epsilon must be positive, got {}", cfg.epsilon)));
        }
        if !(1..=20).contains(&cfg.resolution) {
            return Err(CliError::Validation(format!("resolution J must be in 1..=20, got {}", cfg.resolution)));
        }
        cfg.spec()?;
        Ok(cfg)
    }

    pub fn spec(&self) -> Result<LatticeSpec, CliError> {
        Ok(LatticeSpec::new(daubechies_filters(self.k)?, self.l, self.n, self.m0)?)
    }

    /// Zero-mode treatment for a massless lattice, `fallback` if none was requested.
    pub fn zero_mode(&self, spec: &LatticeSpec, fallback: PolicyArg) -> Result<Option<ZeroModePolicy>, CliError> {
        if spec.mass() > 0.0 {
            return Ok(None);
        }
        Ok(match self.policy.unwrap_or(fallback) {
            PolicyArg::Deflated => Some(ZeroModePolicy::Deflated),
            PolicyArg::Regularized => Some(ZeroModePolicy::Regularized(boundary_spectrum(spec)?[1] * self.epsilon)),
            PolicyArg::None => None,
        })
    }
}
