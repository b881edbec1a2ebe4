use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use crate::config::RunArgs;

#[derive(Debug, Parser)]
#[command(name = "holomap", version, about = "Wavelet holographic mapping of the free boson on a ring")]
#[command(arg_required_else_help = true)]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorrelationKind {
    /// Same-scale wavelet correlators with deep-bulk predictions
    Bulk,
    /// Boundary two-point functions
    Boundary,
    /// Imaginary-time wavelet autocorrelation
    Temporal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Boundary,
    Bulk,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ring overlap tables D[ss], D[sw] and D[ww] (nonzero entries)
    Overlaps,
    /// Boundary dispersion d_j with momenta and squeezing parameters
    Spectrum,
    /// Wavelet transform M_bk: sparsity summary, or the full matrix with --dump
    Transform {
        /// Emit the matrix (dense CSV or sparse triplet JSON)
        #[arg(long)]
        dump: bool,
        /// Magnitude below which an entry counts as negligible in the summary
        #[arg(long, default_value_t = 1e-4)]
        threshold: f64,
    },
    /// Correlator grids
    Correlations {
        #[arg(long, value_enum, default_value_t = CorrelationKind::Bulk)]
        kind: CorrelationKind,
        /// Bulk scale r [default: n/2]
        #[arg(short = 'r', long)]
        r: Option<usize>,
        /// Largest same-scale separation [default: end of the spatial fit window]
        #[arg(long)]
        j_max: Option<usize>,
        /// Use sampled wavelet rows at resolution J instead of exact rows
        #[arg(long)]
        sampled: bool,
        /// Number of log-spaced τ samples (temporal)
        #[arg(long, default_value_t = 24)]
        points: usize,
        /// Wavelet position j (temporal)
        #[arg(long, default_value_t = 0)]
        site: usize,
    },
    /// Bulk mutual information, same-scale or along a radial ray
    MutualInfo {
        /// Bulk scale r [default: n/2]
        #[arg(short = 'r', long)]
        r: Option<usize>,
        /// Largest same-scale separation [default: end of the spatial fit window]
        #[arg(long)]
        j_max: Option<usize>,
        /// Pair (r, 0) with (r′, 0) for every other scale r′
        #[arg(long)]
        cross: bool,
        #[arg(long)]
        sampled: bool,
    },
    /// Entanglement entropy of boundary intervals or single bulk modes
    Entropy {
        /// Single-mode entropies of bulk sites (r, 0) instead of boundary intervals
        #[arg(long)]
        bulk: bool,
        /// Largest boundary interval length
        #[arg(long, default_value_t = 16)]
        ell_max: usize,
    },
    /// Central charge from the purity of two boundary intervals
    CentralCharge {
        #[arg(long, default_value_t = 3)]
        l1: usize,
        #[arg(long, default_value_t = 6)]
        l2: usize,
    },
    /// Radius of curvature from same-scale mutual information
    CurvatureFit {
        /// Bulk scale r [default: n/2]
        #[arg(short = 'r', long)]
        r: Option<usize>,
    },
    /// Gaussian circuit program preparing the ground or thermal state (JSON)
    Circuit {
        #[arg(long, value_enum, default_value_t = TargetArg::Boundary)]
        target: TargetArg,
        /// Also store the interferometer as a Givens sequence
        #[arg(long)]
        givens: bool,
        /// Fail on massless lattices instead of leaving the zero mode in vacuum
        #[arg(long)]
        strict: bool,
    },
    /// Run the invariant suite and print a pass/fail table
    Verify {
        /// Also check that this circuit program reproduces its target covariance
        #[arg(long)]
        simulate: Option<PathBuf>,
    },
}
