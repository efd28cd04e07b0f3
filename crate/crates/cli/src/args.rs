use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "arens",
    version,
    about = "Exact commutants, duals and Arens regularity of finite-dimensional algebras"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Leave the timestamp line out of text reports.
    #[arg(long, global = true)]
    pub no_timestamp: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Sampling {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Random functionals per level on top of the coordinate and all-ones ones.
    #[arg(long, default_value_t = arens_core::regularity::DEFAULT_SAMPLES)]
    pub samples: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate an algebra or module file.
    Check { input: PathBuf },
    /// End_R(U) of a module.
    Commutant { module: PathBuf },
    /// Biend_R(U) of a module, compared with the image of R.
    Bicommutant { module: PathBuf },
    /// The trace ideal of a module.
    TraceIdeal { module: PathBuf },
    /// Faithful, torsionless, T-accessible, generator and projective flags.
    Classify { module: PathBuf },
    /// Biendomorphisms of U against those of U*, and adjoint density against a second module.
    DualCheck {
        module: PathBuf,
        #[arg(long)]
        with: Option<PathBuf>,
    },
    /// Left and right topological centers of the bidual.
    ArensCenter { algebra: PathBuf },
    /// Biend_R(R*) against right multiplications by the topological center.
    ArensBiend { algebra: PathBuf },
    /// Decide Arens regularity of a family from its truncations.
    Regularity {
        /// A family spec file; flags given on the command line take precedence.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        family: Option<String>,
        /// Family parameters as a JSON object.
        #[arg(long)]
        params: Option<String>,
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<usize>>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Run the square-zero ideal extraction on one algebra.
    Extract {
        algebra: PathBuf,
        /// Witness functional as comma-separated scalars; defaults to the sampler's best.
        #[arg(long)]
        witness: Option<String>,
        /// Claimed maximal rank; defaults to the witness rank.
        #[arg(long)]
        n0: Option<usize>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Re-verify the certificates in a report or certificate file.
    VerifyCert {
        input: PathBuf,
        /// Algebra for a bare certificate.
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
    /// List the builtin families.
    FamilyList,
}

impl Command {
    pub fn verb(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Commutant { .. } => "commutant",
            Command::Bicommutant { .. } => "bicommutant",
            Command::TraceIdeal { .. } => "trace-ideal",
            Command::Classify { .. } => "classify",
            Command::DualCheck { .. } => "dual-check",
            Command::ArensCenter { .. } => "arens-center",
            Command::ArensBiend { .. } => "arens-biend",
            Command::Regularity { .. } => "regularity",
            Command::Extract { .. } => "extract",
            Command::VerifyCert { .. } => "verify-cert",
            Command::FamilyList => "family-list",
        }
    }
}
