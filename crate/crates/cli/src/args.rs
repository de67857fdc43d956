use clap::{Args, Parser, Subcommand, ValueEnum};
use densediv::exact::{parse_rational, Rational};
use densediv::families::FamilySpec;
use densediv::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "densediv", version, about = "Multiply densely divisible integers and their counting functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the output to this file instead of stdout. Relative paths are
    /// resolved against `DENSEDIV_OUT_DIR` when it is set.
    #[arg(long, global = true)]
    pub out: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test whether n belongs to a family.
    Member {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// List the members up to x.
    Enumerate {
        #[arg(long)]
        x: u64,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Count the members up to x and compare with x ρ_a(u).
    Count {
        #[arg(long)]
        x: u64,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Tabulate λ_{1/i} or the constants C_{1/i} next to their printed digits.
    Table {
        #[arg(value_enum)]
        which: TableKind,
        /// Largest i (at most 25).
        #[arg(long, default_value_t = 20)]
        imax: u32,
        /// Explicit list of a values, comma separated, instead of 1/i.
        #[arg(long, value_delimiter = ',')]
        a: Vec<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Range of the exhaustive membership checks.
        #[arg(long, default_value_t = 100_000)]
        nmax: u64,
        /// Range of the exact identity checks.
        #[arg(long, default_value_t = 10_000)]
        xmax: u64,
    },
    /// Counts against a model for a list of x.
    RatioScan {
        #[command(flatten)]
        family: FamilyArgs,
        /// Increasing list of x, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        #[arg(long, value_enum, default_value = "rho")]
        model: Model,
    },
    /// The zero certificate for λ_a, C_a.
    Cert {
        #[arg(long)]
        a: String,
        /// Also certify the right-most strip free of other zeros.
        #[arg(long)]
        rects: bool,
    },
    /// Tabulate ρ_a as CSV.
    Rho {
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = 30.0)]
        umax: f64,
        /// Grid step (at most 1/128).
        #[arg(long, default_value_t = densediv::rho::MAX_STEP)]
        step: f64,
        /// Write every stride-th grid point.
        #[arg(long, default_value_t = 16)]
        stride: usize,
        /// Add the asymptotic model C_a (1+au)^{−λ_a}.
        #[arg(long)]
        model: bool,
    },
    /// Evaluate g_a(s).
    G {
        #[arg(long)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        im: f64,
        #[arg(long, value_enum, default_value = "auto")]
        method: GMethod,
        /// Number of series terms (series method only).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Search D*_{i,y} for obstructions to being a B_θ set.
    QuestionSearch {
        #[arg(long)]
        i: u32,
        #[arg(long, default_value = "2")]
        y: String,
        #[arg(long)]
        x: u64,
        #[arg(long, default_value_t = 20)]
        max: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Lambda,
    Constants,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Sandwich,
    Identities,
    Rho,
    Zeros,
    Saddle,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// x ρ_a(u), divided by ζ(2) for squarefree families.
    Rho,
    /// x (log y / log x)^{λ_a}.
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GMethod {
    Auto,
    Series,
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Smooth,
    Dense,
    Strongdense,
    Thetalower,
    Thetaupper,
    Bpower,
    Bstar,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    /// Level of the dense and θ-bound families.
    #[arg(long)]
    pub i: Option<u32>,
    /// As "p/q", an integer or a decimal.
    #[arg(long, default_value = "2")]
    pub y: String,
    /// Exponent of the B families, as "p/q" or a decimal.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub squarefree: bool,
}

impl FamilyArgs {
    pub fn spec(&self) -> Result<FamilySpec> {
        let y = parse_rational(&self.y)?;
        let need_i = || self.i.ok_or_else(|| Error::Domain(format!("--family {:?} needs --i", self.family)));
        let need_a = || -> Result<Rational> {
            parse_rational(self.a.as_deref().ok_or_else(|| Error::Domain("this family needs --a".into()))?)
        };
        let spec = match self.family {
            FamilyName::Smooth => FamilySpec::smooth(y),
            FamilyName::Dense => FamilySpec::dense(need_i()?, y),
            FamilyName::Strongdense => FamilySpec::strong_dense(need_i()?, y),
            FamilyName::Thetalower => FamilySpec::theta_lower(need_i()?, y),
            FamilyName::Thetaupper => FamilySpec::theta_upper(need_i()?, y),
            FamilyName::Bpower => FamilySpec::b_power(need_a()?, y),
            FamilyName::Bstar => FamilySpec::b_star(need_a()?, y),
        }?;
        Ok(if self.squarefree { spec.squarefree() } else { spec })
    }
}
