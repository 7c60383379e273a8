use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const GUIDE: &str = "\
FOREST GRAMMAR
  forest := ε | tree (\" \" tree)*
  tree   := label [ \"[\" forest \"]\" ]
  The empty forest may be written as \"\" or \"1\". Labels come from --colors
  (default: the single color \"o\"). Examples: \"o\", \"o[o o]\", \"o o[o]\".

LETTER WORDS
  With --letters, words are strings over named letters instead of forests.
  \"--letters abc\" gives one-character letters of degree 1; \"--letters a:1,x:2\"
  gives named letters with explicit degrees. Multi-character names are joined
  with dots: \"a.xx.b\".

SERIES JSON
  {\"trunc\": N, \"terms\": [[\"o[o]\", \"1/2\"], ...]}
  LB-series add \"kind\": \"type1\" | \"type2\" | \"type3\" and optionally
  \"colors\": [\"o\", ...]. Coefficients are exact rationals \"p/q\" or integers.
  Basis elements not listed have coefficient zero; degrees above N are unknown.

SUBSTITUTION MAP JSON
  {\"o\": [[\"o\", \"1\"], [\"o[o]\", \"1/2\"]]}   one forest polynomial per color

EXIT STATUS
  0 success, 1 domain error (bad input data, failed invariant), 2 usage error.

ENVIRONMENT
  LBHOPF_COLOR=never|auto   disable or allow terminal highlighting of errors";

#[derive(Debug, Parser)]
#[command(name = "lbhopf", version, about = "Hopf algebras of planar forests, Lie-Butcher series and Lie group integrators", after_long_help = GUIDE)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Comma-separated color labels for forest nodes.
    #[arg(long, global = true, default_value = "o")]
    pub colors: String,

    /// Use letter words instead of forests (e.g. "abc" or "a:1,x:2").
    #[arg(long, global = true)]
    pub letters: Option<String>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HopfChoice {
    /// Shuffle product, deconcatenation coproduct.
    Sh,
    /// Concatenation product, deshuffle coproduct.
    Conc,
    /// Shuffle product, coproduct dual to the Grossman-Larson product (forests only).
    Hn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Type1,
    Type2,
    Type3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Euler,
    Rkmk4,
    Cg3,
    Cf4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    Sphere,
    Isospectral,
    Rn,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shuffle product of two words.
    Shuffle { left: String, right: String },
    /// Deconcatenation coproduct of a word.
    Deconcat { word: String },
    /// Deshuffle coproduct of a word.
    Deshuffle { word: String },
    /// Coproduct in the chosen Hopf algebra.
    Coproduct {
        word: String,
        #[arg(long, value_enum, default_value_t = HopfChoice::Sh)]
        hopf: HopfChoice,
    },
    /// Antipode in the chosen Hopf algebra.
    Antipode {
        word: String,
        #[arg(long, value_enum, default_value_t = HopfChoice::Sh)]
        hopf: HopfChoice,
    },
    /// Eulerian idempotent applied to a word.
    Euler {
        word: String,
        #[arg(long, value_enum, default_value_t = HopfChoice::Sh)]
        hopf: HopfChoice,
    },
    /// Dynkin operator D = S*Y applied to a word.
    Dynkin {
        word: String,
        #[arg(long, value_enum, default_value_t = HopfChoice::Sh)]
        hopf: HopfChoice,
        /// Apply Y^-1 D instead.
        #[arg(long)]
        idempotent: bool,
    },
    /// Gamma, the inverse of right composition with D, on an infinitesimal character.
    Gamma {
        /// Series JSON file, or "-" for stdin.
        input: PathBuf,
    },
    /// Left grafting of one forest onto another.
    Graft { left: String, right: String },
    /// Grossman-Larson product of two forests.
    Glprod { left: String, right: String },
    /// Non-commutative Bell polynomial B_n or partial B_{n,k}.
    Bell { n: usize, k: Option<usize> },
    /// Q polynomial Q_n or Q_{n,k}.
    Qpoly { n: usize, k: Option<usize> },
    /// Faa di Bruno coproduct of a word in d1, d2, ... (e.g. "d1.d2").
    FdbCoproduct { word: String },
    /// Type 3 series of the exact flow up to degree N.
    ExactSeries {
        #[arg(default_value_t = 5)]
        n: usize,
    },
    /// Type 3 series of the exponential Euler method.
    EulerSeries {
        #[arg(default_value_t = 5)]
        n: usize,
    },
    /// Convert an LB-series between its three representations.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: KindArg,
    },
    /// Compose two Type 3 series.
    Compose { left: PathBuf, right: PathBuf },
    /// Inverse of a Type 3 series.
    Invert { input: PathBuf },
    /// Modified (backward error) field of a Type 3 series, as Type 2.
    BackwardError { input: PathBuf },
    /// Apply the substitution law to a forest.
    Substitute {
        forest: String,
        #[arg(long)]
        map: PathBuf,
        /// Highest degree kept.
        #[arg(short = 'n', long = "trunc", default_value_t = 5)]
        trunc: usize,
    },
    /// Integrate a test problem and print the trajectory as CSV.
    Integrate {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long)]
        h: f64,
        #[arg(long = "T", alias = "t-end")]
        t_end: f64,
    },
    /// Measured convergence orders on a test problem.
    Convergence {
        #[arg(long, value_enum, default_value_t = ProblemArg::Sphere)]
        problem: ProblemArg,
        /// Finest step is 2^-to.
        #[arg(long, default_value_t = 8)]
        to: i32,
        /// Coarsest step is 2^-from.
        #[arg(long, default_value_t = 3)]
        from: i32,
        #[arg(long = "T", alias = "t-end", default_value_t = 1.0)]
        t_end: f64,
    },
}
