use clap::{Args, Parser, Subcommand, ValueEnum};
use prolam_core::definability::DEFAULT_BUDGET;
use prolam_core::model::DEFAULT_CAP;
use prolam_core::profinite::DEFAULT_SAMPLES;

/// Finite standard model of the simply typed λ-calculus, regular languages
/// of λ-terms and profinite λ-terms.
///
/// Terms are written `\x:o -> o. x` (or with `λ`); the base type is `o`.
/// Any TERM, FILE or JSON argument may be given as `@path` to read it from
/// a file. JSON arguments also accept a plain path or an inline object.
#[derive(Debug, Parser)]
#[command(name = "prolam", version, propagate_version = true)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Config {
    /// Size of the base set [q]
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub q: u32,
    /// Cutoff for approximants: levels [1] .. [k]
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    /// A simple type, e.g. `(o -> o) -> o -> o`
    #[arg(long = "type", global = true, value_name = "TYPE")]
    pub ty: Option<String>,
    /// Seed for sampled relations
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Materialization cap in table entries
    #[arg(long, global = true, default_value_t = DEFAULT_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,
    /// Enumeration budget in term nodes
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = positive_usize)]
    pub budget: usize,
    /// Relations sampled per pair of levels when not exhaustive
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES, value_parser = positive_usize)]
    pub samples: usize,
    /// Largest base set tried by `pro separate`
    #[arg(long = "max-q", global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_q: u32,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type-check a closed term
    Check { term: String },
    /// β-normal η-long form of a closed term
    Normalize { term: String },
    /// Denotation of a closed term over [q]
    Interp { term: String },
    /// Definable elements of --type over [q], with witnesses
    Def,
    /// Regular languages of λ-terms (JSON: {type, q, accepting})
    #[command(subcommand)]
    Lang(LangCommand),
    /// Profinite λ-terms as approximants up to --k
    #[command(subcommand)]
    Pro(ProCommand),
    /// Automata and the Church encoding
    /// (JSON: {alphabet, q, delta: {letter: [targets]}, q0, final})
    #[command(subcommand)]
    Dfa(DfaCommand),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LangOp {
    Union,
    Intersection,
    Complement,
}

#[derive(Debug, Subcommand)]
pub enum LangCommand {
    /// Whether a closed term belongs to a language
    Member { lang: String, term: String },
    /// Boolean operations at one level
    Op {
        op: LangOp,
        lang: String,
        other: Option<String>,
    },
    /// Recognize the same language over the larger set [q]
    Embed { lang: String },
    /// Intersection of languages at different levels, over [q1 + q2]
    Intersect { left: String, right: String },
}

/// APPROX arguments are approximant JSON or a closed term, read through ι.
#[derive(Debug, Subcommand)]
pub enum ProCommand {
    /// ι(M): the interpretations of M at every level
    Iota { term: String },
    /// Naturality under all partial surjections between levels
    CheckNatural { approx: String },
    /// Membership in the logical relations of all (or sampled) relations
    CheckParametric { approx: String },
    /// Diagrammatic composite: first APPROX, then SECOND
    Compose { approx: String, second: String },
    /// Ω at --type, or Ω applied to an approximant at (A -> A) -> A -> A
    Omega { approx: Option<String> },
    /// ω-power of a Church-type approximant
    WordOmega { approx: String },
    /// Least q <= --max-q whose model tells two closed terms apart
    Separate { left: String, right: String },
}

#[derive(Debug, Subcommand)]
pub enum DfaCommand {
    /// Final state after reading a word
    Run { dfa: String, word: String },
    /// Acceptance through the Church-encoded language
    Accepts {
        dfa: String,
        word: Option<String>,
        /// A closed term of the Church type instead of a word
        #[arg(long)]
        term: Option<String>,
    },
    /// The language as an evaluation preimage at the Church type
    ToReg { dfa: String },
    /// Transition monoid
    Monoid { dfa: String },
}
