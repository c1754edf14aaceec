use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Decision procedures and unifier analysis for the modal logic K.
///
/// Exit status: 0 positive verdict, 1 negative verdict (certificate on
/// stdout), 2 usage or parse error, 3 resource limit, 4 internal
/// consistency failure.
#[derive(Parser, Debug)]
#[command(name = "kmodal", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Step budget for each prover call.
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,
    /// Largest subformula closure accepted by global consequence (at most 64).
    #[arg(long, global = true)]
    pub max_closure: Option<usize>,
    /// Print nothing on stdout; the exit status still carries the verdict.
    #[arg(long, short, global = true)]
    pub quiet: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether FORMULA is a theorem of K.
    Prove { formula: String },
    /// Decide whether FORMULA follows from the premises, necessitation allowed.
    Conseq {
        #[arg(long = "premise", value_name = "F")]
        premises: Vec<String>,
        formula: String,
    },
    /// Decide whether some conclusion follows from the premises.
    Rule {
        #[arg(long = "premise", value_name = "F")]
        premises: Vec<String>,
        #[arg(long = "conclusion", value_name = "F", required = true)]
        conclusions: Vec<String>,
    },
    /// Classify a substitution as a unifier of p0 -> []p0.
    Classify {
        #[arg(long, value_name = "S")]
        subst: String,
    },
    /// For a FORMULA with |- F -> []F, report |- F or the least n with |- F -> [n]false.
    Margins { formula: String },
    /// Check the strict chain of sigma unifiers at levels 0..=N.
    Chain { n: usize },
    /// Decide whether a unifier of the premises is projective.
    Projective {
        #[arg(long = "gamma", value_name = "F")]
        gamma: Vec<String>,
        #[arg(long, value_name = "S")]
        subst: String,
    },
    /// Search for a probe separating consequence from provability of the image.
    Exactness {
        #[arg(long = "gamma", value_name = "F")]
        gamma: Vec<String>,
        #[arg(long, value_name = "S")]
        subst: String,
        /// Largest k in the probes p0 -> [k]false.
        #[arg(long, default_value_t = 8)]
        bound: usize,
        /// Extra probe formulas, tried after the defaults.
        #[arg(long = "probe", value_name = "F")]
        probes: Vec<String>,
    },
    /// Decide admissibility of p0 -> []p0 / conclusions.
    AdmissibleMargin {
        #[arg(long = "conclusion", value_name = "F", required = true)]
        conclusions: Vec<String>,
    },
    /// Operations on model files.
    #[command(subcommand)]
    Model(ModelCommand),
}

/// Model files are JSON; `-` reads stdin.
#[derive(Subcommand, Debug)]
pub enum ModelCommand {
    /// Evaluate FORMULA at a world.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        world: String,
        formula: String,
    },
    /// Unravel a model from a world into a tree of bounded depth.
    Unravel {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        world: String,
        #[arg(long)]
        depth: usize,
        /// Write the path-to-world map here.
        #[arg(long)]
        map_out: Option<PathBuf>,
    },
    /// Keep the worlds of a tree at depth below N.
    Truncate {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Disjoint union of two models plus one edge between them.
    Graft {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Check a world map for the forth, back and atom conditions.
    Pmorphism {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
}
