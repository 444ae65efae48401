use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use paramkit::MonomialOrder;

#[derive(Parser, Debug)]
#[command(name = "paramkit", version, about = "Systems of parameters, limit closures and Koszul data over quotient rings")]
pub struct Cli {
    /// Emit a machine-readable JSON document on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Monomial order used for lifts and Groebner witnesses.
    #[arg(long, global = true, value_enum, default_value_t = Order::Grevlex)]
    pub order: Order,
    /// Last limit-closure stage computed before giving up.
    #[arg(long, global = true, default_value_t = 16)]
    pub tmax: u32,
    /// Consecutive equal stages required to declare stabilization.
    #[arg(long, global = true, default_value_t = 2)]
    pub window: u32,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Suppress the warning for non-homogeneous input.
    #[arg(long, global = true)]
    pub no_homogeneity_warning: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Order {
    Grevlex,
    Lex,
}

impl From<Order> for MonomialOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Grevlex => MonomialOrder::Grevlex,
            Order::Lex => MonomialOrder::Lex,
        }
    }
}

#[derive(Args, Debug)]
pub struct SeqArgs {
    /// Name of a sequence defined in the session file.
    #[arg(long)]
    pub seq: String,
    pub file: PathBuf,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    /// Sequence `x`, the system of parameters being compared against.
    #[arg(long)]
    pub x: String,
    /// Sequence `y`, contained in `(x)`.
    #[arg(long)]
    pub y: String,
    /// Lifting matrix with `y = A x`; computed when omitted.
    #[arg(long)]
    pub matrix: Option<String>,
    pub file: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a sequence is a system of parameters.
    Sopcheck(SeqArgs),
    /// Limit closure of a sequence with its stabilization stage.
    Limclose(SeqArgs),
    /// Check that (x_1...x_d)^(t-1) avoids (x)^[t] for t up to --tmax.
    Mc(SeqArgs),
    /// Full report comparing x and y = A x.
    Drtest {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 3)]
        stages: u32,
    },
    /// Injectivity of det A from S/(x) to S/(y).
    Map5(PairArgs),
    /// Injectivity of det A from S/(x)^lim to S/(y)^lim.
    Map1(PairArgs),
    /// Stage-wise injectivity of the local cohomology map.
    Map2 {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 3)]
        stages: u32,
        file: PathBuf,
    },
    /// Koszul differentials of a sequence.
    Koszul(SeqArgs),
    /// det A - det B lies in stage d+1 of the limit closure of y, for lifts A and B.
    Detcor {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        file: PathBuf,
    },
    /// A matrix A with y = A x.
    Lift {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        file: PathBuf,
    },
    /// (seq) : f.
    Colon {
        #[arg(long)]
        seq: String,
        /// Element given inline or as a one-element sequence name.
        #[arg(long)]
        by: String,
        file: PathBuf,
    },
    /// (left) intersected with (right).
    Intersect {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        file: PathBuf,
    },
    /// Krull dimension of S, or of S/(seq) when --seq is given.
    Dim {
        #[arg(long)]
        seq: Option<String>,
        file: PathBuf,
    },
    /// Length of S/(seq).
    Length(SeqArgs),
    /// (seq) : m.
    Socle(SeqArgs),
    /// Decide whether a sequence is regular.
    Regseq(SeqArgs),
    /// Sample systems of parameters and compare each with its limit closure.
    Cmprobe {
        #[arg(long, default_value_t = 20)]
        trials: usize,
        file: PathBuf,
    },
    /// Frobenius certificate rows for c z^q in (x)^[q].
    Frobcert {
        #[arg(long)]
        c: String,
        #[arg(long)]
        z: String,
        #[command(flatten)]
        pair: PairArgs,
        /// Powers of the characteristic, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        q: Vec<u64>,
    },
    /// Search for a system of parameters whose ideal contains 0 : u.
    Zerocolon {
        #[arg(long)]
        u: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        file: PathBuf,
    },
    /// Check the expectations of a bundled scenario or a session file.
    Scenario {
        /// Bundled scenario name; omit with --list or --file.
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        file: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Sopcheck(_) => "sopcheck",
            Command::Limclose(_) => "limclose",
            Command::Mc(_) => "mc",
            Command::Drtest { .. } => "drtest",
            Command::Map5(_) => "map5",
            Command::Map1(_) => "map1",
            Command::Map2 { .. } => "map2",
            Command::Koszul(_) => "koszul",
            Command::Detcor { .. } => "detcor",
            Command::Lift { .. } => "lift",
            Command::Colon { .. } => "colon",
            Command::Intersect { .. } => "intersect",
            Command::Dim { .. } => "dim",
            Command::Length(_) => "length",
            Command::Socle(_) => "socle",
            Command::Regseq(_) => "regseq",
            Command::Cmprobe { .. } => "cmprobe",
            Command::Frobcert { .. } => "frobcert",
            Command::Zerocolon { .. } => "zerocolon",
            Command::Scenario { .. } => "scenario",
        }
    }
}
