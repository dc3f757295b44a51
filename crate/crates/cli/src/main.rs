mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ncreduce::{Field, Limits, WorkspaceConfig};

/// Exact workbench for noncommutative polynomial families and reductions.
#[derive(Parser, Debug)]
#[command(name = "ncreduce", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Coefficient field: `q` (rationals), `p` (default prime) or `p=<prime>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: Field,
    #[arg(long, global = true, default_value_t = Limits::default().term_budget)]
    pub term_budget: usize,
    #[arg(long, global = true, default_value_t = Limits::default().state_budget)]
    pub state_budget: usize,
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Global {
    pub fn config(&self) -> WorkspaceConfig {
        WorkspaceConfig {
            field: self.field,
            limits: Limits {
                term_budget: self.term_budget,
                state_budget: self.state_budget,
            },
            ..Default::default()
        }
    }
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse::<Field>().map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a family member as `<coeff> <var> ...` lines.
    Family {
        /// e.g. `pal:n=2`, `dyck:k=2,d=4`, `perstarchi:n=2,chi=chi.txt`.
        spec: String,
    },
    /// Build a reduction and write it in the reduction file format.
    Reduce {
        /// dyck-complete, pal-vsk, pal-d2, palsq-d2, dk-d2, depth, per-idstar,
        /// per-chi, hier-iproj, vbp-trivial or identity.
        kind: String,
        /// `key=value` parameters such as `n=2` or `circuit=c.txt`.
        params: Vec<String>,
    },
    /// Check a reduction file against its source and target families.
    Verify {
        reduction: PathBuf,
        /// Overrides the `source-family` header.
        #[arg(long)]
        source: Option<String>,
        /// Overrides the `target-family` header.
        #[arg(long)]
        target: Option<String>,
    },
    /// Hankel ranks of a homogeneous family member at the given cuts.
    Rank {
        spec: String,
        #[arg(long = "cut", required = true)]
        cuts: Vec<usize>,
    },
    /// Hadamard product of a circuit (or polynomial file) with an ABP.
    Hadamard { f: PathBuf, g: PathBuf },
    /// Expand a circuit up to a degree cap (default: its formal degree).
    Expand {
        circuit: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Compose `f <= g` with `g <= h` into `f <= h`.
    Compose { first: PathBuf, second: PathBuf },
    /// Seeded random instance: `circuit`, `skew-circuit` or `abp`.
    Random {
        kind: String,
        /// Comma-separated variable names.
        #[arg(long, default_value = "x0,x1")]
        vars: String,
        /// Extra gates for circuits, depth for ABPs.
        #[arg(long, default_value_t = 4)]
        size: usize,
        /// Degree cap for circuits, layer width for ABPs.
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cfg = cli.global.config();
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let run = || -> anyhow::Result<u8> {
        use commands::*;
        let g = &cli.global;
        match &cli.command {
            Command::Family { spec } => family(g, spec),
            Command::Reduce { kind, params } => reduce(g, kind, params),
            Command::Verify {
                reduction,
                source,
                target,
            } => verify(g, reduction, source.as_deref(), target.as_deref()),
            Command::Rank { spec, cuts } => rank(g, spec, cuts),
            Command::Hadamard { f, g: abp } => hadamard(g, f, abp),
            Command::Expand { circuit, cap } => expand(g, circuit, *cap),
            Command::Compose { first, second } => compose(g, first, second),
            Command::Random {
                kind,
                vars,
                size,
                bound,
            } => random(g, kind, vars, *size, *bound),
        }
    };
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
