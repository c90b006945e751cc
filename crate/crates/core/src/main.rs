use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use entropic_witness::harness::{
    cmd_evolve, cmd_figures, cmd_montecarlo, cmd_pcrit, cmd_state, write_pcrit, EvolveConfig,
    Layers, MonteCarloConfig, PcritConfig, StateConfig,
};
use entropic_witness::Error;

/// Entropic uncertainty witnesses, teleportation fidelity and reservoir
/// dynamics for two-qubit states.
///
/// Exit codes: 0 success, 1 bad input or I/O failure, 2 unphysical state,
/// 3 solver did not converge.
#[derive(Parser)]
#[command(name = "entropic-witness", version)]
struct Cli {
    /// Flat key = value file; flags override its settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Uncertainty report of a single state (JSON on stdout).
    State(StateArgs),
    /// Volume fractions of the correlation-vector regions.
    Montecarlo(MonteCarloArgs),
    /// Critical |p| for real p and the witnessed concurrence region.
    Pcrit(PcritArgs),
    /// Witness trajectory in a reservoir (CSV plus JSON summary).
    Evolve(EvolveArgs),
    /// Data files for the figure presets.
    Figures(FiguresArgs),
}

#[derive(Args)]
struct StateArgs {
    /// Density matrix as {"re": .., "im": ..}: a file path, inline JSON, or - for stdin.
    #[arg(long)]
    json: Option<String>,
    /// Local Bloch vector of A, "x,y,z".
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    /// Local Bloch vector of B.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// Diagonal correlations.
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
}

#[derive(Args)]
struct MonteCarloArgs {
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// Number of samples (at least 10000).
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct InitialArgs {
    /// psi or phi.
    #[arg(long)]
    family: Option<String>,
    /// Weight r of the pure component.
    #[arg(long)]
    purity: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
}

#[derive(Args)]
struct PcritArgs {
    #[command(flatten)]
    initial: InitialArgs,
    /// te, me, fe, bb, a comma list, or all.
    #[arg(long)]
    estimator: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct EvolveArgs {
    /// ohmic or lorentzian.
    #[arg(long)]
    model: Option<String>,
    /// Ohmic exponent: 0.5 or an integer.
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long = "omega-c")]
    omega_c: Option<f64>,
    #[arg(long)]
    gamma0: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    #[command(flatten)]
    initial: InitialArgs,
    #[arg(long = "t-max")]
    t_max: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    /// Max-norm change between refinements that counts as converged (Ohmic models).
    #[arg(long)]
    tolerance: Option<f64>,
    /// Step halvings allowed before reporting non-convergence (Ohmic models).
    #[arg(long = "max-refinements")]
    max_refinements: Option<u32>,
    /// Trajectory CSV path; the summary is written beside it as .json.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FiguresArgs {
    /// Figure id (1b, 2a, 4c, ...), a comma list, or all.
    id: String,
    #[arg(long, default_value = "figures")]
    outdir: PathBuf,
}

/// Flags that were given, as a config layer.
#[derive(Default)]
struct FlagLayer(BTreeMap<String, String>);

impl FlagLayer {
    fn set<T: ToString>(&mut self, key: &str, value: &Option<T>) -> &mut Self {
        if let Some(v) = value {
            self.0.insert(key.to_string(), v.to_string());
        }
        self
    }

    fn initial(&mut self, a: &InitialArgs) -> &mut Self {
        self.set("family", &a.family)
            .set("purity", &a.purity)
            .set("alpha", &a.alpha)
            .set("theta", &a.theta)
    }
}

fn layers(config: &Option<PathBuf>, flags: FlagLayer) -> Result<Layers, Error> {
    let mut l = Layers::new();
    if let Some(path) = config {
        l.push_file(path)?;
    }
    l.push(flags.0);
    Ok(l)
}

fn run(cli: Cli) -> Result<(), Error> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut f = FlagLayer::default();
    match cli.command {
        Command::State(a) => {
            f.set("json", &a.json).set("r", &a.r).set("s", &a.s).set("v", &a.v);
            let cfg = StateConfig::resolve(&layers(&cli.config, f)?)?;
            let report = cmd_state(&cfg)?;
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
        }
        Command::Montecarlo(a) => {
            f.set("r", &a.r).set("s", &a.s).set("n", &a.n).set("seed", &a.seed);
            let cfg = MonteCarloConfig::resolve(&layers(&cli.config, f)?)?;
            let total = cfg.n;
            let report = cmd_montecarlo(&cfg, |done| {
                eprint!("\rmontecarlo: {done}/{total}");
                if done == total {
                    eprintln!();
                }
            })?;
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
        }
        Command::Pcrit(a) => {
            f.initial(&a.initial).set("estimator", &a.estimator).set("format", &a.format);
            let cfg = PcritConfig::resolve(&layers(&cli.config, f)?)?;
            write_pcrit(&mut out, &cmd_pcrit(&cfg)?, cfg.format)?;
        }
        Command::Evolve(a) => {
            f.set("model", &a.model)
                .set("s", &a.s)
                .set("eta", &a.eta)
                .set("omega-c", &a.omega_c)
                .set("gamma0", &a.gamma0)
                .set("lambda", &a.lambda)
                .set("delta", &a.delta)
                .initial(&a.initial)
                .set("t-max", &a.t_max)
                .set("step", &a.step)
                .set("tolerance", &a.tolerance)
                .set("max-refinements", &a.max_refinements)
                .set("out", &a.out.as_ref().map(|p| p.display().to_string()));
            let cfg = EvolveConfig::resolve(&layers(&cli.config, f)?)?;
            eprintln!("evolve: t_max {} step {}", cfg.t_max, cfg.step);
            let res = cmd_evolve(&cfg)?;
            eprintln!("wrote {} and {}", res.csv.display(), res.summary_path.display());
            serde_json::to_writer_pretty(&mut out, &res.summary)?;
            writeln!(out)?;
        }
        Command::Figures(a) => {
            for path in cmd_figures(&a.id, &a.outdir)? {
                eprintln!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
