//! `horolab`: command-line front end to the experiment drivers.

mod commands;
mod settings;

use clap::{Args, Parser, Subcommand};
use commands::Outcome;
use horolab_core::report::FitStatus;
use horolab_core::Result;
use settings::Settings;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "horolab", version, about = "Horocycle equidistribution laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Plain-text key=value file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// CSV destination (stdout by default).
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON summary destination (stdout after --out, stderr otherwise).
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long)]
    measure: Option<String>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    measure: Option<String>,
    /// eisenstein:t=<t>, bump:y0=<a>,y1=<b> or indicator:ygt=<c>
    #[arg(long)]
    test: Option<String>,
    /// y_max:ratio:count
    #[arg(long)]
    ygrid: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    #[arg(long)]
    q: Option<String>,
    /// auto, cylinder or montecarlo
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    budget: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    sigma: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier transform of a measure on an arithmetic frequency grid.
    Fourier {
        #[command(flatten)]
        m: MeasureArgs,
        /// start:end:step
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        #[arg(long)]
        tol: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Fourier ℓ¹-dimension from partial sums of |μ̂|.
    Dim {
        #[command(flatten)]
        m: MeasureArgs,
        #[arg(long)]
        xmax: Option<String>,
        #[arg(long)]
        xmin: Option<String>,
        #[arg(long)]
        points: Option<String>,
        /// Maximise over shifts θ ∈ [0, 1].
        #[arg(long)]
        star: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Decay of |μ_y(φ) − m_X(φ)| down a height grid.
    Equidist {
        #[command(flatten)]
        e: ExperimentArgs,
        #[command(flatten)]
        common: Common,
    },
    /// μ_y(E) against its truncated Fourier expansion.
    BasisCheck {
        #[command(flatten)]
        e: ExperimentArgs,
        #[command(flatten)]
        common: Common,
    },
    /// sup over nonzero modes of the horocycle coefficients of E(·, ½+it).
    SpectralGap {
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        ygrid: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Monte-Carlo counting profile N_x(Q) = #{q ≤ Q : ‖qx‖ < ψ(q)}.
    Khintchine {
        #[command(flatten)]
        m: MeasureArgs,
        /// pow:<tau>, qlogq, const:<c> or table:<v1>,...
        #[arg(long)]
        psi: Option<String>,
        #[arg(long)]
        qmax: Option<String>,
        #[arg(long)]
        samples: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Oscillatory transform of w against e(ξf) with its stationary-phase term.
    Stationary {
        /// poly:c0,c1,...
        #[arg(long, allow_hyphen_values = true)]
        phase: Option<String>,
        /// coswin:center,radius or bumpwin:center,radius
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// min:max:count, log-spaced
        #[arg(long)]
        xi: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

fn put(s: &mut Settings, key: &str, v: &Option<String>) {
    if let Some(v) = v {
        s.set(key, v.clone());
    }
}

impl ExperimentArgs {
    fn apply(&self, s: &mut Settings) {
        put(s, "measure", &self.measure);
        put(s, "test", &self.test);
        put(s, "ygrid", &self.ygrid);
        put(s, "x0", &self.x0);
        put(s, "q", &self.q);
        put(s, "method", &self.method);
        put(s, "budget", &self.budget);
        put(s, "tol", &self.tol);
        put(s, "sigma", &self.sigma);
    }
}

struct Destinations {
    out: Option<PathBuf>,
    summary: Option<PathBuf>,
}

fn load(common: &Common) -> Result<(Settings, u64, Destinations)> {
    let mut s = match &common.config {
        Some(path) => Settings::from_config(&std::fs::read_to_string(path)?)?,
        None => Settings::default(),
    };
    if let Some(seed) = common.seed {
        s.set("seed", seed.to_string());
    }
    let seed: u64 = s.get("seed", 0)?;
    let out = common.out.clone().or_else(|| s.raw("out").map(PathBuf::from));
    let summary = common.summary.clone().or_else(|| s.raw("summary").map(PathBuf::from));
    Ok((s, seed, Destinations { out, summary }))
}

fn run(cli: Cli) -> Result<FitStatus> {
    let (outcome, dest) = match &cli.command {
        Command::Fourier { m, xi, tol, common } => {
            let (mut s, seed, dest) = load(common)?;
            put(&mut s, "measure", &m.measure);
            put(&mut s, "xi", xi);
            put(&mut s, "tol", tol);
            (commands::fourier(&mut s, seed)?, dest)
        }
        Command::Dim { m, xmax, xmin, points, star, common } => {
            let (mut s, seed, dest) = load(common)?;
            put(&mut s, "measure", &m.measure);
            put(&mut s, "xmax", xmax);
            put(&mut s, "xmin", xmin);
            put(&mut s, "points", points);
            if *star {
                s.set("star", "true");
            }
            (commands::dim(&mut s, seed)?, dest)
        }
        Command::Equidist { e, common } => {
            let (mut s, seed, dest) = load(common)?;
            e.apply(&mut s);
            (commands::equidist(&mut s, seed)?, dest)
        }
        Command::BasisCheck { e, common } => {
            let (mut s, seed, dest) = load(common)?;
            e.apply(&mut s);
            (commands::basis_check(&mut s, seed)?, dest)
        }
        Command::SpectralGap { t, ygrid, common } => {
            let (mut s, seed, dest) = load(common)?;
            put(&mut s, "t", t);
            put(&mut s, "ygrid", ygrid);
            (commands::spectral_gap(&mut s, seed)?, dest)
        }
        Command::Khintchine { m, psi, qmax, samples, common } => {
            let (mut s, seed, dest) = load(common)?;
            put(&mut s, "measure", &m.measure);
            put(&mut s, "psi", psi);
            put(&mut s, "qmax", qmax);
            put(&mut s, "samples", samples);
            (commands::khintchine(&mut s, seed)?, dest)
        }
        Command::Stationary { phase, window, xi, common } => {
            let (mut s, seed, dest) = load(common)?;
            put(&mut s, "phase", phase);
            put(&mut s, "window", window);
            put(&mut s, "xi", xi);
            (commands::stationary(&mut s, seed)?, dest)
        }
    };
    emit(&outcome, &dest)?;
    Ok(outcome.status)
}

fn emit(o: &Outcome, dest: &Destinations) -> Result<()> {
    let json = o.summary.to_json()?;
    match &dest.out {
        Some(path) => std::fs::write(path, &o.csv)?,
        None => std::io::stdout().write_all(&o.csv)?,
    }
    match (&dest.summary, &dest.out) {
        (Some(path), _) => std::fs::write(path, json)?,
        (None, Some(_)) => std::io::stdout().write_all(json.as_bytes())?,
        (None, None) => std::io::stderr().write_all(json.as_bytes())?,
    }
    Ok(())
}

fn exit_code(status: FitStatus) -> u8 {
    match status {
        FitStatus::Ok | FitStatus::Superpolynomial => 0,
        FitStatus::Inconclusive | FitStatus::NoDecay | FitStatus::Degenerate => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(exit_code(status)),
        Err(e) => {
            eprintln!("horolab: {e}");
            ExitCode::from(1)
        }
    }
}
