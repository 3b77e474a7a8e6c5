use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use diamond_cli::config::{params_from, parse_config, sweep_from, Settings};
use diamond_cli::sweep::LOW_TEMPERATURE;
use diamond_cli::{find_critical, preset, run_sweep, CriticalKind, Model, SweepSpec};

/// Thermal entanglement and teleportation fidelity of the Ising-XXZ diamond
/// chain with one impurity plaquette. Energies are in units of J = 1.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one parameter and write a CSV table.
    ///
    /// Columns: the axis value, then one column per observable. C is the
    /// concurrence, Cl1 the l1-norm coherence, FA the average fidelity, Cout
    /// the concurrence of the teleported state for --theta/--phi and
    /// rho_elements the five entries r11,r22,r33,r44,r23. Suffix _imp or
    /// _host picks a model; a bare name writes both. Values carry 17
    /// significant digits.
    Sweep(SweepArgs),
    /// Write the CSVs of a figure preset, one per curve.
    Preset(PresetArgs),
    /// Locate a threshold crossing by scan and bisection.
    Critical(CriticalArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// key=value file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "J")]
    j: Option<f64>,
    #[arg(long = "Delta")]
    delta: Option<f64>,
    #[arg(long = "J0")]
    j0: Option<f64>,
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long = "T")]
    t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long = "Omega", allow_hyphen_values = true)]
    omega: Option<f64>,
}

impl ParamArgs {
    fn settings(&self) -> anyhow::Result<Settings> {
        let mut s = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                parse_config(&text)?
            }
            None => Settings::new(),
        };
        let flags = [
            ("J", self.j),
            ("Delta", self.delta),
            ("J0", self.j0),
            ("B", self.b),
            ("T", self.t),
            ("alpha", self.alpha),
            ("eta", self.eta),
            ("gamma", self.gamma),
            ("Omega", self.omega),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                s.insert(key.to_string(), v.to_string());
            }
        }
        Ok(s)
    }
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// T, B, Delta, alpha, eta, gamma, Omega or J0.
    #[arg(long)]
    axis: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    hi: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Comma list, e.g. C,Cl1,FA or C_imp,Cout_host,rho_elements.
    #[arg(long)]
    obs: Option<String>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    phi: Option<f64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PresetArgs {
    /// fig2, fig3, fig5a, fig5b, fig6a, fig6b, fig7, fig8, fig9a, fig9b,
    /// fig10, fig11, fig12a or fig12b.
    name: String,
    #[arg(long, default_value = ".")]
    outdir: PathBuf,
    /// Curve values: fields for temperature sweeps, temperatures for fig6a/fig6b.
    #[arg(long, value_delimiter = ',')]
    curves: Option<Vec<f64>>,
}

#[derive(Args)]
struct CriticalArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// entanglement_T, fidelity_T or critical_B.
    #[arg(long)]
    kind: String,
    /// imp evaluates the given distortions; host zeroes them.
    #[arg(long, default_value = "imp")]
    model: String,
    #[arg(long)]
    lo: Option<f64>,
    #[arg(long)]
    hi: Option<f64>,
}

fn warn_if_cold(spec: &SweepSpec) {
    if spec.below_default_grid() {
        eprintln!("warning: temperatures below {LOW_TEMPERATURE} requested; beta exceeds 100");
    }
}

fn sweep(args: SweepArgs) -> anyhow::Result<()> {
    let mut s = args.params.settings()?;
    let text = [
        ("axis", args.axis.clone()),
        ("lo", args.lo.map(|v| v.to_string())),
        ("hi", args.hi.map(|v| v.to_string())),
        ("points", args.points.map(|v| v.to_string())),
        ("obs", args.obs.clone()),
        ("theta", args.theta.map(|v| v.to_string())),
        ("phi", args.phi.map(|v| v.to_string())),
    ];
    for (key, value) in text {
        if let Some(v) = value {
            s.insert(key.to_string(), v);
        }
    }
    let spec = sweep_from(&s)?;
    warn_if_cold(&spec);
    let csv = run_sweep(&spec)?;
    let out = args.out.or_else(|| s.get("out").map(PathBuf::from));
    match out {
        Some(path) => {
            fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn write_preset(args: PresetArgs) -> anyhow::Result<()> {
    let curves = preset(&args.name, args.curves.as_deref())?;
    fs::create_dir_all(&args.outdir)
        .with_context(|| format!("creating {}", args.outdir.display()))?;
    for curve in curves {
        warn_if_cold(&curve.spec);
        let path = args.outdir.join(format!("{}.csv", curve.stem));
        fs::write(&path, run_sweep(&curve.spec)?)
            .with_context(|| format!("writing {}", path.display()))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn critical(args: CriticalArgs) -> anyhow::Result<()> {
    let kind: CriticalKind = args.kind.parse()?;
    let mut p = params_from(&args.params.settings()?)?;
    if args.model.parse::<Model>()? == Model::Host {
        p = p.host_limit();
    }
    let (dlo, dhi) = kind.default_bracket();
    let bracket = (args.lo.unwrap_or(dlo), args.hi.unwrap_or(dhi));
    if kind == CriticalKind::CriticalB && p.t < LOW_TEMPERATURE {
        eprintln!("warning: temperature below {LOW_TEMPERATURE} requested");
    }
    if kind != CriticalKind::CriticalB && bracket.0 < LOW_TEMPERATURE {
        eprintln!("warning: bracket starts below {LOW_TEMPERATURE}");
    }
    let x = find_critical(kind, &p, bracket)?;
    println!("{kind},{x:.16e}");
    Ok(())
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Sweep(a) => sweep(a),
        Command::Preset(a) => write_preset(a),
        Command::Critical(a) => critical(a),
    }
}
