use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stirling::cycle::{analyze, CostModel, CycleParams};
use stirling::format::{opt, sig};
use stirling::sweep::{self, Knob, SweepSpec};
use stirling::verify::{self, VerifyConfig};
use stirling::{Error, WorkingMedium};

const EXIT_VALIDATION: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "stirling", version, about = "Quantum Stirling cycle thermodynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single cycle and print the full report.
    Cycle(CycleArgs),
    /// Evaluate cycles along a parameter grid and write CSV or JSON.
    Sweep(SweepArgs),
    /// Run the property suites and report per-property residuals.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Medium {
    Single,
    Coupled,
}

impl From<Medium> for WorkingMedium {
    fn from(m: Medium) -> Self {
        match m {
            Medium::Single => WorkingMedium::SingleSpin,
            Medium::Coupled => WorkingMedium::CoupledSpins,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CycleArgs {
    #[arg(long, value_enum, default_value = "single")]
    medium: Medium,
    /// Field on the A/D isochore. Alternatively give --kappa.
    #[arg(long, conflicts_with = "kappa")]
    lambda1: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    lambda2: f64,
    /// Sets lambda1 = kappa * lambda2.
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    j: f64,
    #[arg(long, default_value_t = 3.0)]
    th: f64,
    #[arg(long, default_value_t = 2.0)]
    tc: f64,
    /// none | min-carnot | fixed:<v>
    #[arg(long, default_value = "min-carnot")]
    cost: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

impl CycleArgs {
    fn params(&self) -> Result<CycleParams, Error> {
        let lambda1 = match (self.lambda1, self.kappa) {
            (Some(l), _) => l,
            (None, Some(k)) => k * self.lambda2,
            (None, None) => {
                return Err(Error::InvalidInput("one of --lambda1 or --kappa is required".into()))
            }
        };
        let params = CycleParams::new(self.medium.into(), lambda1, self.lambda2, self.th, self.tc)
            .with_j(self.j)
            .with_cost(self.cost.parse::<CostModel>()?);
        params.validate()?;
        Ok(params)
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "single")]
    medium: Medium,
    /// kappa | j | lambda1 | lambda2 | th | tc. Defaults to kappa for the
    /// single spin and j for the coupled pair.
    #[arg(long)]
    knob: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    stop: Option<f64>,
    #[arg(long, default_value_t = sweep::DEFAULT_STEPS)]
    steps: usize,
    #[arg(long, allow_negative_numbers = true)]
    lambda1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    lambda2: Option<f64>,
    /// Fixed kappa for sweeps over other knobs (sets lambda1 = kappa * lambda2).
    #[arg(long, conflicts_with = "lambda1")]
    kappa: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    j: Option<f64>,
    #[arg(long)]
    th: Option<f64>,
    #[arg(long)]
    tc: Option<f64>,
    #[arg(long, default_value = "min-carnot")]
    cost: String,
    /// Output file. Standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to --out.
    #[arg(long, requires = "out")]
    plot: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

impl SweepArgs {
    fn spec(&self) -> Result<SweepSpec, Error> {
        let default_knob = match self.medium {
            Medium::Single => Knob::Kappa,
            Medium::Coupled => Knob::J,
        };
        let knob = match &self.knob {
            Some(k) => k.parse()?,
            None => default_knob,
        };
        // Figure defaults for the medium, then per-flag overrides.
        let mut spec = match self.medium {
            Medium::Single => SweepSpec::kappa_figure(),
            Medium::Coupled => SweepSpec::coupling_figure(),
        };
        let defaults_apply = knob == default_knob;
        spec.knob = knob;
        let base = &mut spec.base;
        if let Some(v) = self.lambda2 {
            base.lambda2 = v;
        }
        if let Some(v) = self.lambda1 {
            base.lambda1 = v;
        }
        if let Some(k) = self.kappa {
            base.lambda1 = k * base.lambda2;
        }
        if let Some(v) = self.j {
            base.j = v;
        }
        if let Some(v) = self.th {
            base.t_hot = v;
        }
        if let Some(v) = self.tc {
            base.t_cold = v;
        }
        base.cost_model = self.cost.parse()?;
        spec.steps = self.steps;
        match (self.start, self.stop) {
            (Some(a), Some(b)) => {
                spec.start = a;
                spec.stop = b;
            }
            (None, None) if defaults_apply => {}
            _ => {
                return Err(Error::InvalidInput(format!(
                    "--start and --stop are required when sweeping {knob} on this medium"
                )))
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    seed: u64,
    /// Randomized draws per property.
    #[arg(long, default_value_t = VerifyConfig::default().trials)]
    trials: usize,
    /// Points per figure grid.
    #[arg(long, default_value_t = VerifyConfig::default().grid_steps)]
    steps: usize,
    /// Flip the sign of the entropy production in the Carnot-deficit check.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn report_csv(r: &stirling::CycleReport) -> Vec<(&'static str, String)> {
    let flags: Vec<&str> = r.flags.iter().map(|f| f.as_str()).collect();
    vec![
        ("medium", r.medium.to_string()),
        ("lambda1", sig(r.lambda1)),
        ("lambda2", sig(r.lambda2)),
        ("j", sig(r.j)),
        ("t_hot", sig(r.t_hot)),
        ("t_cold", sig(r.t_cold)),
        ("cost_model", r.cost_model.to_string()),
        ("q1", sig(r.q1)),
        ("q2", sig(r.q2)),
        ("q3", sig(r.q3)),
        ("q4", sig(r.q4)),
        ("work", sig(r.work)),
        ("delta_q", sig(r.delta_q)),
        ("q_h", sig(r.q_h)),
        ("q_c", sig(r.q_c)),
        ("w_cost_min", sig(r.w_cost_min)),
        ("w_cost_applied", sig(r.w_cost_applied)),
        ("w_cost_sufficient", sig(r.w_cost_sufficient)),
        ("w_cost_required", sig(r.w_cost_required)),
        ("sigma", sig(r.sigma)),
        ("carnot_deficit", opt(r.carnot_deficit)),
        ("eta_regen_free", opt(r.eta_regen_free)),
        ("eta_regen_cost", opt(r.eta_regen_cost)),
        ("eta_conventional", opt(r.eta_conventional)),
        ("eta_regen_required", opt(r.eta_regen_required)),
        ("eta_carnot", sig(r.eta_carnot)),
        ("mode", r.mode.to_string()),
        ("flags", flags.join(";")),
    ]
}

fn run_cycle(args: &CycleArgs) -> Result<(), Error> {
    let report = analyze(&args.params()?)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let (keys, values): (Vec<_>, Vec<_>) = report_csv(&report).into_iter().unzip();
            let mut w = csv::Writer::from_writer(out);
            w.write_record(keys)?;
            w.write_record(values)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn write_rows<W: Write>(out: W, format: Format, knob: Knob, rows: &[sweep::SweepRow]) -> Result<(), Error> {
    match format {
        Format::Csv => sweep::write_csv(out, rows),
        Format::Json => sweep::write_json(out, knob, rows),
    }
}

fn run_sweep(args: &SweepArgs) -> Result<(), Error> {
    let spec = args.spec()?;
    let rows = spec.run()?;
    match &args.out {
        None => write_rows(io::stdout().lock(), args.format, spec.knob, &rows),
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_rows(&mut w, args.format, spec.knob, &rows)?;
            w.flush()?;
            if args.plot {
                let script = sweep::plot_script(
                    &path.display().to_string(),
                    &path.with_extension("png").display().to_string(),
                    spec.knob,
                );
                std::fs::write(plot_path(path), script)?;
            }
            Ok(())
        }
    }
}

fn plot_path(out: &Path) -> PathBuf {
    out.with_extension("gp")
}

fn run_verify(args: &VerifyArgs) -> Result<bool, Error> {
    let cfg = VerifyConfig {
        seed: args.seed,
        trials: args.trials,
        grid_steps: args.steps,
        inject_fault: args.inject_fault,
    };
    let summary = verify::run(&cfg)?;
    println!("seed={} trials={} grid_steps={}", cfg.seed, cfg.trials, cfg.grid_steps);
    println!("{summary}");
    Ok(summary.all_passed())
}

fn exit_for(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::Io(_) | Error::Csv(_) => ExitCode::from(EXIT_IO),
        Error::InvalidInput(_) | Error::Divergence { .. } => ExitCode::from(EXIT_VALIDATION),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Cycle(a) => run_cycle(a).map(|_| true),
        Command::Sweep(a) => run_sweep(a).map(|_| true),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(e) => exit_for(&e),
    }
}
