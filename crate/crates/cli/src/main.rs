//! `g3pencil`: build, check and export surface pencils from JSON configs.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::LevelFilter;

use g3pencil::curve::CurveClass;
use g3pencil::io::{self, ConfigError, Figure, MeshError, PencilConfig};
use g3pencil::pencil::{Branch, PencilError};
use g3pencil::verify::{self, Mode, VerifyError};

#[derive(Parser)]
#[command(name = "g3pencil", version, about = "Surface pencils through D-type curves in Galilean 3-space")]
struct Cli {
    /// More log output (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Analytic,
    Fd,
    FdRichardson,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Analytic => Mode::Analytic,
            ModeArg::Fd => Mode::FiniteDifference,
            ModeArg::FdRichardson => Mode::Richardson,
        }
    }
}

#[derive(clap::Args)]
struct GridArgs {
    /// Grid size as `<ns>x<nv>`; defaults to the config's grid.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<(usize, usize)>,
    /// Worker threads for grid sampling.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Frenet frame, curvature, torsion and unit Darboux vector.
    Frenet {
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: f64,
    },
    /// Classify the curve as general helix, Salkowski or anti-Salkowski.
    Classify {
        config: PathBuf,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Sample the surface and write an OBJ (or CSV, by extension).
    Build {
        config: PathBuf,
        #[arg(short, value_name = "PATH")]
        o: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Override the synthesis sign.
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Option<Branch>,
    },
    /// Check the D-type invariant; exit 0 iff it holds at the tolerance.
    Verify {
        config: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Option<Branch>,
    },
    /// Write the data behind a figure panel (fig1a..fig1h) into a directory.
    Reproduce {
        figure: Figure,
        #[arg(short, value_name = "DIR")]
        o: PathBuf,
        /// Use the original closed-form X, Y, Z verbatim instead of synthesizing them.
        #[arg(long)]
        as_printed: bool,
        #[command(flatten)]
        grid: GridArgs,
    },
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once('x').ok_or("expected <ns>x<nv>, e.g. 200x50")?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    let (ns, nv) = (n(a)?, n(b)?);
    if ns < 2 || nv < 2 {
        return Err("grid counts must be at least 2".into());
    }
    Ok((ns, nv))
}

fn parse_sign(s: &str) -> Result<Branch, String> {
    match s {
        "+" => Ok(Branch::Plus),
        "-" => Ok(Branch::Minus),
        _ => Err(format!("expected + or -, got `{s}`")),
    }
}

/// An error with the category printed as `error[category]`.
struct Failure {
    category: &'static str,
    message: String,
}

impl Failure {
    fn new(category: &'static str, message: impl Display) -> Self {
        Failure {
            category,
            message: message.to_string(),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::new(e.category(), e)
    }
}

impl From<PencilError> for Failure {
    fn from(e: PencilError) -> Self {
        Failure::new(io::pencil_category(&e), e)
    }
}

impl From<MeshError> for Failure {
    fn from(e: MeshError) -> Self {
        match e {
            MeshError::Pencil(p) => p.into(),
            other => Failure::new("grid", other),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Pencil(p) => p.into(),
            other => Failure::new("verify", other),
        }
    }
}

fn io_failure(path: &Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
    move |e| Failure::new("io", format!("{}: {e}", path.display()))
}

fn load(path: &Path, sign: Option<Branch>) -> Result<PencilConfig, Failure> {
    let mut config = io::load_config(path)?;
    if let Some(sign) = sign {
        let block = config.marching_scale.synthesis.as_mut().ok_or_else(|| {
            Failure::new("schema", "--sign needs a config with a synthesis block")
        })?;
        block.sign = sign;
        config.validate()?;
    }
    Ok(config)
}

fn frenet(config: &Path, at: f64) -> Result<ExitCode, Failure> {
    let curve = load(config, None)?.curve()?;
    let fr = curve.frenet(at).map_err(PencilError::from)?;
    let dx = fr.darboux();
    println!("s     = {}", fr.s);
    println!("t     = {}", fr.t);
    println!("n     = {}", fr.n);
    println!("b     = {}", fr.b);
    println!("kappa = {}", fr.kappa);
    println!("tau   = {}", fr.tau);
    println!("E0    = {}", dx.e0);
    Ok(ExitCode::SUCCESS)
}

fn classify(config: &Path, samples: usize) -> Result<ExitCode, Failure> {
    let config = load(config, None)?;
    let curve = config.curve()?;
    let d = config.domain;
    let class = curve
        .classify((d.s_min, d.s_max), samples)
        .map_err(PencilError::from)?;
    let text = match class {
        CurveClass::GeneralHelix { mu } => format!("general helix (|tau|/kappa = {mu})"),
        CurveClass::Salkowski { nu } => format!("Salkowski (kappa = {nu})"),
        CurveClass::AntiSalkowski { xi } => format!("anti-Salkowski (tau = {xi})"),
        CurveClass::Generic => "none of helix, Salkowski, anti-Salkowski".to_string(),
    };
    println!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn write_mesh(mesh: &io::Mesh, out: &Path) -> Result<(), Failure> {
    let csv = out.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if csv {
        io::export_csv(mesh, out)
    } else {
        io::export_obj(mesh, out)
    }
    .map_err(io_failure(out))
}

fn build(config: &Path, out: &Path, grid: &GridArgs, sign: Option<Branch>) -> Result<ExitCode, Failure> {
    let config = load(config, sign)?;
    let pencil = config.pencil()?;
    let (ns, nv) = grid.grid.unwrap_or((config.grid.ns, config.grid.nv));
    let mesh = io::sample_grid(&pencil, ns, nv, grid.workers)?;
    write_mesh(&mesh, out)?;
    eprintln!("wrote {} ({}x{} vertices)", out.display(), ns, nv);
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(
    config: &Path,
    tol: Option<f64>,
    mode: Option<ModeArg>,
    samples: Option<usize>,
    sign: Option<Branch>,
) -> Result<ExitCode, Failure> {
    let config = load(config, sign)?;
    let pencil = config.pencil()?;
    let mode = mode.map(Mode::from).unwrap_or(config.verify.mode);
    let tol = tol.or(config.verify.tol);
    let samples = samples.unwrap_or(config.verify.samples);
    let report = verify::dtype_report(&pencil.curve, &pencil.scale, &pencil.domain, samples, mode, tol)?;
    println!("{}", report.to_json());
    eprintln!(
        "mean lambda = {}, max deviation = {:e}, classification = {:?}",
        report.mean_lambda, report.max_abs_deviation, report.classification
    );
    Ok(if report.is_dtype() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn reproduce(figure: Figure, dir: &Path, as_printed: bool, grid: &GridArgs) -> Result<ExitCode, Failure> {
    let config = figure.config(as_printed);
    fs::create_dir_all(dir).map_err(io_failure(dir))?;
    let json = dir.join(format!("{figure}.json"));
    io::write_config(&config, &json)?;
    let (ns, nv) = grid.grid.unwrap_or((config.grid.ns, config.grid.nv));
    let pencil = config.pencil()?;
    if as_printed {
        eprintln!("notice: {figure} uses the original closed-form factors verbatim; results differ from the default construction");
    }
    if figure.is_curve() {
        let d = config.domain;
        let mesh = io::curve_mesh(&pencil.curve, d.s_min, d.s_max, ns)?;
        write_mesh(&mesh, &dir.join(format!("{figure}.csv")))?;
    } else {
        if as_printed {
            let r = verify::dtype_report(&pencil.curve, &pencil.scale, &pencil.domain, 64, Mode::Analytic, None)?;
            eprintln!(
                "notice: {figure} as printed: mean lambda = {:.6}, max deviation = {:.3e} ({:?})",
                r.mean_lambda, r.max_abs_deviation, r.classification
            );
        }
        let mesh = io::sample_grid(&pencil, ns, nv, grid.workers)?;
        write_mesh(&mesh, &dir.join(format!("{figure}.obj")))?;
        write_mesh(&mesh, &dir.join(format!("{figure}.csv")))?;
    }
    eprintln!("wrote {figure} data to {}", dir.display());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => LevelFilter::Warn,
        1 => LevelFilter::Info,
        _ => LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();

    let result = match &cli.command {
        Command::Frenet { config, at } => frenet(config, *at),
        Command::Classify { config, samples } => classify(config, *samples),
        Command::Build { config, o, grid, sign } => build(config, o, grid, *sign),
        Command::Verify { config, tol, mode, samples, sign } => {
            verify_cmd(config, *tol, *mode, *samples, *sign)
        }
        Command::Reproduce { figure, o, as_printed, grid } => reproduce(*figure, o, *as_printed, grid),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error[{}]: {}", f.category, f.message);
            ExitCode::from(2)
        }
    }
}
