//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage error, 3 I/O
//! error, 4 unknown material.

pub mod materials;

use std::fs::File;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::dimer::{kelvin_to_tesla, tesla_to_kelvin, DimerParams, FieldSpec, MU_B_OVER_K_B};
use crate::entanglement::{critical_temperature, measure, pt_spectrum};
use crate::numfmt::{format_sig, SIG_DIGITS};
use crate::oracle::{run_all_checks, VerifyGrid};
use crate::sweep::{
    evaluate_grid, figure_preset_with, write_csv, FigureId, GridSpec, Range1D, SweepError, SweepRow,
};
use crate::thermal::{density_closed_form, ThermalPoint};
use materials::RegistryError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// A verification run completed and at least one check failed.
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("unknown material {0:?}; `dimerent materials list` shows the known names")]
    UnknownMaterial(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::UnknownMaterial(_) => 4,
        }
    }
}

impl From<RegistryError> for CliError {
    fn from(err: RegistryError) -> Self {
        match err {
            RegistryError::Unreadable { .. } => CliError::Io(err.to_string()),
            RegistryError::Malformed { .. } => CliError::Usage(err.to_string()),
        }
    }
}

/// Parse the process arguments, run the chosen command, and return the
/// process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dimerent",
    version,
    about = "Thermal entanglement of spin-1/2 Heisenberg dimers in a magnetic field"
)]
struct Cli {
    /// Worker threads for grid commands (default: DIMERENT_THREADS, else
    /// one per core).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Entanglement of one (J, B, T) point.
    Measure(MeasureArgs),
    /// Decoherence temperature -J / ln 3 of an antiferromagnetic dimer.
    Tc(CouplingArgs),
    /// Convert a field between Tesla and Kelvin units.
    Convert(ConvertArgs),
    /// Evaluate a (B, T) grid and write it as CSV.
    Sweep(SweepArgs),
    /// Write the dataset files of a named preset.
    Figure(FigureArgs),
    /// Cross-check the closed forms against numeric oracles.
    Verify(VerifyArgs),
    /// Built-in and user-registered material parameters.
    Materials(MaterialsArgs),
}

/// Where J comes from: a literal value or a registered material.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct CouplingSource {
    /// Exchange coupling J in Kelvin (negative is antiferromagnetic).
    #[arg(long, value_name = "KELVIN", allow_hyphen_values = true)]
    j: Option<f64>,
    /// Named material supplying J and the g-factor.
    #[arg(long, value_name = "NAME")]
    material: Option<String>,
}

#[derive(Debug, Args)]
struct CouplingArgs {
    #[command(flatten)]
    source: CouplingSource,
    /// Lande g-factor (only with --j; materials carry their own).
    #[arg(long, value_name = "G", conflicts_with = "material")]
    g: Option<f64>,
}

#[derive(Debug, Args)]
struct MeasureArgs {
    #[command(flatten)]
    coupling: CouplingArgs,
    /// Field in Kelvin units (g mu_B B / k_B).
    #[arg(
        long,
        value_name = "KELVIN",
        allow_hyphen_values = true,
        default_value_t = 0.0
    )]
    b: f64,
    /// Field in Tesla.
    #[arg(
        long,
        value_name = "TESLA",
        allow_hyphen_values = true,
        conflicts_with = "b"
    )]
    b_tesla: Option<f64>,
    /// Temperature in Kelvin.
    #[arg(long, value_name = "KELVIN", allow_hyphen_values = true)]
    temp: f64,
}

/// Which way the conversion runs.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Direction {
    /// Field in Tesla, converted into Kelvin units.
    #[arg(long, value_name = "TESLA", allow_hyphen_values = true)]
    tesla: Option<f64>,
    /// Field in Kelvin units, converted into Tesla.
    #[arg(long, value_name = "KELVIN", allow_hyphen_values = true)]
    kelvin: Option<f64>,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[command(flatten)]
    direction: Direction,
    /// Lande g-factor.
    #[arg(long, value_name = "G", default_value_t = 2.0)]
    g: f64,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Exchange coupling J in Kelvin.
    #[arg(long, value_name = "KELVIN", allow_hyphen_values = true)]
    j: f64,
    /// Field axis start:stop:count, inclusive, in Kelvin units.
    #[arg(
        long,
        value_name = "START:STOP:COUNT",
        value_parser = parse_range,
        allow_hyphen_values = true
    )]
    b_range: Range1D,
    /// Temperature axis start:stop:count, inclusive, in Kelvin.
    #[arg(
        long,
        value_name = "START:STOP:COUNT",
        value_parser = parse_range,
        allow_hyphen_values = true
    )]
    t_range: Range1D,
    /// CSV output path.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    /// Also write the rows as a JSON array.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FigureArgs {
    /// Preset name: fig2, fig3, fig4, fig5, or fig6.
    #[arg(long, value_name = "NAME", value_parser = parse_figure_id)]
    preset: FigureId,
    /// Directory the dataset files are written into.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Replacement field series in Kelvin units (fig2 and fig4 only).
    #[arg(
        long,
        value_name = "B,B,...",
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    b_series: Option<Vec<f64>>,
    /// Replacement temperature series in Kelvin (fig5 only).
    #[arg(
        long,
        value_name = "T,T,...",
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    t_series: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum GridChoice {
    /// 10 x 10 x 10 points.
    Coarse,
    /// 30 x 30 x 30 points.
    Fine,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Verification grid density.
    #[arg(long, value_enum, default_value = "coarse")]
    grid: GridChoice,
    /// Also write the check reports as a JSON array.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MaterialsArgs {
    #[command(subcommand)]
    action: MaterialsAction,
}

#[derive(Debug, Subcommand)]
enum MaterialsAction {
    /// All known materials, built-ins first.
    List {
        /// User registry (JSON array) whose entries shadow built-ins by name.
        #[arg(long, value_name = "PATH")]
        file: Option<PathBuf>,
    },
    /// One material in full.
    Show {
        /// Material name, as printed by `materials list`.
        name: String,
        /// User registry (JSON array) whose entries shadow built-ins by name.
        #[arg(long, value_name = "PATH")]
        file: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> Result<Range1D, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(format!("expected START:STOP:COUNT, got {s:?}"));
    };
    let start: f64 = start
        .parse()
        .map_err(|_| format!("bad range start {start:?}"))?;
    let stop: f64 = stop
        .parse()
        .map_err(|_| format!("bad range stop {stop:?}"))?;
    let count: usize = count
        .parse()
        .map_err(|_| format!("bad range count {count:?}"))?;
    Range1D::new(start, stop, count).map_err(|e| e.to_string())
}

fn parse_figure_id(s: &str) -> Result<FigureId, String> {
    s.parse().map_err(|e: SweepError| e.to_string())
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let env = std::env::var("DIMERENT_THREADS").ok();
    let threads = resolve_threads(cli.threads, env.as_deref())?;
    match &cli.command {
        Command::Measure(args) => cmd_measure(args),
        Command::Tc(args) => cmd_tc(args),
        Command::Convert(args) => cmd_convert(args),
        Command::Sweep(args) => cmd_sweep(args, threads),
        Command::Figure(args) => cmd_figure(args, threads),
        Command::Verify(args) => cmd_verify(args, threads),
        Command::Materials(args) => cmd_materials(args),
    }
}

/// The explicit flag wins; otherwise the environment variable; otherwise
/// rayon's own default (one worker per core).
fn resolve_threads(flag: Option<usize>, env: Option<&str>) -> Result<Option<usize>, CliError> {
    if let Some(n) = flag {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".to_string()));
        }
        return Ok(Some(n));
    }
    let Some(raw) = env else {
        return Ok(None);
    };
    let n: usize = raw.trim().parse().map_err(|_| {
        CliError::Usage(format!(
            "DIMERENT_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    if n == 0 {
        return Err(CliError::Usage(
            "DIMERENT_THREADS must be at least 1".to_string(),
        ));
    }
    Ok(Some(n))
}

/// Run `f` on a dedicated pool of `threads` workers, or inline on the
/// global pool when no count was requested.
fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot build a {n}-thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn resolve_params(args: &CouplingArgs) -> Result<DimerParams, CliError> {
    if let Some(name) = &args.source.material {
        let registry = materials::load_registry(None)?;
        let rec = materials::find(&registry, name)
            .ok_or_else(|| CliError::UnknownMaterial(name.clone()))?;
        return DimerParams::with_g_factor(rec.j_kelvin, rec.g_factor)
            .map_err(|e| CliError::Usage(format!("material {name:?}: {e}")));
    }
    let j = args.source.j.expect("clap enforces one coupling source");
    DimerParams::with_g_factor(j, args.g.unwrap_or(2.0))
        .map_err(|e| CliError::Usage(format!("--j/--g: {e}")))
}

fn cmd_measure(args: &MeasureArgs) -> Result<(), CliError> {
    let params = resolve_params(&args.coupling)?;
    let field = match args.b_tesla {
        Some(tesla) => FieldSpec::from_tesla(tesla, &params)
            .map_err(|e| CliError::Usage(format!("--b-tesla: {e}")))?,
        None => FieldSpec::new(args.b).map_err(|e| CliError::Usage(format!("--b: {e}")))?,
    };
    let point =
        ThermalPoint::new(args.temp).map_err(|e| CliError::Usage(format!("--temp: {e}")))?;
    let result = measure(&params, &field, &point);
    let lambda4 = pt_spectrum(&density_closed_form(&params, &field, &point)).lambda4;
    println!("E = {}", format_sig(result.value, SIG_DIGITS));
    println!("regime = {}", result.regime);
    match result.t_c_kelvin {
        Some(tc) => println!("T_c = {} K", format_sig(tc, SIG_DIGITS)),
        None => println!("T_c = none (ferromagnetic or zero coupling)"),
    }
    println!("lambda4 = {}", format_sig(lambda4, SIG_DIGITS));
    println!(
        "entangled = {}",
        if result.entangled { "yes" } else { "no" }
    );
    Ok(())
}

fn cmd_tc(args: &CouplingArgs) -> Result<(), CliError> {
    let params = resolve_params(args)?;
    match critical_temperature(&params) {
        Some(tc) => println!("{}", format_sig(tc, SIG_DIGITS)),
        None => println!("none (ferromagnetic or zero coupling)"),
    }
    Ok(())
}

fn cmd_convert(args: &ConvertArgs) -> Result<(), CliError> {
    if !(args.g.is_finite() && args.g > 0.0) {
        return Err(CliError::Usage(format!(
            "--g must be a positive finite number, got {}",
            args.g
        )));
    }
    match (args.direction.tesla, args.direction.kelvin) {
        (Some(tesla), None) => {
            if !tesla.is_finite() {
                return Err(CliError::Usage("--tesla must be finite".to_string()));
            }
            println!(
                "{} K",
                format_sig(tesla_to_kelvin(tesla, args.g), SIG_DIGITS)
            );
        }
        (None, Some(kelvin)) => {
            if !kelvin.is_finite() {
                return Err(CliError::Usage("--kelvin must be finite".to_string()));
            }
            println!(
                "{} T",
                format_sig(kelvin_to_tesla(kelvin, args.g), SIG_DIGITS)
            );
        }
        _ => unreachable!("clap enforces exactly one direction"),
    }
    println!(
        "g = {}, mu_B/k_B = {} K/T",
        format_sig(args.g, SIG_DIGITS),
        format_sig(MU_B_OVER_K_B, SIG_DIGITS)
    );
    Ok(())
}

fn cmd_sweep(args: &SweepArgs, threads: Option<usize>) -> Result<(), CliError> {
    let spec = GridSpec::new(vec![args.j], args.b_range, args.t_range)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let rows = with_pool(threads, || evaluate_grid(&spec))?;
    write_csv_file(&args.out, &rows)?;
    if let Some(path) = &args.json {
        write_json_file(path, &rows)?;
    }
    println!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(())
}

fn cmd_figure(args: &FigureArgs, threads: Option<usize>) -> Result<(), CliError> {
    let preset = figure_preset_with(
        args.preset,
        args.b_series.as_deref(),
        args.t_series.as_deref(),
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;
    std::fs::create_dir_all(&args.out)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", args.out.display())))?;
    let datasets: Vec<(String, Vec<SweepRow>)> = with_pool(threads, || {
        preset
            .series
            .iter()
            .map(|s| (s.file_name.clone(), evaluate_grid(&s.spec)))
            .collect()
    })?;
    for (file_name, rows) in &datasets {
        let path = args.out.join(file_name);
        write_csv_file(&path, rows)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, threads: Option<usize>) -> Result<(), CliError> {
    let (grid, label) = match args.grid {
        GridChoice::Coarse => (VerifyGrid::coarse(), "coarse"),
        GridChoice::Fine => (VerifyGrid::fine(), "fine"),
    };
    let reports = with_pool(threads, || run_all_checks(&grid))?
        .map_err(|e| CliError::Failed(format!("oracle breakdown: {e}")))?;
    println!(
        "{:<30}  {:>7}  {:>13}  result",
        "check", "points", "max deviation"
    );
    for report in &reports {
        println!(
            "{:<30}  {:>7}  {:>13}  {}",
            report.check_name,
            report.grid_size,
            format_sig(report.max_abs_deviation, 3),
            if report.pass { "PASS" } else { "FAIL" }
        );
    }
    if let Some(path) = &args.json {
        write_json_file(path, &reports)?;
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    println!(
        "{} grid, {} points per check; {} of {} checks passed",
        label,
        grid.point_count(),
        reports.len() - failed,
        reports.len()
    );
    if failed > 0 {
        return Err(CliError::Failed(format!(
            "{failed} of {} verification checks exceeded tolerance",
            reports.len()
        )));
    }
    Ok(())
}

fn cmd_materials(args: &MaterialsArgs) -> Result<(), CliError> {
    match &args.action {
        MaterialsAction::List { file } => {
            let registry = materials::load_registry(file.as_deref())?;
            for rec in &registry {
                println!(
                    "{:<24}  j_kelvin = {:<14}  g_factor = {}",
                    rec.name,
                    format_sig(rec.j_kelvin, SIG_DIGITS),
                    format_sig(rec.g_factor, SIG_DIGITS)
                );
            }
        }
        MaterialsAction::Show { name, file } => {
            let registry = materials::load_registry(file.as_deref())?;
            let rec = materials::find(&registry, name)
                .ok_or_else(|| CliError::UnknownMaterial(name.clone()))?;
            println!("name = {}", rec.name);
            println!("j_kelvin = {}", format_sig(rec.j_kelvin, SIG_DIGITS));
            println!("g_factor = {}", format_sig(rec.g_factor, SIG_DIGITS));
            let params = DimerParams::with_g_factor(rec.j_kelvin, rec.g_factor)
                .map_err(|e| CliError::Usage(format!("material {:?}: {e}", rec.name)))?;
            match critical_temperature(&params) {
                Some(tc) => println!("t_c_kelvin = {}", format_sig(tc, SIG_DIGITS)),
                None => println!("t_c_kelvin = none"),
            }
            if let Some(note) = &rec.note {
                println!("note = {note}");
            }
        }
    }
    Ok(())
}

fn write_csv_file(path: &Path, rows: &[SweepRow]) -> Result<(), CliError> {
    let mut file = File::create(path)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
    write_csv(rows, &mut file)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn write_json_file<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut file = File::create(path)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
    serde_json::to_writer_pretty(&mut file, value)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    file.write_all(b"\n")
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
