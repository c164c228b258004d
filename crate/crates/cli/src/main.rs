use clap::{Args, Parser, Subcommand};
use exotic_landau::classical::{Field, PhasePoint};
use exotic_landau::config::{get_usize, parse_key_values};
use exotic_landau::figures::{self, DensitySurface, FixedAngle, PndSurface, QvcsSurface, Table};
use exotic_landau::verify::{run_verification, VerifyConfig};
use exotic_landau::wigner::{mapped_resolution_check, AngularOrders, HermiteBasis, WignerGrid};
use exotic_landau::{Model, ModelParams, C64};
use serde_json::json;
use std::f64::consts::{FRAC_PI_6, TAU};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const CONFIG_KEYS: [&str; 9] =
    ["mass", "charge", "b_field", "theta", "hbar", "n_max", "radial_order", "angular_order", "seed"];

/// Checks and figure data for the noncommutative exotic Landau model.
///
/// Model defaults: mass = charge = b_field = hbar = 1, theta = 0.3.
/// A config file holds `key = value` lines (keys: mass, charge, b_field,
/// theta, hbar, n_max, radial_order, angular_order, seed); flags win.
#[derive(Parser, Debug)]
#[command(name = "exotic-landau", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Plain-text `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for CSV and JSON files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Fock truncation (default 64).
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Radial quadrature order (default 64).
    #[arg(long, global = true)]
    radial_order: Option<usize>,
    /// Angular quadrature order (default 128).
    #[arg(long, global = true)]
    angular_order: Option<usize>,
    /// Seed for randomized sampling (default 7).
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every check and print a JSON report.
    Verify,
    /// Density surfaces over arg z in [0, pi] and t in [0, 5].
    Density {
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 5, 7])]
        m: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        abs_z: f64,
        #[arg(long, default_value_t = 1.0)]
        abs_z0: f64,
        #[arg(long, default_value_t = 1.0)]
        abs_z_prime: f64,
    },
    /// Number distribution over |z| and |z'| for (m, n) = (2,2), (2,10), (10,2).
    Pnd,
    /// F(r, v, u) surface; r defaults to sqrt(2).
    Uncertainty {
        #[arg(long, default_value_t = std::f64::consts::SQRT_2)]
        r: f64,
    },
    /// QVCS density surfaces with one angle fixed at pi/6; r, r0, rho default to 1.
    QvcsDensity {
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 5, 7])]
        m: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 1.0)]
        r0: f64,
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
        #[arg(long, default_value_t = 2.5e-3)]
        omega_star: f64,
    },
    /// Slice-composition convergence table and |K| grid.
    Propagator {
        #[arg(long, default_value_t = 1.0)]
        time: f64,
    },
    /// RK4 trajectory with conserved charges.
    Classical {
        /// Number of cyclotron periods.
        #[arg(long, default_value_t = 10.0)]
        periods: f64,
        /// Steps per period.
        #[arg(long, default_value_t = 1000)]
        steps_per_period: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.0])]
        field: Vec<f64>,
    },
    /// Wigner unitarity and mapped resolution reports as JSON.
    Wigner {
        #[arg(long, default_value_t = 12)]
        k_max: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check,
}

impl From<exotic_landau::Error> for Failure {
    fn from(e: exotic_landau::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct RunConfig {
    params: ModelParams,
    n_max: usize,
    radial_order: usize,
    angular_order: usize,
    seed: u64,
    out: PathBuf,
}

fn load_config(g: &GlobalArgs) -> Result<RunConfig, Failure> {
    let text = match &g.config {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => String::new(),
    };
    let map = parse_key_values(&text)?;
    if let Some(k) = map.keys().find(|k| !CONFIG_KEYS.contains(&k.as_str())) {
        return Err(Failure::Usage(format!("unknown config key: {k}")));
    }
    let params = ModelParams::default().with_overrides(&text)?;
    let seed = match map.get("seed") {
        Some(v) => v.parse::<u64>().map_err(|_| Failure::Usage(format!("seed: not an integer: {v}")))?,
        None => 7,
    };
    Ok(RunConfig {
        params,
        n_max: g.nmax.or(get_usize(&map, "n_max")?).unwrap_or(64),
        radial_order: g.radial_order.or(get_usize(&map, "radial_order")?).unwrap_or(64),
        angular_order: g.angular_order.or(get_usize(&map, "angular_order")?).unwrap_or(128),
        seed: g.seed.unwrap_or(seed),
        out: g.out.clone(),
    })
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    let target = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    fs::write(&tmp, contents)
        .and_then(|_| fs::rename(&tmp, &target))
        .map_err(|e| Failure::Usage(format!("{}: {e}", target.display())))?;
    Ok(target)
}

fn emit(cfg: &RunConfig, name: &str, table: &Table) -> Result<(), Failure> {
    let path = write_atomic(&cfg.out, name, &table.to_csv())?;
    println!("{}", path.display());
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = load_config(&cli.global)?;
    let model = Model::new(cfg.params)?;
    match cli.command {
        Command::Verify => {
            let vc = VerifyConfig {
                params: cfg.params,
                n_max: cfg.n_max,
                radial_order: cfg.radial_order,
                angular_order: cfg.angular_order,
                seed: cfg.seed,
                ..VerifyConfig::default()
            };
            let report = run_verification(&vc)?;
            let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Usage(e.to_string()))?;
            write_atomic(&cfg.out, "verify.json", &text)?;
            println!("{text}");
            if !report.all_passed() {
                return Err(Failure::Check);
            }
        }
        Command::Density { m, abs_z, abs_z0, abs_z_prime } => {
            for m in m {
                let s = DensitySurface { abs_z, abs_z0, abs_z_prime, m, ..Default::default() };
                emit(&cfg, &format!("density1_m{m}.csv"), &figures::density1(&model, &s)?)?;
            }
        }
        Command::Pnd => {
            for (m, n) in [(2, 2), (2, 10), (10, 2)] {
                emit(&cfg, &format!("pnd2_m{m}_n{n}.csv"), &figures::pnd2(&PndSurface::new(m, n))?)?;
            }
        }
        Command::Uncertainty { r } => {
            emit(&cfg, "fsurface3.csv", &figures::fsurface3(r, 72, 37)?)?;
        }
        Command::QvcsDensity { m, r, r0, rho, omega_star } => {
            if !(omega_star > 0.0) {
                return Err(Failure::Usage(format!("omega_star must be positive, got {omega_star}")));
            }
            for m in m {
                for (tag, fixed) in [("theta", FixedAngle::Theta(FRAC_PI_6)), ("theta0", FixedAngle::Theta0(FRAC_PI_6))] {
                    let s = QvcsSurface { r, r0, rho, omega_star, t_max: TAU / omega_star, ..QvcsSurface::new(m, fixed) };
                    emit(&cfg, &format!("qvcsdensity4_m{m}_fixed_{tag}.csv"), &figures::qvcsdensity4(&model, &s)?)?;
                }
            }
        }
        Command::Propagator { time } => {
            let (zf, z0) = (C64::new(0.4, -0.3), C64::new(-0.2, 0.5));
            let slices = [1, 2, 4, 8, 16, 32, 64];
            emit(&cfg, "propagator_convergence.csv", &figures::propagator_convergence(&model, zf, z0, time, &slices)?)?;
            emit(&cfg, "propagator_grid.csv", &figures::propagator_grid(&model, z0, time, 8, 3.0, 41)?)?;
        }
        Command::Classical { periods, steps_per_period, field } => {
            if field.len() != 2 {
                return Err(Failure::Usage("field takes two components".into()));
            }
            if steps_per_period == 0 || !(periods > 0.0) {
                return Err(Failure::Usage("periods and steps per period must be positive".into()));
            }
            let dt = TAU / model.omega_star() / steps_per_period as f64;
            let steps = (periods * steps_per_period as f64).round() as usize;
            let init = PhasePoint { x: [0.0, 0.0], p: [1.0, 0.0], t: 0.0 };
            let f = Field { e: [field[0], field[1]] };
            emit(&cfg, "classical.csv", &figures::classical(&model, f, init, dt, steps)?)?;
        }
        Command::Wigner { k_max } => {
            let mut sweep = Vec::new();
            for k in (4..=k_max.max(4)).step_by(4) {
                let basis = HermiteBasis::new(k, 4 * k + 52)?;
                let grid = WignerGrid::new(&basis, 2 * k + 26)?;
                sweep.push(json!({ "k_max": k, "unitarity_defect": grid.unitarity_defect() }));
            }
            let resolution = mapped_resolution_check(4, cfg.radial_order, AngularOrders::default())?;
            let report = json!({ "unitarity": sweep, "mapped_resolution_deviation": resolution });
            let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Usage(e.to_string()))?;
            write_atomic(&cfg.out, "wigner.json", &text)?;
            println!("{text}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
