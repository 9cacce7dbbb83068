//! The `superdir` command-line tool.
//!
//! Exit status is 0 on success, 1 for bad input (unreadable or malformed
//! files, invalid flags or parameters) and 2 when `optimize` spends its
//! iteration budget without reaching the target.

pub mod csv;
pub mod docs;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{ColorChoice, Parser, Subcommand, ValueEnum};

use crate::compare::{comparison_table, CompareSettings};
use crate::designs::Design;
use crate::em::{CutPlane, PatternModel};
use crate::error::Error;
use crate::metrics::{evaluate, pattern_gains, quadrature_radiated_power, RadiationReport, SphereGrid};
use crate::network::NetworkMatrices;
use crate::optimizer::optimize;
use crate::subarray::{compose, subarray_report, SubarrayConfig};
use csv::{write_pattern, write_trace, PatternRow};
use docs::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_TARGET_MISSED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "superdir", version, about = "Design and evaluate super-directive dipole arrays")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Plane {
    Azimuth,
    Elevation,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search positions, lengths and currents for the target realized gain.
    Optimize {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the configured seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Result document.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Convergence trace CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Report directivity, gain, realized gain and efficiencies of a design.
    Evaluate {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also integrate the far field over the sphere and compare powers.
        #[arg(long)]
        oracle: bool,
    },
    /// Export a pattern cut as CSV.
    Pattern {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Plane::Azimuth)]
        plane: Plane,
        #[arg(long, default_value_t = 360)]
        samples: usize,
        /// CSV path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Repeat a unit design along the array axis and evaluate the result.
    Subarray {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        groups: usize,
        /// Edge-to-edge gap between groups, in wavelengths.
        #[arg(long, default_value_t = 2.0)]
        gap: f64,
        #[arg(long, default_value_t = 360)]
        samples: usize,
        /// Result document; the azimuth pattern goes next to it as
        /// `<stem>.pattern.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the design against reference arrangements.
    Compare {
        #[arg(long)]
        design: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add rows that rerun the optimiser under each constraint.
        #[arg(long)]
        reoptimize: bool,
        /// Seed for the re-optimised rows.
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Failure that ends a command with [`EXIT_INPUT`].
#[derive(Debug)]
pub struct InputError(pub String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        Self(e.to_string())
    }
}

type CmdResult = Result<i32, InputError>;

/// Parses `args` and runs the command; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::error::ErrorKind;
    use clap::CommandFactory;

    let color = if std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty()) {
        ColorChoice::Never
    } else {
        ColorChoice::Auto
    };
    let matches = Cli::command().color(color).try_get_matches_from(args);
    let cli = match matches.and_then(|m| <Cli as clap::FromArgMatches>::from_arg_matches(&m)) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    }
}

pub fn execute(command: Command) -> CmdResult {
    match command {
        Command::Optimize { config, seed, out, trace } => cmd_optimize(&config, seed, out.as_deref(), trace.as_deref()),
        Command::Evaluate { design, config, out, oracle } => {
            cmd_evaluate(&design, config.as_deref(), out.as_deref(), oracle)
        }
        Command::Pattern { design, config, plane, samples, out } => {
            cmd_pattern(&design, config.as_deref(), plane, samples, out.as_deref())
        }
        Command::Subarray { design, config, groups, gap, samples, out } => {
            cmd_subarray(&design, config.as_deref(), groups, gap, samples, out.as_deref())
        }
        Command::Compare { design, config, out, reoptimize, seed } => {
            let design = design.ok_or_else(|| InputError("compare needs the optimized design (--design PATH)".into()))?;
            cmd_compare(&design, config.as_deref(), out.as_deref(), reoptimize, seed)
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), InputError> {
    fs::write(path, contents).map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, InputError> {
    let text = match path {
        Some(p) => read(p)?,
        None => r#"{"schema": 1}"#.to_string(),
    };
    RunConfig::from_json(&text).map_err(|e| match path {
        Some(p) => InputError(format!("{}: {e}", p.display())),
        None => e.into(),
    })
}

fn load_design(path: &Path, cfg: &RunConfig) -> Result<Design, InputError> {
    let doc = DesignDoc::from_json(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(doc.to_design(cfg.direction()?)?)
}

fn warn_all(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn summary(r: &RadiationReport) -> String {
    let mut s = String::new();
    let rg = r
        .realized_gain_dbi
        .map_or_else(|| "undefined".to_string(), |v| format!("{v:.2} dBi"));
    let _ = writeln!(
        s,
        "direction     θ = {:.1}°, φ = {:.1}°",
        r.direction.theta.to_degrees(),
        r.direction.phi.to_degrees()
    );
    let _ = writeln!(s, "realized gain {rg}");
    let _ = writeln!(s, "gain          {:.2} dBi", r.gain_dbi);
    let _ = writeln!(s, "directivity   {:.2} dBi", r.directivity_dbi);
    let _ = writeln!(
        s,
        "efficiency    radiation {:.2}%, mismatch {:.2}%, total {:.2}%",
        100.0 * r.radiation_efficiency,
        100.0 * r.mismatch_efficiency,
        100.0 * r.total_efficiency
    );
    s
}

fn cmd_optimize(config: &Path, seed: Option<u64>, out: Option<&Path>, trace: Option<&Path>) -> CmdResult {
    let cfg = load_config(Some(config))?;
    let problem = cfg.problem()?;
    let de = cfg.de_config(seed)?;
    let result = optimize(&de, &problem)?;
    let design = Design {
        array: result.array.clone(),
        excitation: result.excitation.clone(),
        direction: problem.direction,
    };
    let doc = OptimizeDoc {
        schema: SCHEMA,
        command: "optimize",
        converged: result.converged(),
        seed: de.seed,
        target_realized_gain_dbi: de.target_realized_gain_dbi,
        best_cost: result.best_cost,
        iterations_run: result.iterations_run,
        design: DesignDoc::from_design(&design),
        report: ReportDoc::from(&result.achieved_report),
        cost_trace: result
            .cost_trace
            .iter()
            .map(|&(iteration, best_cost)| TraceRow { iteration, best_cost })
            .collect(),
    };
    if let Some(p) = out {
        write(p, &to_json(&doc))?;
    }
    if let Some(p) = trace {
        write(p, &write_trace(&result.cost_trace))?;
    }
    print!("{}", summary(&result.achieved_report));
    println!("iterations    {}", result.iterations_run);
    println!("best cost     {:.6e}", result.best_cost);
    warn_all(&result.achieved_report.warnings);
    if result.converged() {
        Ok(EXIT_OK)
    } else {
        eprintln!(
            "target {:.2} dBi not reached in {} iterations",
            de.target_realized_gain_dbi, result.iterations_run
        );
        Ok(EXIT_TARGET_MISSED)
    }
}

fn cmd_evaluate(design: &Path, config: Option<&Path>, out: Option<&Path>, oracle: bool) -> CmdResult {
    let cfg = load_config(config)?;
    let d = load_design(design, &cfg)?;
    let report = evaluate(&d.array, &d.excitation, cfg.z_ref_ohms, d.direction, cfg.pattern_model)?;
    let oracle = if oracle {
        // Radiated power belongs to the true per-element far field, whatever
        // pattern model the gains use.
        let q = quadrature_radiated_power(&d.array, &d.excitation, PatternModel::PerElement, SphereGrid::default())?;
        Some(OracleDoc {
            impedance_p_rad_w: report.p_rad,
            quadrature_p_rad_w: q,
            relative_discrepancy: (report.p_rad - q).abs() / q.abs(),
        })
    } else {
        None
    };
    print!("{}", summary(&report));
    if let Some(o) = &oracle {
        println!(
            "oracle        P_rad impedance {:.6} W, quadrature {:.6} W, discrepancy {:.4}%",
            o.impedance_p_rad_w,
            o.quadrature_p_rad_w,
            100.0 * o.relative_discrepancy
        );
    }
    warn_all(&report.warnings);
    if let Some(p) = out {
        let doc = EvaluateDoc {
            schema: SCHEMA,
            command: "evaluate",
            design: DesignDoc::from_design(&d),
            report: ReportDoc::from(&report),
            oracle,
        };
        write(p, &to_json(&doc))?;
    }
    Ok(EXIT_OK)
}

fn cut_plane(plane: Plane, d: &Design) -> CutPlane {
    match plane {
        Plane::Azimuth => CutPlane::Azimuth,
        Plane::Elevation => CutPlane::Elevation { phi: d.direction.phi },
    }
}

fn pattern_rows(d: &Design, z_ref: f64, plane: CutPlane, samples: usize, cfg: &RunConfig) -> Result<Vec<PatternRow>, InputError> {
    let net = NetworkMatrices::build(&d.array, z_ref)?;
    let cut = pattern_gains(&d.array, &net, &d.excitation, plane, samples, cfg.pattern_model)?;
    Ok(cut.iter().map(PatternRow::from).collect())
}

fn cmd_pattern(design: &Path, config: Option<&Path>, plane: Plane, samples: usize, out: Option<&Path>) -> CmdResult {
    let cfg = load_config(config)?;
    let d = load_design(design, &cfg)?;
    let rows = pattern_rows(&d, cfg.z_ref_ohms, cut_plane(plane, &d), samples, &cfg)?;
    let text = write_pattern(&rows);
    match out {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn pattern_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.pattern.csv"))
}

fn cmd_subarray(
    design: &Path,
    config: Option<&Path>,
    groups: usize,
    gap: f64,
    samples: usize,
    out: Option<&Path>,
) -> CmdResult {
    let cfg = load_config(config)?;
    let d = load_design(design, &cfg)?;
    let lambda = d.array.wavelength();
    let sub = SubarrayConfig::new(d.array.clone(), d.excitation.clone(), groups, gap * lambda)?;
    let report = subarray_report(&sub, cfg.z_ref_ohms, d.direction, cfg.pattern_model)?;
    let unit = evaluate(&d.array, &d.excitation, cfg.z_ref_ohms, d.direction, cfg.pattern_model)?;
    let (array, excitation) = compose(&sub)?;
    let composite = Design {
        array,
        excitation,
        direction: d.direction,
    };
    let increase = match (report.approximate.realized_gain_dbi, unit.realized_gain_dbi) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    };
    println!("groups        {groups}, gap {gap}λ, {} elements", composite.array.len());
    println!("unit          {}", fmt_rg(&unit));
    println!("uncoupled     {}", fmt_rg(&report.approximate));
    println!("full network  {}", fmt_rg(&report.full));
    println!(
        "input power   uncoupled {:.4} W, full {:.4} W ({:.2}% apart)",
        report.approximate.p_in,
        report.full.p_in,
        100.0 * report.power_discrepancy()
    );
    warn_all(&report.warnings);
    if let Some(p) = out {
        let doc = SubarrayDoc {
            schema: SCHEMA,
            command: "subarray",
            groups,
            gap_lambda: gap,
            unit: ReportDoc::from(&unit),
            approximate: ReportDoc::from(&report.approximate),
            full: ReportDoc::from(&report.full),
            power_discrepancy: report.power_discrepancy(),
            realized_gain_increase_db: increase,
            warnings: report.warnings.clone(),
            design: DesignDoc::from_design(&composite),
        };
        let rows = pattern_rows(&composite, cfg.z_ref_ohms, CutPlane::Azimuth, samples, &cfg)?;
        write(p, &to_json(&doc))?;
        write(&pattern_path(p), &write_pattern(&rows))?;
    }
    Ok(EXIT_OK)
}

fn fmt_rg(r: &RadiationReport) -> String {
    match r.realized_gain_dbi {
        Some(v) => format!("realized gain {v:.2} dBi, total efficiency {:.2}%", 100.0 * r.total_efficiency),
        None => format!("realized gain undefined, total efficiency {:.2}%", 100.0 * r.total_efficiency),
    }
}

fn cmd_compare(design: &Path, config: Option<&Path>, out: Option<&Path>, reoptimize: bool, seed: Option<u64>) -> CmdResult {
    let cfg = load_config(config)?;
    let d = load_design(design, &cfg)?;
    let settings = CompareSettings {
        z_ref: cfg.z_ref_ohms,
        pattern: cfg.pattern_model,
    };
    let de = if reoptimize {
        let de = cfg.de_config(seed)?;
        if d.array.len() != cfg.n_elements {
            return Err(InputError(format!(
                "design has {} elements but the configuration optimises {}",
                d.array.len(),
                cfg.n_elements
            )));
        }
        Some(de)
    } else {
        None
    };
    let rows = comparison_table(&d, settings, de.as_ref())?;

    println!(
        "{:<14}{:>12}{:>12}{:>12}{:>12}",
        "config", "RG (dBi)", "eff (%)", "pub RG", "pub eff"
    );
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"));
    for r in &rows {
        println!(
            "{:<14}{:>12}{:>12.2}{:>12}{:>12}",
            r.label,
            opt(r.report.realized_gain_dbi),
            100.0 * r.report.total_efficiency,
            opt(r.published_realized_gain_dbi),
            opt(r.published_total_efficiency_pct)
        );
    }
    for r in &rows {
        println!("{:<14}{}", r.label, r.description);
    }
    if let Some(p) = out {
        let doc = CompareDoc {
            schema: SCHEMA,
            command: "compare",
            rows: rows
                .iter()
                .map(|r| CompareRowDoc {
                    label: r.label.to_string(),
                    description: r.description.clone(),
                    realized_gain_dbi: r.report.realized_gain_dbi,
                    total_efficiency_pct: 100.0 * r.report.total_efficiency,
                    directivity_dbi: r.report.directivity_dbi,
                    gain_dbi: r.report.gain_dbi,
                    published_realized_gain_dbi: r.published_realized_gain_dbi,
                    published_total_efficiency_pct: r.published_total_efficiency_pct,
                    design: DesignDoc::from_design(&Design {
                        array: r.array.clone(),
                        excitation: r.excitation.clone(),
                        direction: r.report.direction,
                    }),
                })
                .collect(),
        };
        write(p, &to_json(&doc))?;
    }
    Ok(EXIT_OK)
}
