//! Side-by-side evaluation of an optimised design against simpler
//! arrangements of the same number of dipoles.

use crate::designs::{steered_currents, uniform_line, Design};
use crate::em::{DipoleArray, Direction, Excitation, PatternModel};
use crate::error::Result;
use crate::metrics::{evaluate, max_directivity_excitation, RadiationReport};
use crate::network::NetworkMatrices;
use crate::optimizer::{optimize, DeConfig, DesignProblem};

/// Port impedance and pattern model shared by every row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareSettings {
    pub z_ref: f64,
    pub pattern: PatternModel,
}

/// One configuration of the comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub label: &'static str,
    pub description: String,
    pub array: DipoleArray,
    pub excitation: Excitation,
    pub report: RadiationReport,
    /// Published realized gain for this configuration, when one exists.
    pub published_realized_gain_dbi: Option<f64>,
    /// Published total efficiency in percent, when one exists.
    pub published_total_efficiency_pct: Option<f64>,
}

fn row(
    label: &'static str,
    description: String,
    array: DipoleArray,
    excitation: Excitation,
    dir: Direction,
    settings: CompareSettings,
    published: (Option<f64>, Option<f64>),
) -> Result<ComparisonRow> {
    let report = evaluate(&array, &excitation, settings.z_ref, dir, settings.pattern)?;
    Ok(ComparisonRow {
        label,
        description,
        array,
        excitation,
        report,
        published_realized_gain_dbi: published.0,
        published_total_efficiency_pct: published.1,
    })
}

fn centre(array: &DipoleArray) -> f64 {
    let x = array.positions();
    0.5 * (x[0] + x[x.len() - 1])
}

/// Builds the comparison rows for `design`:
///
/// * `#1`: the design with every length set to λ/2.
/// * `#2`: the design's lengths and currents on a uniform λ/2 grid.
/// * `ULA`: λ/2 dipoles at λ/2 spacing, co-phased, evaluated broadside.
/// * `ULA end-fire`: the same line steered toward the design direction.
/// * `Th. Exc.`: λ/2 dipoles on a uniform 0.35λ grid, fed with the
///   maximum-directivity currents.
/// * `Optimized`: the design itself.
///
/// With `reoptimize`, two more rows rerun the optimiser with the `#1` and
/// `#2` constraints instead of reusing the design's values.
pub fn comparison_table(
    design: &Design,
    settings: CompareSettings,
    reoptimize: Option<&DeConfig>,
) -> Result<Vec<ComparisonRow>> {
    let a = &design.array;
    let n = a.len();
    let lambda = a.wavelength();
    let dir = design.direction;
    let mut rows = Vec::new();

    let half = a.with_lengths(vec![0.5 * lambda; n])?;
    rows.push(row(
        "#1",
        "design positions and currents, all lengths 0.5λ".into(),
        half,
        design.excitation.clone(),
        dir,
        settings,
        (Some(7.89), Some(57.83)),
    )?);

    let grid = uniform_line(n, 0.5 * lambda, 0.5 * lambda, centre(a), a)?.with_lengths(a.lengths().to_vec())?;
    rows.push(row(
        "#2",
        "design lengths and currents, uniform 0.5λ spacing".into(),
        grid,
        design.excitation.clone(),
        dir,
        settings,
        (Some(6.37), Some(84.42)),
    )?);

    let ula = uniform_line(n, 0.5 * lambda, 0.5 * lambda, 0.0, a)?;
    rows.push(row(
        "ULA",
        "0.5λ dipoles at 0.5λ spacing, co-phased, broadside".into(),
        ula.clone(),
        Excitation::uniform(n),
        Direction::broadside(),
        settings,
        (Some(8.95), Some(94.95)),
    )?);
    let steered = steered_currents(&ula, dir);
    rows.push(row(
        "ULA end-fire",
        "0.5λ dipoles at 0.5λ spacing, progressive phase toward the design direction".into(),
        ula,
        steered,
        dir,
        settings,
        (Some(5.82), None),
    )?);

    let uniform = uniform_line(n, 0.35 * lambda, 0.5 * lambda, centre(a), a)?;
    let net = NetworkMatrices::build(&uniform, settings.z_ref)?;
    let best = max_directivity_excitation(&net, dir, &uniform, settings.pattern)?;
    rows.push(row(
        "Th. Exc.",
        "0.5λ dipoles at uniform 0.35λ spacing, maximum-directivity currents".into(),
        uniform,
        best,
        dir,
        settings,
        (Some(7.60), Some(54.00)),
    )?);

    rows.push(row(
        "Optimized",
        "the design as given".into(),
        a.clone(),
        design.excitation.clone(),
        dir,
        settings,
        (Some(9.16), Some(80.11)),
    )?);

    if let Some(cfg) = reoptimize {
        let mut problem = DesignProblem::new(n, lambda);
        problem.wire_radius = a.wire_radius();
        problem.conductivity = a.conductivity();
        problem.z_ref = settings.z_ref;
        problem.direction = dir;
        problem.pattern = settings.pattern;

        // Fixed genes get a sliver of range so the bounds stay well formed.
        let pin = |v: f64| (v - 1e-9 * lambda, v);
        let mut bounds = problem.default_bounds();
        for b in &mut bounds[n..2 * n] {
            *b = pin(0.5 * lambda);
        }
        let r1 = optimize(&DeConfig { bounds, ..cfg.clone() }, &problem)?;
        rows.push(ComparisonRow {
            label: "#1 re-opt",
            description: "positions and currents re-optimised with lengths held at 0.5λ".into(),
            array: r1.array,
            excitation: r1.excitation,
            report: r1.achieved_report,
            published_realized_gain_dbi: Some(7.89),
            published_total_efficiency_pct: Some(57.83),
        });

        let mut bounds = problem.default_bounds();
        for (i, b) in bounds[..n].iter_mut().enumerate() {
            *b = pin((i as f64 - 0.5 * (n as f64 - 1.0)) * 0.5 * lambda);
        }
        let r2 = optimize(&DeConfig { bounds, ..cfg.clone() }, &problem)?;
        rows.push(ComparisonRow {
            label: "#2 re-opt",
            description: "lengths and currents re-optimised with spacing held at 0.5λ".into(),
            array: r2.array,
            excitation: r2.excitation,
            report: r2.achieved_report,
            published_realized_gain_dbi: Some(6.37),
            published_total_efficiency_pct: Some(84.42),
        });
    }
    Ok(rows)
}
