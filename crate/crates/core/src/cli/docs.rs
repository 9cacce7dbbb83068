//! JSON documents read and written by the command-line tool.
//!
//! Angles are degrees, positions millimetres and lengths wavelengths in the
//! files; everything is converted to radians and metres on the way in.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::designs::{Design, COPPER_CONDUCTIVITY};
use crate::em::{DipoleArray, Direction, Excitation, PatternModel};
use crate::error::{Error, Result};
use crate::metrics::RadiationReport;
use crate::optimizer::{DeConfig, DesignProblem};

pub const SCHEMA: u32 = 1;

fn config_err(field: &str, message: impl Into<String>) -> Error {
    Error::Config {
        field: field.into(),
        message: message.into(),
    }
}

fn check_schema(schema: u32) -> Result<()> {
    if schema != SCHEMA {
        return Err(config_err("schema", format!("unsupported schema {schema}, expected {SCHEMA}")));
    }
    Ok(())
}

fn default_wavelength_mm() -> f64 {
    30.0
}
fn default_radius() -> f64 {
    5e-4
}
fn default_conductivity() -> f64 {
    COPPER_CONDUCTIVITY
}
fn default_z_ref() -> f64 {
    50.0
}
fn default_n() -> usize {
    4
}
fn default_direction() -> [f64; 2] {
    [90.0, 0.0]
}

/// Run configuration for `optimize` and `compare`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema: u32,
    #[serde(default = "default_wavelength_mm")]
    pub wavelength_mm: f64,
    #[serde(default = "default_radius")]
    pub wire_radius_over_lambda: f64,
    #[serde(default = "default_conductivity")]
    pub conductivity_s_per_m: f64,
    #[serde(default = "default_z_ref")]
    pub z_ref_ohms: f64,
    #[serde(default = "default_n")]
    pub n_elements: usize,
    /// `[θ, φ]` in degrees.
    #[serde(default = "default_direction")]
    pub evaluation_direction_deg: [f64; 2],
    #[serde(default)]
    pub pattern_model: PatternModel,
    #[serde(default)]
    pub amplitude_reference: Option<usize>,
    #[serde(default)]
    pub phase_reference: Option<usize>,
    #[serde(default)]
    pub de: DeSection,
    #[serde(default)]
    pub bounds: BoundsSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DeSection {
    pub population: usize,
    pub crossover: f64,
    pub mutation: f64,
    pub max_iterations: usize,
    pub seed: u64,
    pub target_realized_gain_dbi: f64,
}

impl Default for DeSection {
    fn default() -> Self {
        Self {
            population: 150,
            crossover: 0.9,
            mutation: 0.8,
            max_iterations: 250,
            seed: 0,
            target_realized_gain_dbi: 9.16,
        }
    }
}

/// Gene ranges shared by every element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BoundsSection {
    pub position_lambda: [f64; 2],
    pub length_lambda: [f64; 2],
    pub amplitude: [f64; 2],
    pub phase_deg: [f64; 2],
}

impl Default for BoundsSection {
    fn default() -> Self {
        Self {
            position_lambda: [-0.6, 0.6],
            length_lambda: [0.35, 0.5],
            amplitude: [0.05, 1.0],
            phase_deg: [-180.0, 180.0],
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| config_err("document", e.to_string()))?;
        check_schema(cfg.schema)?;
        for (field, v) in [
            ("wavelength_mm", cfg.wavelength_mm),
            ("wire_radius_over_lambda", cfg.wire_radius_over_lambda),
            ("conductivity_s_per_m", cfg.conductivity_s_per_m),
            ("z_ref_ohms", cfg.z_ref_ohms),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(config_err(field, format!("must be positive, got {v}")));
            }
        }
        Ok(cfg)
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength_mm * 1e-3
    }

    pub fn direction(&self) -> Result<Direction> {
        let [t, p] = self.evaluation_direction_deg;
        Direction::from_degrees(t, p).map_err(|e| config_err("evaluation_direction_deg", e.to_string()))
    }

    pub fn problem(&self) -> Result<DesignProblem> {
        let lambda = self.wavelength();
        let mut p = DesignProblem::new(self.n_elements, lambda);
        p.wire_radius = self.wire_radius_over_lambda * lambda;
        p.conductivity = self.conductivity_s_per_m;
        p.z_ref = self.z_ref_ohms;
        p.direction = self.direction()?;
        p.pattern = self.pattern_model;
        if let Some(r) = self.amplitude_reference {
            p.amplitude_reference = r;
        }
        if let Some(r) = self.phase_reference {
            p.phase_reference = r;
        }
        p.validate()?;
        Ok(p)
    }

    /// DE settings with gene bounds in metres and radians; `seed` replaces
    /// the configured seed when given.
    pub fn de_config(&self, seed: Option<u64>) -> Result<DeConfig> {
        let n = self.n_elements;
        if n == 0 {
            return Err(config_err("n_elements", "must be positive"));
        }
        let lambda = self.wavelength();
        let b = &self.bounds;
        let mut bounds = Vec::with_capacity(4 * n - 2);
        bounds.extend(std::iter::repeat((b.position_lambda[0] * lambda, b.position_lambda[1] * lambda)).take(n));
        bounds.extend(std::iter::repeat((b.length_lambda[0] * lambda, b.length_lambda[1] * lambda)).take(n));
        bounds.extend(std::iter::repeat((b.amplitude[0], b.amplitude[1])).take(n - 1));
        bounds.extend(std::iter::repeat((b.phase_deg[0].to_radians(), b.phase_deg[1].to_radians())).take(n - 1));
        let d = &self.de;
        let cfg = DeConfig {
            population: d.population,
            crossover: d.crossover,
            mutation: d.mutation,
            max_iterations: d.max_iterations,
            seed: seed.unwrap_or(d.seed),
            target_realized_gain_dbi: d.target_realized_gain_dbi,
            bounds,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// One dipole of a design, in the units of the published parameter table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub position_mm: f64,
    pub amplitude: f64,
    pub phase_deg: f64,
    pub length_lambda: f64,
}

/// A self-contained design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignDoc {
    pub schema: u32,
    pub wavelength_mm: f64,
    #[serde(default = "default_radius")]
    pub wire_radius_over_lambda: f64,
    #[serde(default = "default_conductivity")]
    pub conductivity_s_per_m: f64,
    /// `[θ, φ]` in degrees; the run configuration's direction otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluation_direction_deg: Option<[f64; 2]>,
    pub elements: Vec<ElementDoc>,
}

impl DesignDoc {
    /// Accepts a design document or any result document with a `design`
    /// member.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| config_err("document", e.to_string()))?;
        let inner = match value.get("design") {
            Some(d) => {
                let schema = value.get("schema").and_then(Value::as_u64).unwrap_or(0);
                check_schema(schema as u32)?;
                d.clone()
            }
            None => value,
        };
        let doc: Self = serde_json::from_value(inner).map_err(|e| config_err("design", e.to_string()))?;
        check_schema(doc.schema)?;
        Ok(doc)
    }

    pub fn from_design(design: &Design) -> Self {
        let lambda = design.array.wavelength();
        let elements = design
            .array
            .positions()
            .iter()
            .zip(design.array.lengths())
            .zip(design.excitation.currents())
            .map(|((x, l), i)| ElementDoc {
                position_mm: x * 1e3,
                amplitude: i.norm(),
                phase_deg: i.arg().to_degrees(),
                length_lambda: l / lambda,
            })
            .collect();
        Self {
            schema: SCHEMA,
            wavelength_mm: lambda * 1e3,
            wire_radius_over_lambda: design.array.wire_radius() / lambda,
            conductivity_s_per_m: design.array.conductivity(),
            evaluation_direction_deg: Some(direction_deg(design.direction)),
            elements,
        }
    }

    /// Builds the design; `fallback` supplies the direction when the
    /// document has none.
    pub fn to_design(&self, fallback: Direction) -> Result<Design> {
        if self.elements.is_empty() {
            return Err(config_err("elements", "at least one element is required"));
        }
        let lambda = self.wavelength_mm * 1e-3;
        let array = DipoleArray::new(
            lambda,
            self.elements.iter().map(|e| e.position_mm * 1e-3).collect(),
            self.elements.iter().map(|e| e.length_lambda * lambda).collect(),
            self.wire_radius_over_lambda * lambda,
            self.conductivity_s_per_m,
        )?;
        let excitation = Excitation::new(
            self.elements
                .iter()
                .map(|e| Complex64::from_polar(e.amplitude, e.phase_deg.to_radians()))
                .collect(),
        )?;
        let direction = match self.evaluation_direction_deg {
            Some([t, p]) => {
                Direction::from_degrees(t, p).map_err(|e| config_err("evaluation_direction_deg", e.to_string()))?
            }
            None => fallback,
        };
        Ok(Design {
            array,
            excitation,
            direction,
        })
    }
}

/// `[θ, φ]` in degrees.
pub fn direction_deg(dir: Direction) -> [f64; 2] {
    [dir.theta * 180.0 / PI, dir.phi * 180.0 / PI]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
    pub magnitude: f64,
}

impl From<Complex64> for ComplexDoc {
    fn from(c: Complex64) -> Self {
        Self {
            re: c.re,
            im: c.im,
            magnitude: c.norm(),
        }
    }
}

/// Serialized [`RadiationReport`]; efficiencies are fractions, powers watts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDoc {
    pub direction_deg: [f64; 2],
    pub directivity_dbi: f64,
    pub gain_dbi: f64,
    pub realized_gain_dbi: Option<f64>,
    pub realized_gain_linear: f64,
    pub radiation_efficiency: f64,
    pub mismatch_efficiency: f64,
    pub total_efficiency: f64,
    pub active_reflection: Vec<Option<ComplexDoc>>,
    pub p_rad_w: f64,
    pub p_loss_w: f64,
    pub p_in_w: f64,
    pub warnings: Vec<String>,
}

impl From<&RadiationReport> for ReportDoc {
    fn from(r: &RadiationReport) -> Self {
        Self {
            direction_deg: direction_deg(r.direction),
            directivity_dbi: r.directivity_dbi,
            gain_dbi: r.gain_dbi,
            realized_gain_dbi: r.realized_gain_dbi,
            realized_gain_linear: r.realized_gain_linear,
            radiation_efficiency: r.radiation_efficiency,
            mismatch_efficiency: r.mismatch_efficiency,
            total_efficiency: r.total_efficiency,
            active_reflection: r.active_reflection.iter().map(|g| g.map(ComplexDoc::from)).collect(),
            p_rad_w: r.p_rad,
            p_loss_w: r.p_loss,
            p_in_w: r.p_in,
            warnings: r.warnings.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRow {
    pub iteration: usize,
    pub best_cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizeDoc {
    pub schema: u32,
    pub command: &'static str,
    pub converged: bool,
    pub seed: u64,
    pub target_realized_gain_dbi: f64,
    pub best_cost: f64,
    pub iterations_run: usize,
    pub design: DesignDoc,
    pub report: ReportDoc,
    pub cost_trace: Vec<TraceRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleDoc {
    pub impedance_p_rad_w: f64,
    pub quadrature_p_rad_w: f64,
    pub relative_discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluateDoc {
    pub schema: u32,
    pub command: &'static str,
    pub design: DesignDoc,
    pub report: ReportDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubarrayDoc {
    pub schema: u32,
    pub command: &'static str,
    pub groups: usize,
    pub gap_lambda: f64,
    pub unit: ReportDoc,
    /// Groups treated as uncoupled.
    pub approximate: ReportDoc,
    /// Full composite network.
    pub full: ReportDoc,
    pub power_discrepancy: f64,
    pub realized_gain_increase_db: Option<f64>,
    pub warnings: Vec<String>,
    pub design: DesignDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRowDoc {
    pub label: String,
    pub description: String,
    pub realized_gain_dbi: Option<f64>,
    pub total_efficiency_pct: f64,
    pub directivity_dbi: f64,
    pub gain_dbi: f64,
    pub published_realized_gain_dbi: Option<f64>,
    pub published_total_efficiency_pct: Option<f64>,
    pub design: DesignDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareDoc {
    pub schema: u32,
    pub command: &'static str,
    pub rows: Vec<CompareRowDoc>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::table_one;

    #[test]
    fn minimal_config_takes_defaults() {
        let cfg = RunConfig::from_json(r#"{"schema": 1}"#).unwrap();
        assert_eq!(cfg.n_elements, 4);
        assert_eq!(cfg.de.population, 150);
        let de = cfg.de_config(Some(7)).unwrap();
        assert_eq!(de.seed, 7);
        assert_eq!(de.bounds.len(), 14);
        assert_eq!(de.bounds, cfg.problem().unwrap().default_bounds());
    }

    #[test]
    fn config_errors_name_the_field() {
        let bad = RunConfig::from_json(r#"{"schema": 1, "de": {"crossover": 1.5}}"#).unwrap();
        match bad.de_config(None) {
            Err(Error::Config { field, .. }) => assert_eq!(field, "crossover"),
            other => panic!("{other:?}"),
        }
        assert!(RunConfig::from_json(r#"{"schema": 2}"#).is_err());
        assert!(RunConfig::from_json(r#"{"schema": 1, "typo": 3}"#).is_err());
        assert!(RunConfig::from_json(r#"{"schema": 1, "z_ref_ohms": -5}"#).is_err());
    }

    #[test]
    fn design_round_trip() {
        let d = table_one();
        let doc = DesignDoc::from_design(&d);
        let text = serde_json::to_string(&doc).unwrap();
        let back = DesignDoc::from_json(&text).unwrap().to_design(Direction::end_fire()).unwrap();
        for (a, b) in back.array.positions().iter().zip(d.array.positions()) {
            assert!((a - b).abs() < 1e-15);
        }
        for (a, b) in back.excitation.currents().iter().zip(d.excitation.currents()) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!((back.direction.phi - d.direction.phi).abs() < 1e-12);
    }

    #[test]
    fn design_inside_result_document() {
        let doc = DesignDoc::from_design(&table_one());
        let wrapped = serde_json::json!({"schema": 1, "command": "optimize", "design": doc});
        assert_eq!(DesignDoc::from_json(&wrapped.to_string()).unwrap(), doc);
        let wrong = serde_json::json!({"schema": 3, "design": doc});
        assert!(DesignDoc::from_json(&wrong.to_string()).is_err());
    }
}
