//! Linear arrangements of `S` copies of a unit array along the x-axis.
//!
//! Group `s` is the unit shifted by `s·(D_g + d)`, where `d` is the unit's
//! own span `x_{N−1} − x_0`, so `D_g` is the edge-to-edge gap between
//! neighbouring groups. Two evaluation paths are offered: one that treats
//! the groups as uncoupled (input power is `S` times the unit's) and one that
//! builds the full `NS × NS` network.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::em::{DipoleArray, Direction, Excitation, PatternModel};
use crate::error::{Error, Result};
use crate::metrics::{evaluate, input_power, mismatch_efficiency, passivity_breach, report_from_parts, PowerBudget, RadiationReport};
use crate::network::NetworkMatrices;

/// A unit array with its feed, repeated `groups` times.
#[derive(Debug, Clone, PartialEq)]
pub struct SubarrayConfig {
    unit: DipoleArray,
    excitation: Excitation,
    groups: usize,
    group_gap: f64,
}

impl SubarrayConfig {
    /// `group_gap` is in metres.
    pub fn new(unit: DipoleArray, excitation: Excitation, groups: usize, group_gap: f64) -> Result<Self> {
        if groups == 0 {
            return Err(Error::InvalidArgument("need at least one group".into()));
        }
        if !(group_gap > 0.0 && group_gap.is_finite()) {
            return Err(Error::InvalidArgument(format!("group gap must be positive, got {group_gap}")));
        }
        if unit.len() != excitation.len() {
            return Err(Error::InvalidArgument(format!(
                "{} elements but {} currents",
                unit.len(),
                excitation.len()
            )));
        }
        Ok(Self {
            unit,
            excitation,
            groups,
            group_gap,
        })
    }

    pub fn unit(&self) -> &DipoleArray {
        &self.unit
    }

    pub fn excitation(&self) -> &Excitation {
        &self.excitation
    }

    pub fn groups(&self) -> usize {
        self.groups
    }

    pub fn group_gap(&self) -> f64 {
        self.group_gap
    }

    /// Distance between corresponding elements of neighbouring groups.
    pub fn group_period(&self) -> f64 {
        let x = self.unit.positions();
        self.group_gap + (x[x.len() - 1] - x[0])
    }

    /// Present when the gap is under one wavelength, where coupling between
    /// groups is no longer small.
    pub fn gap_warning(&self) -> Option<String> {
        let lambda = self.unit.wavelength();
        (self.groups > 1 && self.group_gap < lambda).then(|| {
            format!(
                "group gap {:.3}λ is below one wavelength; the uncoupled-group power estimate is unreliable",
                self.group_gap / lambda
            )
        })
    }
}

/// The `N·S`-element composite and its replicated currents.
pub fn compose(cfg: &SubarrayConfig) -> Result<(DipoleArray, Excitation)> {
    let period = cfg.group_period();
    let unit = &cfg.unit;
    let mut positions = Vec::with_capacity(unit.len() * cfg.groups);
    let mut lengths = Vec::with_capacity(positions.capacity());
    let mut currents = Vec::with_capacity(positions.capacity());
    for s in 0..cfg.groups {
        let shift = s as f64 * period;
        positions.extend(unit.positions().iter().map(|x| x + shift));
        lengths.extend_from_slice(unit.lengths());
        currents.extend_from_slice(cfg.excitation.currents());
    }
    let array = DipoleArray::new(unit.wavelength(), positions, lengths, unit.wire_radius(), unit.conductivity())?;
    Ok((array, Excitation::new(currents)?))
}

/// The two factors of the azimuth-plane field sum at azimuth `phi`:
/// `Σ_s e^{jks·P·cos φ}` over groups and `Σ_n I_n·e^{jk·x_n·cos φ}` over the
/// unit. Their product is the composite sum `Σ I·e^{jkx·cos φ}`.
pub fn group_factorization(cfg: &SubarrayConfig, phi: f64) -> (Complex64, Complex64) {
    let k = cfg.unit.wavenumber();
    let c = phi.cos();
    let psi = k * cfg.group_period() * c;
    let group = (0..cfg.groups)
        .map(|s| Complex64::from_polar(1.0, s as f64 * psi))
        .sum();
    let unit = cfg
        .unit
        .positions()
        .iter()
        .zip(cfg.excitation.currents())
        .map(|(x, i)| i * Complex64::from_polar(1.0, k * x * c))
        .sum();
    (group, unit)
}

/// `|sin(S·ψ/2) / sin(ψ/2)|`, the magnitude of the group factor.
pub fn group_envelope(groups: usize, psi: f64) -> f64 {
    let half = 0.5 * psi;
    let den = half.sin();
    if den.abs() < 1e-12 {
        // Limit at ψ = 2πm.
        return groups as f64;
    }
    ((groups as f64 * half).sin() / den).abs()
}

/// Input power of the composite with coupling between groups ignored:
/// `S` times the unit's.
pub fn subarray_input_power(cfg: &SubarrayConfig, net_unit: &NetworkMatrices) -> PowerBudget {
    let b = input_power(net_unit, &cfg.excitation);
    let s = cfg.groups as f64;
    PowerBudget {
        p_in: s * b.p_in,
        p_loss: s * b.p_loss,
        p_rad: s * b.p_rad,
    }
}

/// Composite figures from both evaluation paths.
#[derive(Debug, Clone, PartialEq)]
pub struct SubarrayReport {
    /// Uncoupled groups: unit network powers and reflections, composite
    /// far field.
    pub approximate: RadiationReport,
    /// Full composite network.
    pub full: RadiationReport,
    pub warnings: Vec<String>,
}

impl SubarrayReport {
    /// `|P_in(approx) − P_in(full)| / P_in(full)`.
    pub fn power_discrepancy(&self) -> f64 {
        (self.approximate.p_in - self.full.p_in).abs() / self.full.p_in
    }
}

/// Evaluates the composite in `dir` by both paths.
pub fn subarray_report(
    cfg: &SubarrayConfig,
    z_ref: f64,
    dir: Direction,
    model: PatternModel,
) -> Result<SubarrayReport> {
    let (array, exc) = compose(cfg)?;
    let net_unit = NetworkMatrices::build(&cfg.unit, z_ref)?;
    let budget = subarray_input_power(cfg, &net_unit);
    let unit_gamma = net_unit.active_reflection(&cfg.excitation)?;
    let e_ref = mismatch_efficiency(&unit_gamma, &cfg.excitation);
    let gamma: Vec<_> = (0..cfg.groups).flat_map(|_| unit_gamma.iter().copied()).collect();
    let unit_budget = input_power(&net_unit, &cfg.excitation);
    let breach = passivity_breach(&net_unit, &cfg.excitation, unit_budget.p_rad);
    let mut approximate = report_from_parts(&array, &exc, dir, model, budget, gamma, e_ref, breach)?;
    let full = evaluate(&array, &exc, z_ref, dir, model)?;
    let warnings: Vec<String> = cfg.gap_warning().into_iter().collect();
    approximate.warnings.extend(warnings.iter().cloned());
    Ok(SubarrayReport {
        approximate,
        full,
        warnings,
    })
}

/// Azimuths in `[0, π]` where every group adds in phase
/// (`k·P·cos φ = 2πm`), i.e. the maxima of the group factor.
pub fn grating_lobe_azimuths(cfg: &SubarrayConfig) -> Vec<f64> {
    let kp = cfg.unit.wavenumber() * cfg.group_period();
    let m_max = (kp / (2.0 * PI)).floor() as i64;
    let mut phis: Vec<f64> = (-m_max..=m_max)
        .map(|m| (2.0 * PI * m as f64 / kp).clamp(-1.0, 1.0).acos())
        .collect();
    phis.sort_by(f64::total_cmp);
    phis
}
