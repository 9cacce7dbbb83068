use std::f64::consts::PI;

use num_complex::Complex64;

use crate::em::{DipoleArray, Direction, Excitation, PatternModel};
use crate::error::{Error, Result};
use crate::metrics::{evaluate, from_db, RadiationReport};

/// Penalty added to the squared error of an infeasible design.
pub const INFEASIBLE_PENALTY: f64 = 1e3;

/// Real-valued design vector of length `4N − 2`, laid out as
/// `[x_0..x_{N−1}, l_0..l_{N−1}, amplitudes, phases]`.
///
/// Positions and lengths are in metres. Amplitudes skip the amplitude
/// reference element (fixed at 1); phases, in radians, skip the phase
/// reference element (fixed at 0).
#[derive(Debug, Clone, PartialEq)]
pub struct Genome(pub Vec<f64>);

impl Genome {
    pub fn genes(&self) -> &[f64] {
        &self.0
    }
}

/// The physical setting in which genomes are decoded and scored.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignProblem {
    pub n_elements: usize,
    pub wavelength: f64,
    pub wire_radius: f64,
    pub conductivity: f64,
    pub z_ref: f64,
    pub direction: Direction,
    pub pattern: PatternModel,
    /// Element whose amplitude is fixed at 1.
    pub amplitude_reference: usize,
    /// Element whose phase is fixed at 0.
    pub phase_reference: usize,
}

impl DesignProblem {
    /// Copper wires of radius `λ/2000`, 50 Ω ports, end-fire evaluation.
    /// The amplitude reference is element `(N−1)/2` and the phase reference
    /// element `N/2`; for four elements these are the second and third.
    pub fn new(n_elements: usize, wavelength: f64) -> Self {
        Self {
            n_elements,
            wavelength,
            wire_radius: wavelength / 2000.0,
            conductivity: 5.8e7,
            z_ref: crate::network::DEFAULT_Z_REF,
            direction: Direction::end_fire(),
            pattern: PatternModel::default(),
            amplitude_reference: n_elements.saturating_sub(1) / 2,
            phase_reference: n_elements / 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, message: String| {
            Err(Error::Config {
                field: field.into(),
                message,
            })
        };
        if self.n_elements == 0 {
            return bad("n_elements", "must be positive".into());
        }
        if !(self.wavelength > 0.0 && self.wavelength.is_finite()) {
            return bad("wavelength", format!("must be positive, got {}", self.wavelength));
        }
        if !(self.z_ref > 0.0 && self.z_ref.is_finite()) {
            return bad("z_ref", format!("must be positive, got {}", self.z_ref));
        }
        if self.amplitude_reference >= self.n_elements {
            return bad("amplitude_reference", format!("{} is not an element index", self.amplitude_reference));
        }
        if self.phase_reference >= self.n_elements {
            return bad("phase_reference", format!("{} is not an element index", self.phase_reference));
        }
        Ok(())
    }

    pub fn genome_len(&self) -> usize {
        4 * self.n_elements - 2
    }

    /// Positions in `[−0.6λ, 0.6λ]`, lengths in `[0.35λ, 0.5λ]`, amplitudes
    /// in `[0.05, 1]`, phases in `[−π, π]`.
    pub fn default_bounds(&self) -> Vec<(f64, f64)> {
        let n = self.n_elements;
        let l = self.wavelength;
        let mut b = Vec::with_capacity(self.genome_len());
        b.extend(std::iter::repeat((-0.6 * l, 0.6 * l)).take(n));
        b.extend(std::iter::repeat((0.35 * l, 0.5 * l)).take(n));
        b.extend(std::iter::repeat((0.05, 1.0)).take(n - 1));
        b.extend(std::iter::repeat((-PI, PI)).take(n - 1));
        b
    }

    /// Builds the array and currents a genome describes. Elements are
    /// sorted by position first; the error reports infeasible geometry.
    pub fn decode(&self, genome: &Genome) -> Result<(DipoleArray, Excitation)> {
        let n = self.n_elements;
        let g = genome.genes();
        if g.len() != self.genome_len() {
            return Err(Error::InvalidArgument(format!(
                "genome has {} genes, expected {}",
                g.len(),
                self.genome_len()
            )));
        }
        let (x, rest) = g.split_at(n);
        let (l, rest) = rest.split_at(n);
        let (amps, phases) = rest.split_at(n - 1);
        let amp = insert_fixed(amps, self.amplitude_reference, 1.0);
        let phase = insert_fixed(phases, self.phase_reference, 0.0);

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
        let array = DipoleArray::new(
            self.wavelength,
            order.iter().map(|&i| x[i]).collect(),
            order.iter().map(|&i| l[i]).collect(),
            self.wire_radius,
            self.conductivity,
        )?;
        let exc = Excitation::new(order.iter().map(|&i| Complex64::from_polar(amp[i], phase[i])).collect())?;
        Ok((array, exc))
    }

    /// Inverse of [`decode`](Self::decode) up to a common complex factor:
    /// currents are rescaled so the reference elements carry unit amplitude
    /// and zero phase.
    pub fn encode(&self, array: &DipoleArray, exc: &Excitation) -> Result<Genome> {
        let n = self.n_elements;
        if array.len() != n || exc.len() != n {
            return Err(Error::InvalidArgument(format!(
                "expected {n} elements, got an array of {} and {} currents",
                array.len(),
                exc.len()
            )));
        }
        let c = exc.currents();
        let a_ref = c[self.amplitude_reference].norm();
        if a_ref == 0.0 || c[self.phase_reference].norm() == 0.0 {
            return Err(Error::DegenerateExcitation("reference element carries no current".into()));
        }
        let factor = Complex64::from_polar(1.0 / a_ref, -c[self.phase_reference].arg());
        let scaled: Vec<Complex64> = c.iter().map(|i| i * factor).collect();
        let mut genes = Vec::with_capacity(self.genome_len());
        genes.extend_from_slice(array.positions());
        genes.extend_from_slice(array.lengths());
        genes.extend(skip(scaled.iter().map(|i| i.norm()), self.amplitude_reference));
        genes.extend(skip(scaled.iter().map(|i| i.arg()), self.phase_reference));
        Ok(Genome(genes))
    }

    /// Full radiation report for a design in the problem's direction.
    pub fn evaluate(&self, array: &DipoleArray, exc: &Excitation) -> Result<RadiationReport> {
        evaluate(array, exc, self.z_ref, self.direction, self.pattern)
    }

    /// Heaviside-gated squared error on linear realized gain:
    /// `e = G_t − G_a`, cost `e²` when `e > 0`, otherwise 0. Designs that
    /// cannot be built or have no positive mismatch efficiency cost
    /// `e² + 1000`.
    pub fn cost(&self, genome: &Genome, target_dbi: f64) -> f64 {
        let target = from_db(target_dbi);
        let report = self
            .decode(genome)
            .and_then(|(array, exc)| self.evaluate(&array, &exc));
        match report {
            Ok(r) if r.mismatch_efficiency > 0.0 && r.realized_gain_linear.is_finite() => {
                gated_squared_error(target_dbi, r.realized_gain_linear)
            }
            Ok(r) if r.realized_gain_linear.is_finite() => {
                let e = target - r.realized_gain_linear;
                e * e + INFEASIBLE_PENALTY
            }
            _ => target * target + INFEASIBLE_PENALTY,
        }
    }
}

/// `H(e)·e²` with `e = 10^(target/10) − achieved`.
pub fn gated_squared_error(target_dbi: f64, achieved_linear: f64) -> f64 {
    let e = from_db(target_dbi) - achieved_linear;
    if e > 0.0 {
        e * e
    } else {
        0.0
    }
}

fn insert_fixed(free: &[f64], at: usize, value: f64) -> Vec<f64> {
    let mut v = free.to_vec();
    v.insert(at, value);
    v
}

fn skip(values: impl Iterator<Item = f64>, at: usize) -> impl Iterator<Item = f64> {
    values.enumerate().filter(move |(i, _)| *i != at).map(|(_, v)| v)
}
