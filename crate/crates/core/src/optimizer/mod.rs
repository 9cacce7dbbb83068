//! Differential Evolution over array geometry and feed currents.
//!
//! [`DeEngine`] is a plain DE/best/1/bin minimiser over box bounds.
//! [`DesignProblem`] maps its real vectors to dipole arrays and scores them
//! with the gated realized-gain error; [`optimize`] ties the two together.

mod de;
mod genome;

pub use de::{best_1_vector, crossover_bin, member_rng, mutate_best_1, DeConfig, DeEngine};
pub use genome::{gated_squared_error, DesignProblem, Genome, INFEASIBLE_PENALTY};

use crate::em::{DipoleArray, Excitation};
use crate::error::Result;
use crate::metrics::RadiationReport;

/// Outcome of [`optimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct DeResult {
    pub best_genome: Genome,
    pub best_cost: f64,
    /// `(iteration, best cost)` from iteration 0 (the initial population).
    pub cost_trace: Vec<(usize, f64)>,
    pub achieved_report: RadiationReport,
    pub iterations_run: usize,
    pub array: DipoleArray,
    pub excitation: Excitation,
}

impl DeResult {
    /// Whether the target was met.
    pub fn converged(&self) -> bool {
        self.best_cost == 0.0
    }
}

/// Runs DE/best/1/bin on `problem` until the realized-gain target is met or
/// the iteration budget is spent.
pub fn optimize(cfg: &DeConfig, problem: &DesignProblem) -> Result<DeResult> {
    problem.validate()?;
    cfg.validate()?;
    if cfg.bounds.len() != problem.genome_len() {
        return Err(crate::Error::Config {
            field: "bounds".into(),
            message: format!(
                "{} gene bounds given, {} elements need {}",
                cfg.bounds.len(),
                problem.n_elements,
                problem.genome_len()
            ),
        });
    }
    let target = cfg.target_realized_gain_dbi;
    let objective = |x: &[f64]| problem.cost(&Genome(x.to_vec()), target);
    let mut engine = DeEngine::new(cfg.clone(), objective)?;
    let cost_trace = engine.run();
    let (best, best_cost) = engine.best();
    let best_genome = Genome(best.to_vec());
    let (array, excitation) = problem.decode(&best_genome)?;
    let achieved_report = problem.evaluate(&array, &excitation)?;
    Ok(DeResult {
        best_genome,
        best_cost,
        cost_trace,
        achieved_report,
        iterations_run: engine.iteration(),
        array,
        excitation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::em::Direction;
    use crate::metrics::from_db;
    use num_complex::Complex64;
    use proptest::prelude::*;

    const LAMBDA: f64 = 0.03;

    fn table_one(problem: &DesignProblem) -> (DipoleArray, Excitation) {
        let array = DipoleArray::new(
            LAMBDA,
            vec![-16.13e-3, -6.24e-3, 5.78e-3, 16.13e-3],
            [0.44, 0.45, 0.45, 0.48].iter().map(|l| l * LAMBDA).collect(),
            problem.wire_radius,
            problem.conductivity,
        )
        .unwrap();
        let exc = Excitation::from_polar(
            &[0.95, 1.0, 0.96, 0.75],
            &[52.47f64, -156.37, 0.0, 149.11].map(f64::to_radians),
        )
        .unwrap();
        (array, exc)
    }

    #[test]
    fn genome_length_and_references() {
        let p = DesignProblem::new(4, LAMBDA);
        assert_eq!(p.genome_len(), 14);
        assert_eq!(p.default_bounds().len(), 14);
        assert_eq!((p.amplitude_reference, p.phase_reference), (1, 2));
        let single = DesignProblem::new(1, LAMBDA);
        assert_eq!(single.genome_len(), 2);
        assert_eq!((single.amplitude_reference, single.phase_reference), (0, 0));
    }

    #[test]
    fn table_one_round_trip() {
        let p = DesignProblem::new(4, LAMBDA);
        let (array, exc) = table_one(&p);
        let g = p.encode(&array, &exc).unwrap();
        for (&gene, &(lo, hi)) in g.genes().iter().zip(&p.default_bounds()) {
            assert!(gene >= lo && gene <= hi, "{gene} outside [{lo}, {hi}]");
        }
        let (a2, e2) = p.decode(&g).unwrap();
        for (x, y) in a2.positions().iter().zip(array.positions()) {
            assert!((x - y).abs() < 1e-12);
        }
        for (x, y) in a2.lengths().iter().zip(array.lengths()) {
            assert!((x - y).abs() < 1e-12);
        }
        let amps: Vec<f64> = e2.currents().iter().map(|c| c.norm()).collect();
        let phases: Vec<f64> = e2.currents().iter().map(|c| c.arg().to_degrees()).collect();
        for (a, b) in amps.iter().zip([0.95, 1.0, 0.96, 0.75]) {
            assert!((a - b).abs() < 1e-12);
        }
        for (a, b) in phases.iter().zip([52.47, -156.37, 0.0, 149.11]) {
            assert!((a - b).abs() < 1e-9);
        }
        assert_eq!(e2.currents()[1].norm(), 1.0);
        assert_eq!(e2.currents()[2].arg(), 0.0);
    }

    #[test]
    fn encode_normalises_common_factor() {
        let p = DesignProblem::new(4, LAMBDA);
        let (array, exc) = table_one(&p);
        let rotated = exc.scaled(Complex64::from_polar(3.0, 1.1)).unwrap();
        let a = p.encode(&array, &exc).unwrap();
        let b = p.encode(&array, &rotated).unwrap();
        for (x, y) in a.genes().iter().zip(b.genes()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn decode_sorts_by_position() {
        let p = DesignProblem::new(3, LAMBDA);
        let g = Genome(vec![
            0.01, -0.01, 0.0, // positions
            0.012, 0.013, 0.014, // lengths
            0.5, 0.7, // amplitudes of elements 0 and 2
            0.3, -0.2, // phases of elements 0 and 2
        ]);
        let (a, e) = p.decode(&g).unwrap();
        assert_eq!(a.positions(), &[-0.01, 0.0, 0.01]);
        assert_eq!(a.lengths(), &[0.013, 0.014, 0.012]);
        let amps: Vec<f64> = e.currents().iter().map(|c| c.norm()).collect();
        assert!((amps[0] - 1.0).abs() < 1e-15 && (amps[1] - 0.7).abs() < 1e-15 && (amps[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn overlapping_elements_are_penalised() {
        let p = DesignProblem::new(2, LAMBDA);
        let g = Genome(vec![0.0, 0.0, 0.015, 0.015, 0.5, 0.0]);
        assert!(p.decode(&g).is_err());
        assert!(p.cost(&g, 9.16) > INFEASIBLE_PENALTY);
    }

    #[test]
    fn gated_error_examples() {
        assert_eq!(gated_squared_error(9.16, from_db(9.16)), 0.0);
        assert_eq!(gated_squared_error(9.16, from_db(10.0)), 0.0);
        let e = gated_squared_error(9.16, from_db(5.63));
        assert!((e - 21.0).abs() < 0.05, "{e}");
        assert!((e - 21.33).abs() < 0.5);
        // Differencing in dB would give a much smaller figure.
        assert!(((9.16f64 - 5.63).powi(2) - 12.46).abs() < 0.01);
    }

    #[test]
    fn cost_zero_iff_target_met() {
        let mut p = DesignProblem::new(4, LAMBDA);
        p.direction = Direction::back_fire();
        let (array, exc) = table_one(&p);
        let g = p.encode(&array, &exc).unwrap();
        let achieved = p.evaluate(&array, &exc).unwrap().realized_gain_dbi.unwrap();
        assert_eq!(p.cost(&g, achieved - 0.01), 0.0);
        assert!(p.cost(&g, achieved + 0.01) > 0.0);
        assert_eq!(p.cost(&g, achieved - 1e-9), 0.0);
    }

    fn quick_config(problem: &DesignProblem, seed: u64, target: f64, iterations: usize) -> DeConfig {
        DeConfig {
            population: 40,
            max_iterations: iterations,
            target_realized_gain_dbi: target,
            ..DeConfig::standard(problem.default_bounds(), seed)
        }
    }

    #[test]
    fn easy_target_is_reached_quickly() {
        let p = DesignProblem::new(4, LAMBDA);
        let hits = (0..10)
            .filter(|&seed| {
                let r = optimize(&quick_config(&p, seed, 5.0, 50), &p).unwrap();
                assert!(r.cost_trace.windows(2).all(|w| w[1].1 <= w[0].1));
                r.converged() && r.iterations_run <= 50
            })
            .count();
        assert!(hits >= 9, "{hits} of 10 seeds reached 5 dBi");
    }

    #[test]
    fn same_seed_same_result() {
        let p = DesignProblem::new(3, LAMBDA);
        let cfg = quick_config(&p, 17, 20.0, 8);
        let a = optimize(&cfg, &p).unwrap();
        let b = optimize(&cfg, &p).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iterations_run, 8);
        assert_eq!(a.cost_trace.len(), 9);
        let c = optimize(&quick_config(&p, 18, 20.0, 8), &p).unwrap();
        assert_ne!(a.best_genome, c.best_genome);
    }

    #[test]
    fn mismatched_bounds_rejected() {
        let p = DesignProblem::new(4, LAMBDA);
        let mut cfg = quick_config(&p, 0, 5.0, 5);
        cfg.bounds.pop();
        assert!(optimize(&cfg, &p).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn any_genome_in_bounds_is_total(unit in prop::collection::vec(0.0f64..=1.0, 14)) {
            let p = DesignProblem::new(4, LAMBDA);
            let genes: Vec<f64> = unit.iter().zip(p.default_bounds()).map(|(u, (lo, hi))| lo + u * (hi - lo)).collect();
            let g = Genome(genes);
            let c = p.cost(&g, 9.16);
            prop_assert!(c.is_finite() && c >= 0.0);
            if let Ok((a, _)) = p.decode(&g) {
                prop_assert!(a.positions().windows(2).all(|w| w[0] < w[1]));
            }
        }

        #[test]
        fn bound_corners_decode(mask in prop::collection::vec(any::<bool>(), 14)) {
            // Spread positions over the corners so they never coincide.
            let p = DesignProblem::new(4, LAMBDA);
            let b = p.default_bounds();
            let mut genes: Vec<f64> = mask.iter().zip(&b).map(|(&m, &(lo, hi))| if m { hi } else { lo }).collect();
            genes[..4].copy_from_slice(&[b[0].0, -0.2 * LAMBDA, 0.2 * LAMBDA, b[3].1]);
            prop_assert!(p.decode(&Genome(genes)).is_ok());
        }
    }
}
