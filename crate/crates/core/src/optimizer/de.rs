//! DE/best/1/bin over a box-bounded real search space.
//!
//! Random numbers come from ChaCha8 (`rand_chacha`). Each member of each
//! generation draws from its own stream: the key is expanded from the run
//! seed with `SeedableRng::seed_from_u64`, and the 64-bit stream id is
//! `iteration << 32 | member`. Trials can therefore be produced in parallel
//! without changing the result.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Differential Evolution hyperparameters and gene bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct DeConfig {
    /// Population size (`NP`).
    pub population: usize,
    /// Crossover probability (`CR`).
    pub crossover: f64,
    /// Mutation scale factor (`F`).
    pub mutation: f64,
    pub max_iterations: usize,
    pub seed: u64,
    pub target_realized_gain_dbi: f64,
    /// `(lo, hi)` per gene.
    pub bounds: Vec<(f64, f64)>,
}

impl DeConfig {
    /// Population 150, CR 0.9, F 0.8, 250 iterations, 9.16 dBi target.
    pub fn standard(bounds: Vec<(f64, f64)>, seed: u64) -> Self {
        Self {
            population: 150,
            crossover: 0.9,
            mutation: 0.8,
            max_iterations: 250,
            seed,
            target_realized_gain_dbi: 9.16,
            bounds,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, message: String| {
            Err(Error::Config {
                field: field.to_string(),
                message,
            })
        };
        if self.population < 4 {
            return bad("population", format!("must be at least 4, got {}", self.population));
        }
        if !(0.0..=1.0).contains(&self.crossover) {
            return bad("crossover", format!("must lie in [0, 1], got {}", self.crossover));
        }
        if !(self.mutation > 0.0 && self.mutation <= 2.0) {
            return bad("mutation", format!("must lie in (0, 2], got {}", self.mutation));
        }
        if self.max_iterations == 0 {
            return bad("max_iterations", "must be positive".into());
        }
        if !self.target_realized_gain_dbi.is_finite() {
            return bad("target_realized_gain_dbi", "must be finite".into());
        }
        if self.bounds.is_empty() {
            return bad("bounds", "at least one gene is required".into());
        }
        for (i, &(lo, hi)) in self.bounds.iter().enumerate() {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return bad("bounds", format!("gene {i}: need finite lo < hi, got ({lo}, {hi})"));
            }
        }
        Ok(())
    }
}

/// The RNG for one member in one generation.
pub fn member_rng(seed: u64, iteration: u64, member: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((iteration << 32) | (member & 0xffff_ffff));
    rng
}

/// `clamp(best + F·(r1 − r2))` gene by gene.
pub fn best_1_vector(best: &[f64], r1: &[f64], r2: &[f64], f: f64, bounds: &[(f64, f64)]) -> Vec<f64> {
    best.iter()
        .zip(r1)
        .zip(r2)
        .zip(bounds)
        .map(|(((b, a), c), &(lo, hi))| (b + f * (a - c)).clamp(lo, hi))
        .collect()
}

/// DE/best/1 mutant for member `target`: `r1` and `r2` are drawn without
/// replacement from the population excluding `best` and `target`.
pub fn mutate_best_1<R: Rng>(
    population: &[Vec<f64>],
    best: usize,
    target: usize,
    f: f64,
    bounds: &[(f64, f64)],
    rng: &mut R,
) -> Vec<f64> {
    let candidates: Vec<usize> = (0..population.len()).filter(|&k| k != best && k != target).collect();
    debug_assert!(candidates.len() >= 2);
    let a = rng.gen_range(0..candidates.len());
    let mut b = rng.gen_range(0..candidates.len() - 1);
    if b >= a {
        b += 1;
    }
    best_1_vector(&population[best], &population[candidates[a]], &population[candidates[b]], f, bounds)
}

/// Binomial crossover with one forced mutant gene (`j_rand`).
pub fn crossover_bin<R: Rng>(target: &[f64], mutant: &[f64], cr: f64, rng: &mut R) -> Vec<f64> {
    debug_assert_eq!(target.len(), mutant.len());
    let forced = rng.gen_range(0..target.len());
    target
        .iter()
        .zip(mutant)
        .enumerate()
        .map(|(j, (&t, &m))| if j == forced || rng.gen::<f64>() < cr { m } else { t })
        .collect()
}

/// Population state of a running optimisation.
pub struct DeEngine<F> {
    cfg: DeConfig,
    objective: F,
    population: Vec<Vec<f64>>,
    costs: Vec<f64>,
    best: usize,
    iteration: usize,
}

impl<F> DeEngine<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    /// Samples the initial population uniformly within bounds and scores it.
    pub fn new(cfg: DeConfig, objective: F) -> Result<Self> {
        cfg.validate()?;
        let population: Vec<Vec<f64>> = (0..cfg.population)
            .map(|m| {
                let mut rng = member_rng(cfg.seed, 0, m as u64);
                cfg.bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..=hi)).collect()
            })
            .collect();
        let costs: Vec<f64> = population.par_iter().map(|x| objective(x)).collect();
        let best = argmin(&costs);
        Ok(Self {
            cfg,
            objective,
            population,
            costs,
            best,
            iteration: 0,
        })
    }

    /// One generation: every member proposes a trial; trials that are no
    /// worse replace their targets.
    pub fn step(&mut self) {
        self.iteration += 1;
        let it = self.iteration as u64;
        let (seed, f, cr, best) = (self.cfg.seed, self.cfg.mutation, self.cfg.crossover, self.best);
        let bounds = &self.cfg.bounds;
        let population = &self.population;
        let objective = &self.objective;
        let trials: Vec<(Vec<f64>, f64)> = (0..population.len())
            .into_par_iter()
            .map(|i| {
                let mut rng = member_rng(seed, it, i as u64);
                let mutant = mutate_best_1(population, best, i, f, bounds, &mut rng);
                let trial = crossover_bin(&population[i], &mutant, cr, &mut rng);
                let cost = objective(&trial);
                (trial, cost)
            })
            .collect();
        for (i, (trial, cost)) in trials.into_iter().enumerate() {
            if cost <= self.costs[i] {
                self.population[i] = trial;
                self.costs[i] = cost;
            }
        }
        self.best = argmin(&self.costs);
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn best(&self) -> (&[f64], f64) {
        (&self.population[self.best], self.costs[self.best])
    }

    pub fn population(&self) -> &[Vec<f64>] {
        &self.population
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn config(&self) -> &DeConfig {
        &self.cfg
    }

    /// Runs until the best cost reaches 0 or `max_iterations` generations
    /// have been made. Returns the `(iteration, best_cost)` trace, starting
    /// with the initial population at iteration 0.
    pub fn run(&mut self) -> Vec<(usize, f64)> {
        let mut trace = vec![(self.iteration, self.costs[self.best])];
        while self.costs[self.best] > 0.0 && self.iteration < self.cfg.max_iterations {
            self.step();
            trace.push((self.iteration, self.costs[self.best]));
        }
        trace
    }
}

fn argmin(costs: &[f64]) -> usize {
    costs
        .iter()
        .enumerate()
        .fold(0, |best, (i, &c)| if c < costs[best] { i } else { best })
}
