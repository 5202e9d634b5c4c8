use std::cmp::Ordering;

use super::config::GaConfig;
use super::fitness::{evaluate, Fitness};
use crate::encoding::EncodingSpec;
use crate::error::{FsmError, Result};
use crate::genome::Genome;
use crate::par::{map_slice, Parallelism};
use crate::rng::RandomSource;
use crate::tasks::Task;

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genome: Genome,
    pub fitness: Fitness,
    /// Insertion sequence number; older individuals have smaller values.
    pub birth: u64,
}

impl Individual {
    pub(crate) fn rank(&self, other: &Self) -> Ordering {
        self.fitness
            .f
            .total_cmp(&other.fitness.f)
            .then(self.birth.cmp(&other.birth))
    }
}

/// Evaluates genomes in a batch, in input order.
pub fn evaluate_batch(
    genomes: &[Genome],
    spec: &EncodingSpec,
    task: &dyn Task,
    config: &GaConfig,
    mode: Parallelism,
) -> Result<Vec<Fitness>> {
    map_slice(genomes, mode, |g| evaluate(g, spec, task, config))
        .into_iter()
        .collect()
}

/// Draws `population_size` random genomes (all draws happen before any
/// evaluation), corrects and evaluates them, and returns them ranked.
pub fn init_population(
    spec: &EncodingSpec,
    task: &dyn Task,
    config: &GaConfig,
    rng: &mut dyn RandomSource,
) -> Result<Vec<Individual>> {
    init_population_with(spec, task, config, rng, Parallelism::default())
}

pub fn init_population_with(
    spec: &EncodingSpec,
    task: &dyn Task,
    config: &GaConfig,
    rng: &mut dyn RandomSource,
    mode: Parallelism,
) -> Result<Vec<Individual>> {
    let genomes: Vec<Genome> = (0..config.population_size)
        .map(|_| {
            let mut g = Genome::random(*spec, rng);
            g.correct_in_place();
            g
        })
        .collect();
    let fitness = evaluate_batch(&genomes, spec, task, config, mode)?;
    let mut population: Vec<Individual> = genomes
        .into_iter()
        .zip(fitness)
        .enumerate()
        .map(|(i, (genome, fitness))| Individual {
            genome,
            fitness,
            birth: i as u64,
        })
        .collect();
    population.sort_by(Individual::rank);
    Ok(population)
}

/// Stable sort by F (ties: older first), then drop the worst individuals
/// down to `population_size`. Up to three newcomers may be pending.
pub fn select_replace(mut population: Vec<Individual>, population_size: usize) -> Result<Vec<Individual>> {
    if population.len() < population_size || population.len() > population_size + 3 {
        return Err(FsmError::InvalidConfig(format!(
            "replacement expects {population_size} to {} individuals, got {}",
            population_size + 3,
            population.len()
        )));
    }
    evict_worst(&mut population, population_size);
    Ok(population)
}

/// Ranks the population in place and returns the evicted tail.
pub(crate) fn evict_worst(population: &mut Vec<Individual>, population_size: usize) -> Vec<Individual> {
    population.sort_by(Individual::rank);
    population.split_off(population_size.min(population.len()))
}
