use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::config::GaConfig;
use super::fitness::{evaluate, Fitness};
use super::operators::{crossover, mutate};
use super::population::{evict_worst, init_population_with, Individual};
use crate::encoding::EncodingSpec;
use crate::error::Result;
use crate::genome::Genome;
use crate::machine::{decode, MealyMachine};
use crate::par::Parallelism;
use crate::rng::RandomSource;
use crate::tasks::Task;

pub const STATS_CSV_HEADER: &str = "generation,best_f,mean_f,best_a1,best_a2,best_raw";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: u64,
    pub best_f: f64,
    pub mean_f: f64,
    pub best_a1: u32,
    pub best_a2: u32,
    pub best_raw: u32,
}

impl GenerationStats {
    fn of(generation: u64, population: &[Individual]) -> Self {
        let best = &population[0].fitness;
        let mean_f = population.iter().map(|i| i.fitness.f).sum::<f64>() / population.len() as f64;
        Self {
            generation,
            best_f: best.f,
            mean_f,
            best_a1: best.a1,
            best_a2: best.a2,
            best_raw: best.score,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.generation, self.best_f, self.mean_f, self.best_a1, self.best_a2, self.best_raw
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    Solved,
    GenerationLimit,
    EvaluationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisResult {
    pub best_genome: Genome,
    pub best_machine: MealyMachine,
    pub best_fitness: Fitness,
    pub generations_run: u64,
    /// Task simulations performed; clones inherit their parent's fitness.
    pub evaluations: u64,
    pub stop_reason: StopReason,
    pub stats: Vec<GenerationStats>,
}

impl SynthesisResult {
    pub fn stats_csv(&self) -> String {
        let mut s = String::with_capacity(48 * (self.stats.len() + 1));
        s.push_str(STATS_CSV_HEADER);
        s.push('\n');
        for row in &self.stats {
            writeln!(s, "{}", row.csv_row()).unwrap();
        }
        s
    }
}

fn meets_target(fitness: &Fitness, config: &GaConfig) -> bool {
    fitness.feasible && config.target.is_none_or(|t| fitness.a1 <= t)
}

/// Two-way tournament on a ranked population: the lower index wins.
fn tournament(population: &[Individual], rng: &mut dyn RandomSource) -> usize {
    let n = population.len() as u64;
    let i = rng.below(n) as usize;
    let j = rng.below(n) as usize;
    i.min(j)
}

/// Multiset of the genomes currently in the population.
#[derive(Default)]
struct Members(HashMap<Genome, u32>);

impl Members {
    fn contains(&self, g: &Genome) -> bool {
        self.0.contains_key(g)
    }

    fn add(&mut self, g: &Genome) {
        *self.0.entry(g.clone()).or_insert(0) += 1;
    }

    fn remove(&mut self, g: &Genome) {
        if let Some(n) = self.0.get_mut(g) {
            *n -= 1;
            if *n == 0 {
                self.0.remove(g);
            }
        }
    }
}

pub fn run(spec: &EncodingSpec, task: &dyn Task, config: &GaConfig, rng: &mut dyn RandomSource) -> Result<SynthesisResult> {
    run_with(spec, task, config, rng, Parallelism::default())
}

/// Runs the steady-state loop.
///
/// Each generation produces up to three offspring: two crossover children
/// (gated by `crossover_probability`) and one mutant (gated by
/// `mutation_probability`). An offspring whose genome is already present in
/// the population is discarded unevaluated, so a failed gate inserts nothing;
/// the replacement step then evicts as many worst individuals as were
/// inserted.
///
/// Random draws per generation, in order: two tournaments for the crossover
/// parents, the crossover gate, the cut points, one tournament for the
/// mutation parent, the mutation gate, the mutation fields.
pub fn run_with(
    spec: &EncodingSpec,
    task: &dyn Task,
    config: &GaConfig,
    rng: &mut dyn RandomSource,
    mode: Parallelism,
) -> Result<SynthesisResult> {
    run_observed(spec, task, config, rng, mode, &mut |_, _| {})
}

/// [`run_with`], calling `observe(generation, population)` on the ranked
/// population after initialization (generation 0) and after every
/// generation's replacement step.
pub fn run_observed(
    spec: &EncodingSpec,
    task: &dyn Task,
    config: &GaConfig,
    rng: &mut dyn RandomSource,
    mode: Parallelism,
    observe: &mut dyn FnMut(u64, &[Individual]),
) -> Result<SynthesisResult> {
    config.validate()?;
    let mut population = init_population_with(spec, task, config, rng, mode)?;
    let mut members = Members::default();
    for ind in &population {
        members.add(&ind.genome);
    }
    let mut evaluations = config.population_size as u64;
    let mut stats = vec![GenerationStats::of(0, &population)];
    let mut next_birth = config.population_size as u64;
    let mut generation = 0;
    observe(0, &population);

    let mut stop = population
        .iter()
        .any(|i| meets_target(&i.fitness, config))
        .then_some(StopReason::Solved);

    while stop.is_none() {
        if generation >= config.max_generations {
            stop = Some(StopReason::GenerationLimit);
            break;
        }
        if config.max_evaluations.is_some_and(|cap| evaluations + 3 > cap) {
            stop = Some(StopReason::EvaluationLimit);
            break;
        }
        generation += 1;

        let mut offspring = Vec::with_capacity(3);
        let a = tournament(&population, rng);
        let b = tournament(&population, rng);
        if rng.chance(config.crossover_probability) {
            let (c1, c2) = crossover(&population[a].genome, &population[b].genome, config.crossover_kind, rng)?;
            offspring.extend([c1, c2]);
        }
        let m = tournament(&population, rng);
        if rng.chance(config.mutation_probability) {
            offspring.push(mutate(&population[m].genome, spec, rng));
        }

        let before = population.len();
        for genome in offspring {
            if members.contains(&genome) {
                continue;
            }
            evaluations += 1;
            let fitness = evaluate(&genome, spec, task, config)?;
            if meets_target(&fitness, config) {
                stop = Some(StopReason::Solved);
            }
            members.add(&genome);
            population.push(Individual {
                genome,
                fitness,
                birth: next_birth,
            });
            next_birth += 1;
        }
        if population.len() > before {
            for gone in evict_worst(&mut population, config.population_size) {
                members.remove(&gone.genome);
            }
        }
        stats.push(GenerationStats::of(generation, &population));
        observe(generation, &population);
    }

    let best = population.swap_remove(0);
    Ok(SynthesisResult {
        best_machine: decode(&best.genome, spec)?,
        best_genome: best.genome,
        best_fitness: best.fitness,
        generations_run: generation,
        evaluations,
        stop_reason: stop.unwrap_or(StopReason::GenerationLimit),
        stats,
    })
}
