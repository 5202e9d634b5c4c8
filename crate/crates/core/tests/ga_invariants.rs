use fsmga::evolve::{run_observed, GaConfig, Individual};
use fsmga::par::Parallelism;
use fsmga::rng::SeededRng;
use fsmga::tasks::helicopter::HeliTask;
use fsmga::tasks::santafe::SantaFeTask;
use fsmga::tasks::Task;

fn check_invariants(task: &dyn Task, states: u32, config: &GaConfig) {
    let spec = task.encoding(states).unwrap();
    let mut best_seen = f64::INFINITY;
    let mut generations = Vec::new();
    let mut observe = |g: u64, pop: &[Individual]| {
        assert_eq!(pop.len(), config.population_size, "generation {g}");
        assert!(pop.iter().all(|i| i.genome.is_corrected()), "generation {g}");
        assert!(pop.windows(2).all(|w| w[0].fitness.f <= w[1].fitness.f), "ranked at {g}");
        assert!(pop[0].fitness.f <= best_seen, "best F rose at generation {g}");
        best_seen = pop[0].fitness.f;
        generations.push(g);
    };
    let r = run_observed(&spec, task, config, &mut SeededRng::new(config.seed), Parallelism::Sequential, &mut observe)
        .unwrap();
    assert_eq!(generations, (0..=r.generations_run).collect::<Vec<_>>());
    assert_eq!(r.best_fitness.f, best_seen);
    assert!(r.stats.windows(2).all(|w| w[1].best_f <= w[0].best_f));
}

#[test]
fn santafe_population_invariants_hold() {
    let config = GaConfig { population_size: 100, max_generations: 400, seed: 5, ..GaConfig::default() };
    check_invariants(&SantaFeTask::default(), 6, &config);
}

#[test]
fn heli_population_invariants_hold() {
    let config = GaConfig { population_size: 60, max_generations: 200, seed: 2, ..GaConfig::default() };
    check_invariants(&HeliTask::default_for(6).unwrap(), 4, &config);
}

#[test]
fn one_point_crossover_runs_hold_invariants() {
    let config = GaConfig {
        population_size: 40,
        max_generations: 200,
        crossover_kind: fsmga::evolve::CrossoverKind::OnePoint,
        crossover_probability: 1.0,
        mutation_probability: 1.0,
        seed: 9,
        ..GaConfig::default()
    };
    check_invariants(&SantaFeTask::default(), 3, &config);
}
