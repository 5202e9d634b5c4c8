//! Steady-state genetic algorithm over bit-string genomes: up to three new
//! individuals enter each generation and as many of the worst leave.

mod config;
mod fitness;
mod operators;
mod population;
mod run;

pub use config::{CrossoverKind, GaConfig, Weights};
pub use fitness::{evaluate, objective, Fitness};
pub use operators::{crossover, mutate, one_point_at, two_point_at};
pub use population::{evaluate_batch, init_population, init_population_with, select_replace, Individual};
pub use run::{run, run_observed, run_with, GenerationStats, StopReason, SynthesisResult, STATS_CSV_HEADER};
