use serde::{Deserialize, Serialize};

use super::config::{GaConfig, Weights};
use crate::encoding::EncodingSpec;
use crate::error::Result;
use crate::genome::Genome;
use crate::machine::decode;
use crate::tasks::Task;

/// Weighted state/iteration objective, `w1 * a1 + w2 * a2`. Lower is better.
pub fn objective(a1: f64, a2: f64, weights: Weights) -> f64 {
    weights.w1 * a1 + weights.w2 * a2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fitness {
    pub feasible: bool,
    /// Reachable states of the decoded machine.
    pub a1: u32,
    /// Moves or steps consumed.
    pub a2: u32,
    pub deficit: u32,
    /// Food eaten or markers visited.
    pub score: u32,
    pub final_distance: f64,
    pub f: f64,
}

pub fn evaluate(genome: &Genome, spec: &EncodingSpec, task: &dyn Task, config: &GaConfig) -> Result<Fitness> {
    let machine = decode(genome, spec)?;
    let outcome = task.run(&machine)?;
    let a1 = machine.reachable_states();
    let a2 = outcome.iterations;
    let f = config.infeasibility_penalty * f64::from(outcome.deficit)
        + objective(f64::from(a1), f64::from(a2), config.weights)
        + config.distance_weight * outcome.final_distance;
    Ok(Fitness {
        feasible: outcome.solved,
        a1,
        a2,
        deficit: outcome.deficit,
        score: outcome.score,
        final_distance: outcome.final_distance,
        f,
    })
}
