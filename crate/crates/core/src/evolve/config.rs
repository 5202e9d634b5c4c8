use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{FsmError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossoverKind {
    OnePoint,
    TwoPoint,
}

impl fmt::Display for CrossoverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossoverKind::OnePoint => "1pt",
            CrossoverKind::TwoPoint => "2pt",
        })
    }
}

impl FromStr for CrossoverKind {
    type Err = FsmError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1pt" | "one-point" => Ok(CrossoverKind::OnePoint),
            "2pt" | "two-point" => Ok(CrossoverKind::TwoPoint),
            other => Err(FsmError::InvalidConfig(format!("unknown crossover kind `{other}`"))),
        }
    }
}

/// Objective weights: `w1` on reachable states, `w2` on moves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Weights {
    pub w1: f64,
    pub w2: f64,
}

impl Default for Weights {
    fn default() -> Self {
        Self { w1: 1.0, w2: 0.01 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population_size: usize,
    pub max_generations: u64,
    pub crossover_probability: f64,
    pub mutation_probability: f64,
    pub crossover_kind: CrossoverKind,
    pub weights: Weights,
    /// Added to F once per unit of unfinished work.
    pub infeasibility_penalty: f64,
    /// Weight on the final distance to the next target (helicopter tie-break).
    pub distance_weight: f64,
    pub seed: u64,
    /// Stop only once a solved machine has at most this many reachable states.
    pub target: Option<u32>,
    /// Optional cap on task simulations, checked before each generation.
    pub max_evaluations: Option<u64>,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 1200,
            max_generations: 30_000,
            crossover_probability: 0.4,
            mutation_probability: 0.25,
            crossover_kind: CrossoverKind::TwoPoint,
            weights: Weights::default(),
            infeasibility_penalty: 1000.0,
            distance_weight: 1e-6,
            seed: 0,
            target: None,
            max_evaluations: None,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let prob = |p: f64| (0.0..=1.0).contains(&p);
        let fail = |msg: String| Err(FsmError::InvalidConfig(msg));
        if self.population_size < 4 {
            return fail(format!("population_size {} < 4", self.population_size));
        }
        if !prob(self.crossover_probability) || !prob(self.mutation_probability) {
            return fail("probabilities must lie in [0, 1]".into());
        }
        let w = self.weights;
        if !(w.w1 >= 0.0 && w.w2 >= 0.0 && w.w1.is_finite() && w.w2.is_finite()) {
            return fail("weights must be finite and non-negative".into());
        }
        if !(self.infeasibility_penalty > 0.0 && self.infeasibility_penalty.is_finite()) {
            return fail("infeasibility penalty must be positive".into());
        }
        if !(self.distance_weight >= 0.0 && self.distance_weight.is_finite()) {
            return fail("distance weight must be non-negative".into());
        }
        Ok(())
    }
}
