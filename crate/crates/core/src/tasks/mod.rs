//! Benchmark environments that score a Mealy machine.

pub mod helicopter;
pub mod santafe;

use crate::encoding::{make_encoding, EncodingSpec};
use crate::error::{FsmError, Result};
use crate::machine::MealyMachine;

/// What a task reports back to the objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaskOutcome {
    /// The task was fully solved within its budget.
    pub solved: bool,
    /// Moves or steps consumed (the objective's `a2`).
    pub iterations: u32,
    /// Units of work left undone: uneaten food, unvisited markers.
    pub deficit: u32,
    /// Food eaten or markers visited.
    pub score: u32,
    /// Distance to the next unvisited target when the run ended, 0 if none.
    pub final_distance: f64,
}

/// An environment a machine can be simulated in. Implementations must be
/// pure: the same machine always yields the same outcome.
pub trait Task: Sync {
    fn name(&self) -> &'static str;
    fn input_bits(&self) -> u32;
    fn output_bits(&self) -> u32;
    fn action_count(&self) -> u32;
    fn run(&self, machine: &MealyMachine) -> Result<TaskOutcome>;

    /// Genome sizing for an `states`-state controller of this task.
    fn encoding(&self, states: u32) -> Result<EncodingSpec> {
        make_encoding(states, self.input_bits(), self.output_bits(), self.action_count())
    }

    fn check_shape(&self, machine: &MealyMachine) -> Result<()> {
        let e = machine.spec();
        if e.input_bits != self.input_bits()
            || e.output_bits != self.output_bits()
            || e.action_count != self.action_count()
        {
            return Err(FsmError::ShapeMismatch(format!(
                "{} needs x={} y={} A={}, machine has x={} y={} A={}",
                self.name(),
                self.input_bits(),
                self.output_bits(),
                self.action_count(),
                e.input_bits,
                e.output_bits,
                e.action_count
            )));
        }
        Ok(())
    }
}
