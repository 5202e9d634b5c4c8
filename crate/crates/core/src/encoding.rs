//! Sizing of a synthesis problem: how many triggers, genes and RAM bits a
//! machine with `S` states, `x` input bits and `y` output bits needs.

use serde::{Deserialize, Serialize};

use crate::error::{FsmError, Result};

/// Derived sizing for one synthesis problem.
///
/// Construct through [`make_encoding`]; the fields are public for reading
/// but every instance produced by this crate satisfies the sizing identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EncodingSpec {
    pub states: u32,
    pub input_bits: u32,
    pub output_bits: u32,
    /// Number of valid output codes, `1..=2^output_bits`.
    pub action_count: u32,
    /// State register width, `max(1, ceil(log2 states))`.
    pub triggers: u32,
    /// `states * 2^input_bits`
    pub gene_count: usize,
    pub gene_bits: u32,
    pub genome_bits: usize,
    pub ram_address_bits: u32,
    pub ram_data_bits: u32,
}

/// Number of flip-flops needed to hold `states` distinct codes, never less than one.
pub fn trigger_count(states: u32) -> u32 {
    if states <= 2 {
        1
    } else {
        32 - (states - 1).leading_zeros()
    }
}

pub fn make_encoding(
    states: u32,
    input_bits: u32,
    output_bits: u32,
    action_count: u32,
) -> Result<EncodingSpec> {
    if states == 0 || input_bits == 0 || output_bits == 0 || action_count == 0 {
        return Err(FsmError::InvalidEncoding(format!(
            "all parameters must be positive (S={states}, x={input_bits}, y={output_bits}, A={action_count})"
        )));
    }
    // keep addresses and words comfortably inside u32/usize arithmetic
    if input_bits > 16 || output_bits > 16 {
        return Err(FsmError::InvalidEncoding(format!(
            "input_bits and output_bits are limited to 16 (x={input_bits}, y={output_bits})"
        )));
    }
    if states > 1 << 16 {
        return Err(FsmError::InvalidEncoding(format!(
            "at most 65536 states are supported (S={states})"
        )));
    }
    if u64::from(action_count) > 1u64 << output_bits {
        return Err(FsmError::InvalidEncoding(format!(
            "action_count {action_count} exceeds 2^{output_bits}"
        )));
    }
    let triggers = trigger_count(states);
    let gene_count = (states as usize) << input_bits;
    let gene_bits = triggers + output_bits;
    Ok(EncodingSpec {
        states,
        input_bits,
        output_bits,
        action_count,
        triggers,
        gene_count,
        gene_bits,
        genome_bits: gene_count * gene_bits as usize,
        ram_address_bits: triggers + input_bits,
        ram_data_bits: triggers + output_bits,
    })
}

impl EncodingSpec {
    /// Number of input symbols, `2^input_bits`.
    pub fn input_symbols(&self) -> usize {
        1 << self.input_bits
    }

    pub fn gene_index(&self, state: u32, input: u32) -> usize {
        ((state as usize) << self.input_bits) | input as usize
    }

    pub fn ram_words(&self) -> usize {
        1 << self.ram_address_bits
    }
}
