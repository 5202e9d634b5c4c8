//! Bit-string chromosomes and the transition-correction pass.
//!
//! Gene `g = state * 2^x + input` occupies bits
//! `[g * gene_bits, (g + 1) * gene_bits)`: the next-state field (`T` bits)
//! followed by the output field (`y` bits), both most-significant bit first.

use serde::{Deserialize, Serialize};

use crate::encoding::EncodingSpec;
use crate::error::{FsmError, Result};
use crate::rng::RandomSource;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Genome {
    bits: Vec<bool>,
    spec: EncodingSpec,
}

impl Genome {
    pub fn from_bits(bits: Vec<bool>, spec: EncodingSpec) -> Result<Self> {
        if bits.len() != spec.genome_bits {
            return Err(FsmError::LengthMismatch {
                expected: spec.genome_bits,
                actual: bits.len(),
            });
        }
        Ok(Self { bits, spec })
    }

    /// Parses a string of `0`/`1` characters; whitespace and `_` are ignored.
    pub fn from_bit_str(text: &str, spec: EncodingSpec) -> Result<Self> {
        let mut bits = Vec::with_capacity(spec.genome_bits);
        for (i, c) in text.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() || c == '_' => {}
                other => {
                    return Err(FsmError::Parse {
                        line: 1,
                        msg: format!("unexpected character {other:?} at column {}", i + 1),
                    })
                }
            }
        }
        Self::from_bits(bits, spec)
    }

    pub fn zeros(spec: EncodingSpec) -> Self {
        Self {
            bits: vec![false; spec.genome_bits],
            spec,
        }
    }

    /// Uniformly random bits, not yet corrected.
    pub fn random(spec: EncodingSpec, rng: &mut dyn RandomSource) -> Self {
        let bits = (0..spec.genome_bits).map(|_| rng.bit()).collect();
        Self { bits, spec }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn spec(&self) -> &EncodingSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    fn read(&self, start: usize, width: u32) -> u32 {
        self.bits[start..start + width as usize]
            .iter()
            .fold(0, |acc, &b| (acc << 1) | u32::from(b))
    }

    fn write(&mut self, start: usize, width: u32, value: u32) {
        for k in 0..width as usize {
            let shift = width as usize - 1 - k;
            self.bits[start + k] = (value >> shift) & 1 == 1;
        }
    }

    fn gene_start(&self, gene: usize) -> usize {
        gene * self.spec.gene_bits as usize
    }

    pub fn next_field(&self, gene: usize) -> u32 {
        self.read(self.gene_start(gene), self.spec.triggers)
    }

    pub fn output_field(&self, gene: usize) -> u32 {
        self.read(
            self.gene_start(gene) + self.spec.triggers as usize,
            self.spec.output_bits,
        )
    }

    pub fn set_next_field(&mut self, gene: usize, value: u32) {
        let start = self.gene_start(gene);
        self.write(start, self.spec.triggers, value);
    }

    pub fn set_output_field(&mut self, gene: usize, value: u32) {
        let start = self.gene_start(gene) + self.spec.triggers as usize;
        self.write(start, self.spec.output_bits, value);
    }

    /// True iff every next-state field is `< S` and every output field is `< A`.
    pub fn is_corrected(&self) -> bool {
        self.first_invalid_field().is_none()
    }

    pub(crate) fn first_invalid_field(&self) -> Option<FsmError> {
        (0..self.spec.gene_count).find_map(|g| {
            let next = self.next_field(g);
            if next >= self.spec.states {
                return Some(FsmError::Uncorrected {
                    gene: g,
                    field: "next-state",
                    value: next,
                    limit: self.spec.states,
                });
            }
            let out = self.output_field(g);
            (out >= self.spec.action_count).then_some(FsmError::Uncorrected {
                gene: g,
                field: "output",
                value: out,
                limit: self.spec.action_count,
            })
        })
    }

    pub(crate) fn correct_in_place(&mut self) {
        let (states, actions) = (self.spec.states, self.spec.action_count);
        for g in 0..self.spec.gene_count {
            let next = self.next_field(g);
            if next >= states {
                self.set_next_field(g, next % states);
            }
            let out = self.output_field(g);
            if out >= actions {
                self.set_output_field(g, out % actions);
            }
        }
    }
}

/// Transition correction: reduces every out-of-range field modulo its limit
/// (`next mod S`, `output mod A`). Valid genes are left untouched.
pub fn correct(genome: &Genome, spec: &EncodingSpec) -> Result<Genome> {
    if genome.len() != spec.genome_bits || genome.spec != *spec {
        return Err(FsmError::LengthMismatch {
            expected: spec.genome_bits,
            actual: genome.len(),
        });
    }
    let mut fixed = genome.clone();
    fixed.correct_in_place();
    Ok(fixed)
}
