//! Combinational logic replaced by memory: address = state ++ input,
//! data = next state ++ output.

use serde::{Deserialize, Serialize};

use crate::encoding::EncodingSpec;
use crate::error::{FsmError, Result};
use crate::machine::MealyMachine;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RamImage {
    address_bits: u32,
    data_bits: u32,
    words: Vec<u32>,
}

impl RamImage {
    /// Builds an image from raw words; there must be exactly `2^address_bits`
    /// of them and each must fit in `data_bits`.
    pub fn new(address_bits: u32, data_bits: u32, words: Vec<u32>) -> Result<Self> {
        if address_bits == 0 || address_bits > 24 || data_bits == 0 || data_bits > 32 {
            return Err(FsmError::ShapeMismatch(format!(
                "unsupported RAM shape {address_bits} address bits x {data_bits} data bits"
            )));
        }
        if words.len() != 1 << address_bits {
            return Err(FsmError::ShapeMismatch(format!(
                "{} words given, {} expected",
                words.len(),
                1u64 << address_bits
            )));
        }
        if data_bits < 32 {
            if let Some((a, w)) = words.iter().enumerate().find(|(_, &w)| w >> data_bits != 0) {
                return Err(FsmError::OutOfRange(format!(
                    "word {w:#b} at address {a} wider than {data_bits} bits"
                )));
            }
        }
        Ok(Self {
            address_bits,
            data_bits,
            words,
        })
    }

    pub fn address_bits(&self) -> u32 {
        self.address_bits
    }

    pub fn data_bits(&self) -> u32 {
        self.data_bits
    }

    pub fn words(&self) -> &[u32] {
        &self.words
    }

    pub fn word(&self, address: usize) -> u32 {
        self.words[address]
    }
}

pub fn to_ram_image(machine: &MealyMachine, spec: &EncodingSpec) -> Result<RamImage> {
    if machine.spec() != spec {
        return Err(FsmError::ShapeMismatch(
            "machine was not built for this encoding".into(),
        ));
    }
    // state codes >= S stay zero
    let mut words = vec![0u32; spec.ram_words()];
    for state in 0..spec.states {
        for input in 0..spec.input_symbols() as u32 {
            let (next, action) = machine.lookup(state, input);
            let address = ((state as usize) << spec.input_bits) | input as usize;
            words[address] = (next << spec.output_bits) | action;
        }
    }
    RamImage::new(spec.ram_address_bits, spec.ram_data_bits, words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::make_encoding;
    use crate::genome::{correct, Genome};
    use crate::machine::decode;
    use crate::rng::SeededRng;

    #[test]
    fn four_state_image_shape() {
        let spec = make_encoding(4, 1, 2, 3).unwrap();
        let ram = to_ram_image(&MealyMachine::zeroed(spec), &spec).unwrap();
        assert_eq!(ram.words().len(), 8);
        assert_eq!(ram.data_bits(), 4);
        assert!(ram.words().iter().all(|&w| w == 0));
    }

    #[test]
    fn unreachable_state_codes_are_zero() {
        let spec = make_encoding(3, 1, 2, 3).unwrap();
        let m = MealyMachine::new(spec, vec![2; 6], vec![1; 6]).unwrap();
        let ram = to_ram_image(&m, &spec).unwrap();
        assert_eq!(&ram.words()[..6], &[0b1001; 6]);
        assert_eq!(&ram.words()[6..], &[0, 0]);
    }

    #[test]
    fn step_agrees_with_ram_lookup() {
        let spec = make_encoding(6, 2, 2, 4).unwrap();
        let mut rng = SeededRng::new(3);
        for _ in 0..20 {
            let m = decode(&correct(&Genome::random(spec, &mut rng), &spec).unwrap(), &spec).unwrap();
            let ram = to_ram_image(&m, &spec).unwrap();
            for s in 0..spec.states {
                for i in 0..4u32 {
                    let w = ram.word(((s as usize) << 2) | i as usize);
                    assert_eq!(m.step(s, i).unwrap(), (w >> 2, w & 0b11));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_word_count() {
        assert!(RamImage::new(3, 4, vec![0; 7]).is_err());
        assert!(RamImage::new(1, 2, vec![0, 4]).is_err());
    }
}
