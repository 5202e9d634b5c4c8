//! Text renderings of a [`RamImage`]: plain truth table, memory
//! initialization file, and a synchronous Verilog module. Each format has a
//! parser that recovers the image it was rendered from.

mod hdl;
mod mif;
mod truth_table;

use serde::{Deserialize, Serialize};

pub use hdl::{export_hdl, parse_hdl};
pub use mif::{export_mif, parse_mif};
pub use truth_table::{export_truth_table, parse_truth_table};

use crate::encoding::EncodingSpec;
use crate::error::Result;
use crate::machine::MealyMachine;
use crate::ram::{to_ram_image, RamImage};

/// Shape of the register/memory split behind a RAM image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportMeta {
    pub states: u32,
    pub triggers: u32,
    pub input_bits: u32,
    pub output_bits: u32,
    pub address_bits: u32,
    pub data_bits: u32,
}

impl From<&EncodingSpec> for ExportMeta {
    fn from(e: &EncodingSpec) -> Self {
        Self {
            states: e.states,
            triggers: e.triggers,
            input_bits: e.input_bits,
            output_bits: e.output_bits,
            address_bits: e.ram_address_bits,
            data_bits: e.ram_data_bits,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportBundle {
    pub truth_table_text: String,
    pub mif_text: String,
    pub hdl_text: String,
    pub metadata: ExportMeta,
}

impl ExportBundle {
    pub fn for_machine(machine: &MealyMachine, module_name: &str) -> Result<Self> {
        let spec = machine.spec();
        let ram = to_ram_image(machine, spec)?;
        let metadata = ExportMeta::from(spec);
        Ok(Self {
            truth_table_text: export_truth_table(&ram),
            mif_text: export_mif(&ram),
            hdl_text: export_hdl(&ram, &metadata, module_name)?,
            metadata,
        })
    }
}

pub(crate) fn bin(value: u32, width: u32) -> String {
    format!("{:0width$b}", value, width = width as usize)
}

pub(crate) fn parse_bin(text: &str) -> Option<u32> {
    if text.is_empty() || text.len() > 32 || !text.bytes().all(|b| b == b'0' || b == b'1') {
        return None;
    }
    u32::from_str_radix(text, 2).ok()
}

/// Collects `(address, word)` pairs into an image, requiring every address
/// exactly once.
pub(crate) fn assemble(
    address_bits: u32,
    data_bits: u32,
    entries: Vec<(usize, u32)>,
) -> std::result::Result<RamImage, String> {
    if address_bits == 0 || address_bits > 24 {
        return Err(format!("unsupported address width {address_bits}"));
    }
    let mut words = vec![None; 1 << address_bits];
    for (addr, word) in entries {
        let slot = words
            .get_mut(addr)
            .ok_or_else(|| format!("address {addr} out of range"))?;
        if slot.replace(word).is_some() {
            return Err(format!("address {addr} listed twice"));
        }
    }
    let words: Option<Vec<u32>> = words.into_iter().collect();
    let words = words.ok_or("not every address is listed")?;
    RamImage::new(address_bits, data_bits, words).map_err(|e| e.to_string())
}
