//! Genetic synthesis of Mealy machines encoded as RAM-ready bit strings.
//!
//! A machine with `S` states, `x` input bits and `y` output bits is stored as
//! `S * 2^x` genes, one per (state, input) pair, each holding the next-state
//! code followed by the output code. The same table, read as a memory whose
//! address is `state ++ input`, is the hardware realization exported by
//! [`export`].

pub mod encoding;
pub mod error;
pub mod evolve;
pub mod export;
pub mod genome;
pub mod machine;
pub mod par;
pub mod ram;
pub mod rng;
pub mod tasks;

pub use encoding::{make_encoding, EncodingSpec};
pub use error::{FsmError, Result};
pub use genome::{correct, Genome};
pub use machine::{decode, encode, MealyMachine};
pub use ram::{to_ram_image, RamImage};

/// The hand-specified 4-state, 1-input, 2-output reference machine.
pub const REFERENCE4_FSM: &str = include_str!("../data/reference4.fsm");
