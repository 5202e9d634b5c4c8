//! Mealy machine phenotype, genome decoding/encoding, and the `.fsm`
//! interchange text format.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::encoding::{make_encoding, EncodingSpec};
use crate::error::{parse_err, FsmError, Result};
use crate::genome::Genome;

/// Transition and output tables indexed by `state * 2^x + input`.
/// The initial state is always 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MealyMachine {
    spec: EncodingSpec,
    next: Vec<u32>,
    out: Vec<u32>,
}

impl MealyMachine {
    pub fn new(spec: EncodingSpec, next: Vec<u32>, out: Vec<u32>) -> Result<Self> {
        if next.len() != spec.gene_count || out.len() != spec.gene_count {
            return Err(FsmError::ShapeMismatch(format!(
                "tables must have {} entries (next has {}, out has {})",
                spec.gene_count,
                next.len(),
                out.len()
            )));
        }
        if let Some(&bad) = next.iter().find(|&&n| n >= spec.states) {
            return Err(FsmError::OutOfRange(format!(
                "next state {bad} >= {}",
                spec.states
            )));
        }
        if let Some(&bad) = out.iter().find(|&&a| a >= spec.action_count) {
            return Err(FsmError::OutOfRange(format!(
                "action {bad} >= {}",
                spec.action_count
            )));
        }
        Ok(Self { spec, next, out })
    }

    /// Every transition returns to state 0 emitting action 0.
    pub fn zeroed(spec: EncodingSpec) -> Self {
        Self {
            spec,
            next: vec![0; spec.gene_count],
            out: vec![0; spec.gene_count],
        }
    }

    pub fn spec(&self) -> &EncodingSpec {
        &self.spec
    }

    pub fn states(&self) -> u32 {
        self.spec.states
    }

    pub fn input_bits(&self) -> u32 {
        self.spec.input_bits
    }

    pub fn action_count(&self) -> u32 {
        self.spec.action_count
    }

    pub fn next_table(&self) -> &[u32] {
        &self.next
    }

    pub fn out_table(&self) -> &[u32] {
        &self.out
    }

    /// One synchronous lookup: `(next[state, input], out[state, input])`.
    pub fn step(&self, state: u32, input: u32) -> Result<(u32, u32)> {
        if state >= self.spec.states {
            return Err(FsmError::OutOfRange(format!(
                "state {state} >= {}",
                self.spec.states
            )));
        }
        if input as usize >= self.spec.input_symbols() {
            return Err(FsmError::OutOfRange(format!(
                "input {input} >= {}",
                self.spec.input_symbols()
            )));
        }
        let g = self.spec.gene_index(state, input);
        Ok((self.next[g], self.out[g]))
    }

    /// Unchecked variant of [`step`](Self::step) for simulation inner loops.
    #[inline]
    pub(crate) fn lookup(&self, state: u32, input: u32) -> (u32, u32) {
        let g = ((state as usize) << self.spec.input_bits) | input as usize;
        (self.next[g], self.out[g])
    }

    /// Number of states reachable from state 0 over any input sequence.
    pub fn reachable_states(&self) -> u32 {
        let symbols = self.spec.input_symbols();
        let mut seen = vec![false; self.spec.states as usize];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        let mut count = 1;
        while let Some(s) = queue.pop_front() {
            let base = (s as usize) * symbols;
            for &n in &self.next[base..base + symbols] {
                if !seen[n as usize] {
                    seen[n as usize] = true;
                    count += 1;
                    queue.push_back(n);
                }
            }
        }
        count
    }

    /// Renders the `.fsm` interchange format.
    pub fn to_fsm_text(&self) -> String {
        let e = &self.spec;
        let mut s = format!(
            "fsm {} {} {} {}\n",
            e.states, e.input_bits, e.output_bits, e.action_count
        );
        for state in 0..e.states {
            for input in 0..e.input_symbols() as u32 {
                let g = e.gene_index(state, input);
                writeln!(s, "{state} {input} {} {}", self.next[g], self.out[g]).unwrap();
            }
        }
        s
    }

    /// Parses the `.fsm` interchange format. Blank lines and `#` comments
    /// are skipped; every (state, input) pair must appear exactly once in
    /// gene order.
    pub fn from_fsm_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != "fsm" {
            return Err(parse_err(hline, "expected header `fsm S x y A`"));
        }
        let nums = parse_u32s(&fields[1..], hline)?;
        let spec = make_encoding(nums[0], nums[1], nums[2], nums[3])?;

        let mut next = Vec::with_capacity(spec.gene_count);
        let mut out = Vec::with_capacity(spec.gene_count);
        for g in 0..spec.gene_count {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(hline + g + 1, "missing transition line"))?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(parse_err(ln, "expected `state input next action`"));
            }
            let v = parse_u32s(&fields, ln)?;
            let want_state = (g >> spec.input_bits) as u32;
            let want_input = (g & (spec.input_symbols() - 1)) as u32;
            if v[0] != want_state || v[1] != want_input {
                return Err(parse_err(
                    ln,
                    format!("expected state {want_state} input {want_input} in gene order"),
                ));
            }
            next.push(v[2]);
            out.push(v[3]);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing content after transition table"));
        }
        Self::new(spec, next, out)
    }
}

fn parse_u32s(fields: &[&str], line: usize) -> Result<Vec<u32>> {
    fields
        .iter()
        .map(|f| {
            f.parse::<u32>()
                .map_err(|_| parse_err(line, format!("`{f}` is not a non-negative integer")))
        })
        .collect()
}

/// Unpacks a corrected genome into transition/output tables.
pub fn decode(genome: &Genome, spec: &EncodingSpec) -> Result<MealyMachine> {
    if genome.spec() != spec || genome.len() != spec.genome_bits {
        return Err(FsmError::LengthMismatch {
            expected: spec.genome_bits,
            actual: genome.len(),
        });
    }
    if let Some(err) = genome.first_invalid_field() {
        return Err(err);
    }
    let next = (0..spec.gene_count).map(|g| genome.next_field(g)).collect();
    let out = (0..spec.gene_count).map(|g| genome.output_field(g)).collect();
    Ok(MealyMachine {
        spec: *spec,
        next,
        out,
    })
}

/// Packs a machine back into its genome; the exact inverse of [`decode`].
pub fn encode(machine: &MealyMachine, spec: &EncodingSpec) -> Result<Genome> {
    if machine.spec != *spec {
        return Err(FsmError::ShapeMismatch(format!(
            "machine has S={} x={} y={} A={}, encoding has S={} x={} y={} A={}",
            machine.spec.states,
            machine.spec.input_bits,
            machine.spec.output_bits,
            machine.spec.action_count,
            spec.states,
            spec.input_bits,
            spec.output_bits,
            spec.action_count
        )));
    }
    let mut genome = Genome::zeros(*spec);
    for g in 0..spec.gene_count {
        genome.set_next_field(g, machine.next[g]);
        genome.set_output_field(g, machine.out[g]);
    }
    Ok(genome)
}
