use std::fmt::Write as _;

use super::{assemble, bin, parse_bin};
use crate::error::{parse_err, Result};
use crate::ram::RamImage;

pub fn export_mif(ram: &RamImage) -> String {
    let (a, d) = (ram.address_bits(), ram.data_bits());
    let mut s = String::new();
    writeln!(s, "DEPTH = {};", ram.words().len()).unwrap();
    writeln!(s, "WIDTH = {d};").unwrap();
    s.push_str("ADDRESS_RADIX = BIN;\nDATA_RADIX = BIN;\nCONTENT\nBEGIN\n");
    for (addr, &w) in ram.words().iter().enumerate() {
        writeln!(s, "{} : {};", bin(addr as u32, a), bin(w, d)).unwrap();
    }
    s.push_str("END;\n");
    s
}

/// Reads back the subset of the memory-initialization format that
/// [`export_mif`] writes (binary radix, one address per entry).
pub fn parse_mif(text: &str) -> Result<RamImage> {
    let mut depth = None;
    let mut width = None;
    let mut in_content = false;
    let mut ended = false;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split("--").next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if ended {
            return Err(parse_err(ln, "content after END"));
        }
        if !in_content {
            if line == "CONTENT" {
                continue;
            }
            if line == "BEGIN" {
                in_content = true;
                continue;
            }
            let (key, value) = line
                .trim_end_matches(';')
                .split_once('=')
                .ok_or_else(|| parse_err(ln, "expected `KEY = VALUE;`"))?;
            let value = value.trim();
            match key.trim() {
                "DEPTH" => depth = Some(value.parse::<usize>().map_err(|_| parse_err(ln, "bad DEPTH"))?),
                "WIDTH" => width = Some(value.parse::<u32>().map_err(|_| parse_err(ln, "bad WIDTH"))?),
                "ADDRESS_RADIX" | "DATA_RADIX" if value == "BIN" => {}
                other => return Err(parse_err(ln, format!("unsupported setting `{other} = {value}`"))),
            }
            continue;
        }
        if line == "END;" {
            ended = true;
            continue;
        }
        let (addr, word) = line
            .trim_end_matches(';')
            .split_once(':')
            .ok_or_else(|| parse_err(ln, "expected `address : word;`"))?;
        let (Some(addr), Some(word)) = (parse_bin(addr.trim()), parse_bin(word.trim())) else {
            return Err(parse_err(ln, "non-binary entry"));
        };
        entries.push((addr as usize, word));
    }
    let depth = depth.ok_or_else(|| parse_err(0, "missing DEPTH"))?;
    let width = width.ok_or_else(|| parse_err(0, "missing WIDTH"))?;
    if !ended {
        return Err(parse_err(0, "missing END"));
    }
    if !depth.is_power_of_two() {
        return Err(parse_err(0, "DEPTH must be a power of two"));
    }
    assemble(depth.trailing_zeros(), width, entries).map_err(|m| parse_err(0, m))
}
