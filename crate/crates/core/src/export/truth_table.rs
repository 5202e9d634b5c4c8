use std::fmt::Write as _;

use super::{assemble, bin, parse_bin};
use crate::error::{parse_err, Result};
use crate::ram::RamImage;

/// `address[A-1:0] data[D-1:0]` header, then one `addr data` line per
/// address in ascending order, binary MSB-first.
pub fn export_truth_table(ram: &RamImage) -> String {
    let (a, d) = (ram.address_bits(), ram.data_bits());
    let mut s = format!("address[{}:0] data[{}:0]\n", a - 1, d - 1);
    for (addr, &w) in ram.words().iter().enumerate() {
        writeln!(s, "{} {}", bin(addr as u32, a), bin(w, d)).unwrap();
    }
    s
}

pub fn parse_truth_table(text: &str) -> Result<RamImage> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty truth table"))?;
    let (a, d) = parse_header(header).ok_or_else(|| parse_err(1, "bad header"))?;
    let mut entries = Vec::new();
    for (i, line) in lines {
        let mut parts = line.split_whitespace();
        let (Some(addr), Some(word), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(parse_err(i + 1, "expected `address data`"));
        };
        if addr.len() != a as usize || word.len() != d as usize {
            return Err(parse_err(i + 1, "field width does not match header"));
        }
        let (Some(addr), Some(word)) = (parse_bin(addr), parse_bin(word)) else {
            return Err(parse_err(i + 1, "non-binary field"));
        };
        entries.push((addr as usize, word));
    }
    assemble(a, d, entries).map_err(|m| parse_err(0, m))
}

fn parse_header(line: &str) -> Option<(u32, u32)> {
    let mut parts = line.split_whitespace();
    let a = parts.next()?.strip_prefix("address[")?.strip_suffix(":0]")?;
    let d = parts.next()?.strip_prefix("data[")?.strip_suffix(":0]")?;
    if parts.next().is_some() {
        return None;
    }
    Some((a.parse::<u32>().ok()? + 1, d.parse::<u32>().ok()? + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_by_four_layout() {
        let ram = RamImage::new(3, 4, vec![0, 1, 2, 3, 4, 5, 6, 15]).unwrap();
        let text = export_truth_table(&ram);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "address[2:0] data[3:0]");
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[1], "000 0000");
        assert_eq!(lines[8], "111 1111");
        assert_eq!(parse_truth_table(&text).unwrap(), ram);
    }

    #[test]
    fn zero_image_has_zero_data_column() {
        let ram = RamImage::new(2, 3, vec![0; 4]).unwrap();
        let text = export_truth_table(&ram);
        assert!(text.lines().skip(1).all(|l| l.ends_with(" 000")));
    }

    #[test]
    fn rejects_missing_address() {
        let text = "address[1:0] data[0:0]\n00 1\n01 0\n10 1\n";
        assert!(parse_truth_table(text).is_err());
    }
}
