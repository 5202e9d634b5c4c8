use std::fmt::Write as _;

use super::{assemble, bin, ExportMeta};
use crate::error::{parse_err, FsmError, Result};
use crate::ram::RamImage;

const RESERVED: &[&str] = &[
    "always", "assign", "begin", "case", "default", "else", "end", "endcase", "endmodule",
    "if", "initial", "input", "module", "output", "posedge", "negedge", "reg", "wire",
    "logic", "parameter", "localparam",
];

fn check_module_name(name: &str) -> Result<()> {
    let mut chars = name.chars();
    let head_ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    if head_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&name)
    {
        Ok(())
    } else {
        Err(FsmError::InvalidModuleName(name.to_string()))
    }
}

/// Synchronous Verilog realization: a `T`-bit state register (rising edge,
/// synchronous reset to state 0) addresses a constant table together with
/// the input; the high word bits load the register and the low bits drive
/// the output combinationally.
pub fn export_hdl(ram: &RamImage, meta: &ExportMeta, module_name: &str) -> Result<String> {
    check_module_name(module_name)?;
    if meta.triggers + meta.input_bits != ram.address_bits()
        || meta.triggers + meta.output_bits != ram.data_bits()
    {
        return Err(FsmError::ShapeMismatch(
            "metadata does not describe this RAM image".into(),
        ));
    }
    let (a, d, t, x, y) = (
        ram.address_bits(),
        ram.data_bits(),
        meta.triggers,
        meta.input_bits,
        meta.output_bits,
    );
    let mut s = String::new();
    writeln!(s, "// fsm S={} T={t} x={x} y={y}", meta.states).unwrap();
    writeln!(
        s,
        "// RAM {} words x {d} bits: address = {{state, in}}, data = {{next, out}}",
        ram.words().len()
    )
    .unwrap();
    writeln!(s, "module {module_name} (").unwrap();
    s.push_str("    input  wire clk,\n    input  wire rst,\n");
    writeln!(s, "    input  wire [{}:0] in,", x - 1).unwrap();
    writeln!(s, "    output wire [{}:0] out", y - 1).unwrap();
    s.push_str(");\n\n");
    writeln!(s, "    reg  [{}:0] state;", t - 1).unwrap();
    writeln!(s, "    reg  [{}:0] word;", d - 1).unwrap();
    writeln!(s, "    wire [{}:0] addr = {{state, in}};", a - 1).unwrap();
    s.push_str("\n    always @(*) begin\n        case (addr)\n");
    for (addr, &w) in ram.words().iter().enumerate() {
        writeln!(
            s,
            "            {a}'b{}: word = {d}'b{};",
            bin(addr as u32, a),
            bin(w, d)
        )
        .unwrap();
    }
    writeln!(s, "            default: word = {d}'b{};", bin(0, d)).unwrap();
    s.push_str("        endcase\n    end\n\n");
    writeln!(s, "    assign out = word[{}:0];", y - 1).unwrap();
    s.push_str("\n    always @(posedge clk) begin\n        if (rst)\n");
    writeln!(s, "            state <= {t}'d0;").unwrap();
    s.push_str("        else\n");
    writeln!(s, "            state <= word[{}:{y}];", d - 1).unwrap();
    s.push_str("    end\n\nendmodule\n");
    Ok(s)
}

/// Recovers the RAM image from the case table of an [`export_hdl`] module.
pub fn parse_hdl(text: &str) -> Result<RamImage> {
    let mut shape: Option<(u32, u32)> = None;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        let Some((lhs, rhs)) = line.split_once(": word = ") else {
            continue;
        };
        if lhs == "default" {
            continue;
        }
        let (aw, addr) = split_literal(lhs).ok_or_else(|| parse_err(ln, "bad address literal"))?;
        let (dw, word) = split_literal(rhs.trim_end_matches(';'))
            .ok_or_else(|| parse_err(ln, "bad data literal"))?;
        match shape {
            None => shape = Some((aw, dw)),
            Some(s) if s != (aw, dw) => return Err(parse_err(ln, "inconsistent literal widths")),
            _ => {}
        }
        entries.push((addr as usize, word));
    }
    let (a, d) = shape.ok_or_else(|| parse_err(0, "no case table found"))?;
    assemble(a, d, entries).map_err(|m| parse_err(0, m))
}

fn split_literal(lit: &str) -> Option<(u32, u32)> {
    let (width, digits) = lit.split_once("'b")?;
    let width: u32 = width.parse().ok()?;
    if digits.len() != width as usize {
        return None;
    }
    Some((width, super::parse_bin(digits)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta() -> ExportMeta {
        ExportMeta {
            states: 4,
            triggers: 2,
            input_bits: 1,
            output_bits: 2,
            address_bits: 3,
            data_bits: 4,
        }
    }

    #[test]
    fn zero_image_has_zero_constants() {
        let ram = RamImage::new(3, 4, vec![0; 8]).unwrap();
        let text = export_hdl(&ram, &meta(), "zero_fsm").unwrap();
        let table: Vec<&str> = text.lines().filter(|l| l.contains(": word = ")).collect();
        assert_eq!(table.len(), 9);
        assert!(table.iter().all(|l| l.ends_with("4'b0000;")));
        assert!(text.starts_with("// fsm S=4 T=2 x=1 y=2\n"));
        assert_eq!(parse_hdl(&text).unwrap(), ram);
    }

    #[test]
    fn rejects_bad_module_names() {
        let ram = RamImage::new(3, 4, vec![0; 8]).unwrap();
        for bad in ["", "1abc", "has space", "module", "a-b"] {
            assert!(export_hdl(&ram, &meta(), bad).is_err(), "{bad:?}");
        }
        assert!(export_hdl(&ram, &meta(), "_ok_9").is_ok());
    }

    #[test]
    fn rejects_mismatched_meta() {
        let ram = RamImage::new(2, 4, vec![0; 4]).unwrap();
        assert!(export_hdl(&ram, &meta(), "m").is_err());
    }
}
