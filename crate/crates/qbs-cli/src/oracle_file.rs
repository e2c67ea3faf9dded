//! Oracle files: UTF-8 JSON of the form
//!
//! ```json
//! { "n": 2, "kind": "table",    "data": "04" }
//! { "n": 2, "kind": "minterms", "data": [2] }
//! { "n": 2, "kind": "expr",     "data": "x1 & ~x2" }
//! ```
//!
//! The table encoding packs `f` into a hex string: bit `j` of the decoded
//! byte stream, in little-endian bit order, is `f(j)`. Spare bits past
//! `2^n` must be zero.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use qbs_core::oracle::{parse_expression, print_expression, OracleBackend, OracleSpec};

use crate::error::{CliError, Result};

#[derive(Debug, Serialize, Deserialize)]
struct OracleFile {
    n: usize,
    kind: String,
    data: serde_json::Value,
}

/// Reads and validates an oracle file.
pub fn load_oracle(path: &Path) -> Result<OracleSpec> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: Some(path.to_path_buf()),
        source,
    })?;
    parse_oracle_json(&text)
}

/// Parses oracle JSON text into a spec.
pub fn parse_oracle_json(text: &str) -> Result<OracleSpec> {
    let file: OracleFile = serde_json::from_str(text)?;
    let n = file.n;
    match file.kind.as_str() {
        "table" => {
            let hex = file.data.as_str().ok_or_else(|| {
                CliError::Invalid("\"table\" oracle needs a hex string in \"data\"".into())
            })?;
            let table = decode_table_hex(hex, n)?;
            Ok(OracleSpec::from_table(n, table)?)
        }
        "minterms" => {
            let values = file.data.as_array().ok_or_else(|| {
                CliError::Invalid("\"minterms\" oracle needs an integer array in \"data\"".into())
            })?;
            let minterms = values
                .iter()
                .map(|v| {
                    v.as_u64().ok_or_else(|| {
                        CliError::Invalid(format!("minterm {v} is not a non-negative integer"))
                    })
                })
                .collect::<Result<Vec<u64>>>()?;
            Ok(OracleSpec::from_minterms(n, &minterms)?)
        }
        "expr" => {
            let text = file.data.as_str().ok_or_else(|| {
                CliError::Invalid("\"expr\" oracle needs an expression string in \"data\"".into())
            })?;
            let expr = parse_expression(text, n)?;
            Ok(OracleSpec::from_expr(n, expr)?)
        }
        other => Err(CliError::Invalid(format!(
            "unknown oracle kind \"{other}\" (expected table, minterms, or expr)"
        ))),
    }
}

/// Serializes a spec back to oracle JSON. Expression backends keep their
/// expression; everything else is written as a hex table (the file format
/// has no compiled-circuit kind).
pub fn oracle_to_json(spec: &OracleSpec) -> String {
    let file = match spec.backend() {
        OracleBackend::Expression(expr) => OracleFile {
            n: spec.n(),
            kind: "expr".into(),
            data: serde_json::Value::String(print_expression(expr)),
        },
        _ => OracleFile {
            n: spec.n(),
            kind: "table".into(),
            data: serde_json::Value::String(encode_table_hex(&spec.to_truth_table())),
        },
    };
    serde_json::to_string(&file).expect("oracle file serialization cannot fail")
}

/// Packs a truth table into lowercase hex, bit `j` of the byte stream
/// (little-endian bit order) holding `f(j)`.
pub fn encode_table_hex(table: &[bool]) -> String {
    let mut bytes = vec![0u8; table.len().div_ceil(8)];
    for (j, &bit) in table.iter().enumerate() {
        if bit {
            bytes[j / 8] |= 1 << (j % 8);
        }
    }
    let mut out = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Unpacks a hex table for `n` bits, rejecting wrong lengths and nonzero
/// spare bits.
pub fn decode_table_hex(hex: &str, n: usize) -> Result<Vec<bool>> {
    if n > 60 {
        return Err(CliError::Invalid(format!(
            "table oracle with n = {n} is unreasonably large"
        )));
    }
    let entries = 1usize << n;
    let expected_bytes = entries.div_ceil(8);
    if hex.len() != expected_bytes * 2 {
        return Err(CliError::Invalid(format!(
            "table hex must encode {expected_bytes} bytes ({} hex digits), got {}",
            expected_bytes * 2,
            hex.len()
        )));
    }
    let mut bytes = Vec::with_capacity(expected_bytes);
    let digits = hex.as_bytes();
    for pair in digits.chunks(2) {
        let hi = hex_digit(pair[0])?;
        let lo = hex_digit(pair[1])?;
        bytes.push(hi << 4 | lo);
    }
    let table: Vec<bool> = (0..entries)
        .map(|j| bytes[j / 8] >> (j % 8) & 1 == 1)
        .collect();
    for j in entries..expected_bytes * 8 {
        if bytes[j / 8] >> (j % 8) & 1 == 1 {
            return Err(CliError::Invalid(format!(
                "table hex sets bit {j} past the 2^{n} entries"
            )));
        }
    }
    Ok(table)
}

fn hex_digit(b: u8) -> Result<u8> {
    match b {
        b'0'..=b'9' => Ok(b - b'0'),
        b'a'..=b'f' => Ok(b - b'a' + 10),
        b'A'..=b'F' => Ok(b - b'A' + 10),
        _ => Err(CliError::Invalid(format!(
            "'{}' is not a hex digit",
            b as char
        ))),
    }
}
