//! On-disk formats for tables and diagnostic outputs.
//!
//! - `hex`: 16 lines of 16 uppercase two-digit values separated by single
//!   spaces, trailing newline (the layout of a printed 16×16 table);
//! - `bin`: exactly 256 octets in index order, no header;
//! - `json`: a JSON array of 256 integers.
//!
//! Reading autodetects the format: a file of exactly 256 bytes can only be
//! `bin` (the textual forms need at least 513 bytes), otherwise the text is
//! parsed as JSON when it starts with `[` and as a hex grid otherwise.
//! Parsing is lenient about whitespace layout; writing is canonical, so a
//! write→read round trip is value-exact in every format.

use std::fmt::Write as _;

use thiserror::Error;

use crate::chaos::{BifurcationRecord, LyapunovEstimate, LyapunovMethod};
use crate::table::{RawTable, TABLE_SIZE};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("table must hold exactly 256 values, found {0}")]
    WrongCount(usize),
    #[error("bad hex token {token:?}")]
    BadHexToken { token: String },
    #[error("table file is not valid UTF-8 and not 256 bytes long (got {0} bytes)")]
    NotTextNotBin(usize),
    #[error("bad JSON table: {0}")]
    BadJson(String),
    #[error("value {0} is out of the octet range 0..=255")]
    ValueOutOfRange(i64),
}

/// Table serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Hex,
    Bin,
    Json,
}

impl TableFormat {
    pub fn name(&self) -> &'static str {
        match self {
            TableFormat::Hex => "hex",
            TableFormat::Bin => "bin",
            TableFormat::Json => "json",
        }
    }
}

/// Serializes a table in the given format. Textual formats return UTF-8
/// bytes ending in a newline.
pub fn write_table(table: &RawTable, format: TableFormat) -> Vec<u8> {
    match format {
        TableFormat::Hex => {
            let mut out = String::with_capacity(16 * 48);
            for row in table.values().chunks(16) {
                for (i, v) in row.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    let _ = write!(out, "{v:02X}");
                }
                out.push('\n');
            }
            out.into_bytes()
        }
        TableFormat::Bin => table.values().to_vec(),
        TableFormat::Json => {
            let mut out = serde_json::to_string(&table.values().as_slice())
                .expect("octet array serialization is infallible");
            out.push('\n');
            out.into_bytes()
        }
    }
}

/// Reads a table, autodetecting the format (see module docs).
pub fn read_table(bytes: &[u8]) -> Result<RawTable, FormatError> {
    if bytes.len() == TABLE_SIZE {
        // Textual forms need ≥ 513 bytes, so this can only be bin.
        return RawTable::from_slice(bytes).map_err(|_| FormatError::WrongCount(bytes.len()));
    }
    let text = std::str::from_utf8(bytes).map_err(|_| FormatError::NotTextNotBin(bytes.len()))?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        parse_json_table(text)
    } else {
        parse_hex_table(text)
    }
}

/// Parses whitespace-separated two-digit hex octets (case-insensitive, any
/// line layout); exactly 256 values required.
pub fn parse_hex_table(text: &str) -> Result<RawTable, FormatError> {
    let mut values = Vec::with_capacity(TABLE_SIZE);
    for token in text.split_whitespace() {
        if token.len() > 2 {
            return Err(FormatError::BadHexToken {
                token: token.to_string(),
            });
        }
        let v = u8::from_str_radix(token, 16).map_err(|_| FormatError::BadHexToken {
            token: token.to_string(),
        })?;
        values.push(v);
    }
    if values.len() != TABLE_SIZE {
        return Err(FormatError::WrongCount(values.len()));
    }
    Ok(RawTable::from_slice(&values).expect("length checked"))
}

/// Parses a JSON array of 256 integers in 0..=255.
pub fn parse_json_table(text: &str) -> Result<RawTable, FormatError> {
    let numbers: Vec<i64> =
        serde_json::from_str(text).map_err(|e| FormatError::BadJson(e.to_string()))?;
    if numbers.len() != TABLE_SIZE {
        return Err(FormatError::WrongCount(numbers.len()));
    }
    let mut values = Vec::with_capacity(TABLE_SIZE);
    for n in numbers {
        let v = u8::try_from(n).map_err(|_| FormatError::ValueOutOfRange(n))?;
        values.push(v);
    }
    Ok(RawTable::from_slice(&values).expect("length checked"))
}

/// Bifurcation samples as CSV with an `a,x` header row.
pub fn bifurcation_csv(records: &[BifurcationRecord]) -> String {
    let mut out = String::with_capacity(records.len() * 24 + 8);
    out.push_str("a,x\n");
    for r in records {
        let _ = writeln!(out, "{},{}", r.a, r.x);
    }
    out
}

/// Lyapunov estimate as a single structured JSON record.
pub fn lyapunov_json(estimate: &LyapunovEstimate) -> String {
    let method = match estimate.method {
        LyapunovMethod::TwoTrajectory => "two_trajectory",
    };
    format!(
        "{{\"value\":{},\"iterations\":{},\"method\":\"{method}\"}}\n",
        estimate.value, estimate.iterations
    )
}
