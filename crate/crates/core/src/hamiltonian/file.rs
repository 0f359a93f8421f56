//! Plain-text Hamiltonian files.
//!
//! ```text
//! # LiH, 12 qubits
//! -7.49 IIIIIIIIIIII
//! 0.17  ZIIIIIIIIIII
//! ```
//!
//! `#` starts a comment line, blank lines are ignored, and each data line is
//! `<coefficient> <word>` with the coefficient in decimal or scientific
//! notation. All words must have the same length.

use std::fs;
use std::path::Path;

use super::{PauliSum, PauliTerm};
use crate::{Error, Result};

pub fn parse_pauli_file(path: impl AsRef<Path>) -> Result<PauliSum> {
    let text = fs::read_to_string(path)?;
    parse_pauli_str(&text)
}

pub fn parse_pauli_str(text: &str) -> Result<PauliSum> {
    let mut terms = Vec::new();
    let mut width: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [coeff, word] = toks.as_slice() else {
            return Err(perr(format!(
                "expected `<coefficient> <word>`, got `{line}`"
            )));
        };
        let c: f64 = coeff
            .parse()
            .map_err(|_| perr(format!("bad coefficient `{coeff}`")))?;
        if !c.is_finite() {
            return Err(perr(format!("non-finite coefficient `{coeff}`")));
        }
        if let Some(bad) = word.chars().find(|ch| !matches!(ch, 'I' | 'X' | 'Y' | 'Z')) {
            return Err(perr(format!("invalid Pauli letter `{bad}` in `{word}`")));
        }
        match width {
            None => width = Some(word.len()),
            Some(w) if w != word.len() => {
                return Err(Error::invalid(format!(
                    "line {line_no}: word `{word}` has length {}, earlier words have length {w}",
                    word.len()
                )))
            }
            Some(_) => {}
        }
        terms.push(PauliTerm::new(c, word)?);
    }
    let n = width.ok_or_else(|| Error::invalid("Hamiltonian file contains no terms"))?;
    PauliSum::new(n, terms)
}
