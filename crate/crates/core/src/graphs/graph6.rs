//! graph6 for `1 <= n <= 62` (single-byte size header only).
//!
//! The upper triangle is read column by column, `(1,2), (1,3), (2,3), (1,4), ...`,
//! six bits per byte, most significant bit first, each byte offset by 63.

use super::Graph;
use crate::error::{Error, Result};

const MAX_G6_VERTICES: usize = 62;

fn err(msg: impl Into<String>) -> Error {
    Error::Graph6(msg.into())
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let (&head, body) = bytes.split_first().ok_or_else(|| err("empty input"))?;
    if head == 126 {
        return Err(err("extended size headers (n > 62) are not supported"));
    }
    if !(63..=126).contains(&head) {
        return Err(err(format!("byte {head} at offset 0 is outside 63..=126")));
    }
    let n = (head - 63) as usize;
    if n == 0 {
        return Err(err("graphs need at least one vertex"));
    }
    let pairs = n * (n - 1) / 2;
    let want = pairs.div_ceil(6);
    if body.len() != want {
        return Err(err(format!(
            "expected {want} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for (offset, &byte) in body.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(err(format!("byte {byte} at offset {} is outside 63..=126", offset + 1)));
        }
        let value = byte - 63;
        for shift in (0..6).rev() {
            let bit = (value >> shift) & 1 == 1;
            if k < pairs {
                if bit {
                    let (a, b) = pair_at(k);
                    g.add_edge(a, b)?;
                }
            } else if bit {
                return Err(err("nonzero padding bits"));
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_G6_VERTICES {
        return Err(err(format!("n = {n} needs an extended size header")));
    }
    let pairs = n * (n - 1) / 2;
    let mut out = vec![(n + 63) as u8];
    for chunk in 0..pairs.div_ceil(6) {
        let mut value = 0u8;
        for j in 0..6 {
            let k = chunk * 6 + j;
            value <<= 1;
            if k < pairs {
                let (a, b) = pair_at(k);
                value |= g.has_edge(a, b) as u8;
            }
        }
        out.push(value + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

/// The `k`-th pair (0-based) in column order, as 1-based `(i, j)` with `i < j`.
pub(crate) fn pair_at(k: usize) -> (usize, usize) {
    // largest j with j(j-1)/2 <= k, in 0-based column terms
    let mut j = 1;
    while (j + 1) * j / 2 <= k {
        j += 1;
    }
    let i = k - j * (j - 1) / 2;
    (i + 1, j + 1)
}
