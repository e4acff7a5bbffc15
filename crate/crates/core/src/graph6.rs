//! graph6 codec, restricted to the single-byte size form (n <= 62).

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

const BIAS: u8 = 63;

fn parse_err(offset: usize, reason: &'static str) -> Error {
    Error::Parse { offset, reason }
}

/// Number of 6-bit data bytes following the size byte.
fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Upper-triangle bits, column by column: (0,1), (0,2), (1,2), (0,3), ...
pub(crate) fn upper_triangle(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j)))
}

pub fn encode(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(BIAS + n as u8);
    let rows = g.rows();
    let mut acc = 0u8;
    let mut filled = 0;
    for (i, j) in upper_triangle(n) {
        acc = acc << 1 | (rows[i] >> j & 1) as u8;
        filled += 1;
        if filled == 6 {
            out.push(acc + BIAS);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    out
}

pub fn encode_string(g: &Graph) -> String {
    String::from_utf8(encode(g)).expect("graph6 output is ASCII")
}

/// Decodes one graph6 line. A single trailing `\n` or `\r\n` is accepted.
pub fn decode(bytes: &[u8]) -> Result<Graph> {
    let bytes = bytes
        .strip_suffix(b"\n")
        .map(|b| b.strip_suffix(b"\r").unwrap_or(b))
        .unwrap_or(bytes);
    let (&size, body) = bytes.split_first().ok_or(parse_err(0, "empty input"))?;
    if !(BIAS..=126).contains(&size) {
        return Err(parse_err(0, "size byte outside 63..126"));
    }
    if size == 126 {
        return Err(parse_err(0, "multi-byte size form not supported"));
    }
    let n = (size - BIAS) as usize;
    if n == 0 || n > MAX_ORDER {
        return Err(parse_err(0, "vertex count outside 1..62"));
    }
    let expected = body_len(n);
    for (k, &b) in body.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(parse_err(k + 1, "byte outside 63..126"));
        }
    }
    if body.len() < expected {
        return Err(parse_err(bytes.len(), "truncated edge data"));
    }
    if body.len() > expected {
        return Err(parse_err(1 + expected, "trailing garbage"));
    }

    let mut rows = vec![0u64; n];
    let mut bit = 0;
    for (i, j) in upper_triangle(n) {
        let byte = body[bit / 6] - BIAS;
        if byte >> (5 - bit % 6) & 1 == 1 {
            rows[i] |= 1 << j;
            rows[j] |= 1 << i;
        }
        bit += 1;
    }
    if bit % 6 != 0 {
        let last = body[expected - 1] - BIAS;
        let pad = 6 - bit % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(expected, "nonzero padding bits"));
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

pub fn decode_str(s: &str) -> Result<Graph> {
    decode(s.as_bytes())
}
