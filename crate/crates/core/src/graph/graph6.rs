//! The graph6 text format.
//!
//! A graph is the vertex count `N(n)` followed by the upper triangle of the
//! adjacency matrix in column order `(0,1),(0,2),(1,2),(0,3),...`, packed
//! big-endian into 6-bit groups, zero padded, each group offset by 63.
//! `N(n)` is one byte `n + 63` for `n <= 62`, otherwise `~` and three 6-bit
//! groups.

use super::{Graph, N_MAX};
use crate::error::{Error, Result};

const BIAS: u8 = 63;

fn parse_err<T>(offset: usize, reason: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        offset,
        reason: reason.into(),
    })
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::with_capacity(4 + n * n / 12);
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + BIAS);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Decodes one graph6 line (a trailing `\n` or `\r\n` is ignored).
pub fn decode(text: &str) -> Result<Graph> {
    let line = text
        .strip_suffix('\n')
        .map(|s| s.strip_suffix('\r').unwrap_or(s))
        .unwrap_or(text);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return parse_err(0, "empty input");
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return parse_err(i, format!("byte {b:#04x} outside [63,126]"));
        }
    }
    let (n, body_start) = if bytes[0] != b'~' {
        ((bytes[0] - BIAS) as usize, 1)
    } else {
        if bytes.len() >= 2 && bytes[1] == b'~' {
            return parse_err(1, format!("8-byte size header: order exceeds N_MAX = {N_MAX}"));
        }
        if bytes.len() < 4 {
            return parse_err(bytes.len(), "truncated size header");
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        if n <= 62 {
            return parse_err(0, format!("non-canonical size header for n = {n}"));
        }
        (n, 4)
    };
    if n > N_MAX {
        return parse_err(0, format!("order {n} exceeds N_MAX = {N_MAX}"));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let body_len = nbits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() < body_len {
        return parse_err(
            bytes.len(),
            format!("body too short: expected {body_len} bytes for n = {n}, found {}", body.len()),
        );
    }
    if body.len() > body_len {
        return parse_err(body_start + body_len, "trailing garbage after graph body");
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if byte & (0x20 >> (k % 6)) != 0 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[body_len - 1] - BIAS;
        let pad_mask = (1u8 << (6 - nbits % 6)) - 1;
        if last & pad_mask != 0 {
            return parse_err(body_start + body_len - 1, "nonzero padding bits");
        }
    }
    Ok(g)
}

/// Decodes a file with one graph per line; blank lines are skipped.
/// Errors carry the 1-based line number.
pub fn decode_lines(text: &str) -> std::result::Result<Vec<Graph>, (usize, Error)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| decode(l).map_err(|e| (i + 1, e)))
        .collect()
}

/// Encodes graphs one per line, LF-terminated.
pub fn encode_lines<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> String {
    let mut s = String::new();
    for g in graphs {
        s.push_str(&encode(g));
        s.push('\n');
    }
    s
}
