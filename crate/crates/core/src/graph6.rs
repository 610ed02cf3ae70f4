//! graph6 encoding.
//!
//! The order is one byte `n + 63` for `n <= 62`, otherwise `~` followed by
//! three bytes carrying `n` in 18 bits. The upper triangle follows in column
//! order `(0,1), (0,2), (1,2), (0,3), ..`, packed big-endian into 6-bit
//! groups, each offset by 63 and zero-padded at the end.

use crate::error::GraphError;
use crate::graph::{Graph, MAX_VERTICES};

const OFFSET: u8 = 63;
const HEADER: &[u8] = b">>graph6<<";

pub fn encode(g: &Graph) -> String {
    String::from_utf8(encode_bytes(g)).expect("graph6 is printable ASCII")
}

pub fn encode_bytes(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(4 + bits.div_ceil(6));
    push_order(&mut out, n);
    let rows = g.rows();
    let mut acc = 0u8;
    let mut filled = 0;
    for (j, &col) in rows.iter().enumerate().skip(1) {
        for i in 0..j {
            acc = (acc << 1) | ((col >> i) & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    out
}

fn push_order(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + OFFSET);
        out.push(((n >> 6) & 0x3f) as u8 + OFFSET);
        out.push((n & 0x3f) as u8 + OFFSET);
    }
}

/// Decodes one graph6 record. An optional `>>graph6<<` header and
/// surrounding ASCII whitespace are accepted.
pub fn decode(input: &[u8]) -> Result<Graph, GraphError> {
    let mut data = input.trim_ascii();
    if let Some(rest) = data.strip_prefix(HEADER) {
        data = rest;
    }
    if let Some(&b) = data.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Format(format!("byte {b:#04x} outside the printable range")));
    }
    let (n, body) = match data {
        [] => return Err(GraphError::Format("empty input".into())),
        [126, 126, ..] => return Err(GraphError::Format("order too large".into())),
        [126, a, b, c, rest @ ..] => {
            let n = (((a - OFFSET) as usize) << 12) | (((b - OFFSET) as usize) << 6) | (c - OFFSET) as usize;
            if n <= 62 {
                return Err(GraphError::Format(format!("non-canonical long form for n={n}")));
            }
            (n, rest)
        }
        [126, ..] => return Err(GraphError::Format("truncated order field".into())),
        [first, rest @ ..] => ((first - OFFSET) as usize, rest),
    };
    if n > MAX_VERTICES {
        return Err(GraphError::Capacity { requested: n });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(GraphError::Format(format!(
            "expected {expected} data bytes for n={n}, found {}",
            body.len()
        )));
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - OFFSET;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    if bits % 6 != 0 {
        let last = body[expected - 1] - OFFSET;
        if last & ((1u8 << (6 - bits % 6)) - 1) != 0 {
            return Err(GraphError::Format("nonzero padding bits".into()));
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

pub fn decode_str(s: &str) -> Result<Graph, GraphError> {
    decode(s.as_bytes())
}
