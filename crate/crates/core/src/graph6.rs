//! graph6 encoding of undirected simple graphs.
//!
//! Layout: a vertex-count header followed by the upper triangle of the
//! adjacency matrix in column order `(0,1), (0,2), (1,2), (0,3), ...`, packed
//! six bits per byte (most significant first), zero-padded, each byte offset
//! by 63. Counts up to 62 take one byte; up to 258047 take `~` plus three
//! bytes; larger counts take `~~` plus six bytes.

use crate::error::{Error, Result};
use crate::graph::Graph;

const BIAS: u8 = 63;
const SHORT_MAX: usize = 62;
const MEDIUM_MAX: usize = 258_047;
const LONG_MAX: usize = (1 << 36) - 1;

/// Encodes `g` as graph6 bytes (no header line, no trailing newline).
pub fn encode(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_size(n, &mut out);

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    out
}

/// Convenience wrapper returning the encoding as a `String`.
pub fn encode_string(g: &Graph) -> String {
    String::from_utf8(encode(g)).expect("graph6 output is ASCII")
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    assert!(n <= LONG_MAX, "graph6 cannot encode {n} vertices");
    if n <= SHORT_MAX {
        out.push(n as u8 + BIAS);
    } else if n <= MEDIUM_MAX {
        out.push(b'~');
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 0x3f) as u8 + BIAS));
    } else {
        out.extend(*b"~~");
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 0x3f) as u8 + BIAS));
    }
}

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Decodes one graph6 record. A single trailing `\n` (or `\r\n`) is
/// tolerated; the optional `>>graph6<<` file header is not.
pub fn decode(bytes: &[u8]) -> Result<Graph> {
    let bytes = bytes
        .strip_suffix(b"\n")
        .map(|b| b.strip_suffix(b"\r").unwrap_or(b))
        .unwrap_or(bytes);

    if let Some(offset) = bytes.iter().position(|b| !(BIAS..=126).contains(b)) {
        return Err(parse_err(
            offset,
            format!(
                "byte 0x{:02x} outside the printable graph6 range",
                bytes[offset]
            ),
        ));
    }

    let (n, body_start) = decode_size(bytes)?;
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() != expected {
        return Err(parse_err(
            body_start + body.len().min(expected),
            format!(
                "expected {expected} data bytes for {n} vertices, found {}",
                body.len()
            ),
        ));
    }

    let mut adj = vec![Vec::new(); n];
    let mut bit = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            if bit == pairs {
                break 'outer;
            }
            let byte = body[bit / 6] - BIAS;
            if byte >> (5 - bit % 6) & 1 == 1 {
                adj[i].push(j);
                adj[j].push(i);
            }
            bit += 1;
        }
    }
    if pairs % 6 != 0 {
        let last = body[expected - 1] - BIAS;
        let padding = 6 - pairs % 6;
        if last & ((1 << padding) - 1) != 0 {
            return Err(parse_err(
                body_start + expected - 1,
                "nonzero padding bits in final byte",
            ));
        }
    }
    // Column-order traversal already appends every neighbour list in
    // increasing order.
    Ok(Graph::from_sorted_adjacency(adj))
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize)> {
    let value = |range: std::ops::Range<usize>| -> Result<usize> {
        if bytes.len() < range.end {
            return Err(parse_err(bytes.len(), "truncated vertex-count header"));
        }
        Ok(bytes[range]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - BIAS)))
    };
    match bytes {
        [] => Err(parse_err(0, "empty input")),
        [b'~', b'~', ..] => {
            let n = value(2..8)?;
            if n <= MEDIUM_MAX {
                return Err(parse_err(
                    2,
                    format!("non-minimal 8-byte header for n = {n}"),
                ));
            }
            Ok((n, 8))
        }
        [b'~', ..] => {
            let n = value(1..4)?;
            if n <= SHORT_MAX {
                return Err(parse_err(
                    1,
                    format!("non-minimal 4-byte header for n = {n}"),
                ));
            }
            Ok((n, 4))
        }
        [b, ..] => Ok((usize::from(b - BIAS), 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Expected strings produced by networkx.to_graph6_bytes.
    #[test]
    fn reference_encodings() {
        assert_eq!(encode_string(&Graph::complete(3)), "Bw");
        assert_eq!(encode_string(&Graph::path(3)), "Bg");
        assert_eq!(encode_string(&Graph::empty(1)), "@");
        assert_eq!(encode_string(&Graph::empty(0)), "?");
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_string(&g), "DQc");
        let g = Graph::from_edges(
            7,
            (0..7).map(|i| (i, (3 * i + 1) % 7)).filter(|(a, b)| a != b),
        )
        .unwrap();
        assert_eq!(encode_string(&g), "FoO_W");
    }

    #[test]
    fn extended_header_matches_reference() {
        let path = Graph::path(63);
        let s = encode_string(&path);
        assert!(s.starts_with("~??~hCGGC@?G?_@?@??_?G?@??C??G"));
        assert!(s.ends_with("_?????????G"));
        assert_eq!(decode(s.as_bytes()).unwrap(), path);

        let star = Graph::star(63);
        let s = encode_string(&star);
        assert!(s.starts_with("~?@?saCCA?_C?O?_?_?O?C??_?A??C"));
        assert_eq!(decode(s.as_bytes()).unwrap(), star);
    }

    #[test]
    fn size_headers_round_trip() {
        for n in [0, 1, 62, 63, 4096, MEDIUM_MAX, MEDIUM_MAX + 1, 1 << 30] {
            let mut header = Vec::new();
            encode_size(n, &mut header);
            let expected_len = match n {
                0..=SHORT_MAX => 1,
                63..=MEDIUM_MAX => 4,
                _ => 8,
            };
            assert_eq!(header.len(), expected_len);
            assert_eq!(decode_size(&header).unwrap(), (n, expected_len));
        }
    }

    #[test]
    fn trailing_newline_is_accepted() {
        assert_eq!(decode(b"Bw\n").unwrap(), Graph::complete(3));
        assert_eq!(decode(b"Bw\r\n").unwrap(), Graph::complete(3));
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        let offset = |s: &[u8]| match decode(s) {
            Err(Error::Graph6 { offset, .. }) => offset,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(offset(b""), 0);
        // 'x' = 120 is the final byte for K3 but with a padding bit set.
        assert_eq!(offset(b"Bx"), 1);
        assert_eq!(offset(b"B w"), 1);
        assert_eq!(offset(b"Bww"), 2);
        assert_eq!(offset(b"C"), 1);
        assert_eq!(offset(b"~??"), 3);
        assert_eq!(offset(b"~??A"), 1);
    }
}
