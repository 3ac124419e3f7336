//! graph6 encoding.
//!
//! Layout: a size prefix `N(n)` followed by the upper triangle of the
//! adjacency matrix read column by column (`(0,1), (0,2), (1,2), (0,3), ...`),
//! packed six bits per byte, most significant bit first, each byte offset by 63.

use super::Graph;
use crate::error::{Error, Result};

const HEADER: &[u8] = b">>graph6<<";
const MAX_N: u64 = (1 << 36) - 1;

fn encode_size(n: u64, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let read = |chunk: &[u8]| chunk.iter().fold(0u64, |acc, &b| (acc << 6) | (b - 63) as u64);
    match bytes {
        [] => Err(Error::Graph6("empty input".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated 8-byte length prefix".into()));
            }
            let n = read(&rest[..6]);
            if n <= 258_047 {
                return Err(Error::Graph6("non-minimal length prefix".into()));
            }
            Ok((n as usize, &rest[6..]))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated 4-byte length prefix".into()));
            }
            let n = read(&rest[..3]);
            if n <= 62 {
                return Err(Error::Graph6("non-minimal length prefix".into()));
            }
            Ok((n as usize, &rest[3..]))
        }
        [b, rest @ ..] => Ok(((*b - 63) as usize, rest)),
    }
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n as u64 <= MAX_N, "graph too large for graph6");
    let mut out = Vec::new();
    encode_size(n as u64, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        let row = g.row(j);
        for i in 0..j {
            acc = (acc << 1) | row.contains(i) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 record. An optional `>>graph6<<` header and trailing
/// line terminator are accepted; anything else beyond the record is an error.
pub fn parse_graph6(text: &[u8]) -> Result<Graph> {
    let mut bytes = text.strip_prefix(HEADER).unwrap_or(text);
    while let [rest @ .., b'\n' | b'\r'] = bytes {
        bytes = rest;
    }
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Graph6(format!(
            "byte {} at offset {pos} is outside 63..=126",
            bytes[pos]
        )));
    }
    let (n, body) = decode_size(bytes)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if body.len() < nbytes {
        return Err(Error::Graph6(format!(
            "expected {nbytes} adjacency bytes, found {}",
            body.len()
        )));
    }
    if body.len() > nbytes {
        return Err(Error::Graph6(format!(
            "{} trailing bytes after adjacency data",
            body.len() - nbytes
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
            if k == nbits {
                break 'outer;
            }
        }
    }
    if nbits % 6 != 0 {
        let pad = 6 - nbits % 6;
        if (body[nbytes - 1] - 63) & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Graph::from_edges(n, edges)
}

pub fn parse_graph6_str(text: &str) -> Result<Graph> {
    parse_graph6(text.trim_end().as_bytes())
}

impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&write_graph6(self))
    }
}

impl<'de> serde::Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_graph6_str(&text).map_err(serde::de::Error::custom)
    }
}
