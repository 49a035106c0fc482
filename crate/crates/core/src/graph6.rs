//! The graph6 text encoding for undirected graphs.
//!
//! A graph on n vertices is one line of printable ASCII (bytes 63..=126):
//! a size header, then the upper triangle of the adjacency matrix read
//! column by column ((0,1), (0,2), (1,2), (0,3), ...), packed six bits per
//! byte, zero-padded, each byte offset by 63. Sizes up to 62 use a single
//! header byte `n + 63`; sizes 63..=258047 use `~` followed by three bytes
//! holding n in 18 bits.

use crate::graph::PolytopeGraph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("graph too large for supported graph6 range: {0} vertices")]
    TooLarge(usize),
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid graph6 byte {byte:#x} at position {pos}")]
    InvalidByte { byte: u8, pos: usize },
    #[error("truncated graph6 string: expected {expected} payload bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("trailing data after graph6 payload")]
    TrailingData,
}

const OFFSET: u8 = 63;

/// Encodes a graph as a graph6 string.
pub fn encode(g: &PolytopeGraph) -> Result<String, Graph6Error> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    match n {
        0..=62 => out.push(n as u8 + OFFSET),
        63..=258047 => {
            out.push(b'~');
            out.push(((n >> 12) & 0x3f) as u8 + OFFSET);
            out.push(((n >> 6) & 0x3f) as u8 + OFFSET);
            out.push((n & 0x3f) as u8 + OFFSET);
        }
        _ => return Err(Graph6Error::TooLarge(n)),
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n as u32 {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Decodes a graph6 string.
pub fn decode(s: &str) -> Result<PolytopeGraph, Graph6Error> {
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (pos, &byte) in bytes.iter().enumerate() {
        if !(OFFSET..=126).contains(&byte) {
            return Err(Graph6Error::InvalidByte { byte, pos });
        }
    }
    let (n, payload) = if bytes[0] == b'~' {
        if bytes.len() < 4 {
            return Err(Graph6Error::Truncated {
                expected: 4,
                got: bytes.len(),
            });
        }
        if bytes[1] == b'~' {
            // 36-bit sizes are valid graph6 but far beyond this crate's use.
            return Err(Graph6Error::TooLarge(usize::MAX));
        }
        let n = ((bytes[1] - OFFSET) as usize) << 12
            | ((bytes[2] - OFFSET) as usize) << 6
            | (bytes[3] - OFFSET) as usize;
        (n, &bytes[4..])
    } else {
        ((bytes[0] - OFFSET) as usize, &bytes[1..])
    };
    let bit_count = n * (n - 1) / 2;
    let expected = bit_count.div_ceil(6);
    match payload.len() {
        l if l < expected => {
            return Err(Graph6Error::Truncated {
                expected,
                got: payload.len(),
            })
        }
        l if l > expected => return Err(Graph6Error::TrailingData),
        _ => {}
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    for j in 1..n as u32 {
        for i in 0..j {
            let byte = payload[bit / 6] - OFFSET;
            if byte >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    // Padding bits must be zero for a canonical string.
    while !bit.is_multiple_of(6) {
        let byte = payload[bit / 6] - OFFSET;
        if byte >> (5 - bit % 6) & 1 == 1 {
            return Err(Graph6Error::InvalidByte {
                byte: payload[bit / 6] + OFFSET,
                pos: bit / 6,
            });
        }
        bit += 1;
    }
    Ok(PolytopeGraph::from_edges(n, &edges))
}
