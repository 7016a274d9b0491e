//! graph6 short form: one size byte `n + 63`, then the upper triangle in
//! column-major order (`(0,1), (0,2), (1,2), (0,3), ...`) packed six bits per
//! byte, most significant first, zero padded, each byte offset by 63.

use super::{Graph, GraphError};

/// Largest vertex count expressible in the short form.
pub const GRAPH6_MAX_VERTICES: usize = 62;

fn err(offset: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Graph6 {
        offset,
        reason: reason.into(),
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(err(0, "empty input"));
    };
    if !(63..=126).contains(&first) {
        return Err(err(0, format!("byte {first:#04x} outside 63..=126")));
    }
    if first == 126 {
        return Err(err(0, "long-form size header is not supported"));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(err(0, "graphs must have at least one vertex"));
    }
    let nbits = n * (n - 1) / 2;
    let expected = 1 + nbits.div_ceil(6);
    if let Some((k, &b)) = bytes
        .iter()
        .enumerate()
        .find(|(_, &b)| !(63..=126).contains(&b))
    {
        return Err(err(k, format!("byte {b:#04x} outside 63..=126")));
    }
    if bytes.len() != expected {
        let offset = bytes.len().min(expected);
        return Err(err(
            offset,
            format!(
                "expected {expected} bytes for {n} vertices, found {}",
                bytes.len()
            ),
        ));
    }

    let mut g = Graph::new(n)?;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[1 + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    // Padding bits must be zero for the encoding to be canonical.
    if !nbits.is_multiple_of(6) {
        let last = bytes[expected - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(err(expected - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

pub fn encode_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n > GRAPH6_MAX_VERTICES {
        return Err(GraphError::UnsupportedSize {
            n,
            min: 1,
            max: GRAPH6_MAX_VERTICES,
        });
    }
    let nbits = n * (n - 1) / 2;
    let mut out = Vec::with_capacity(1 + nbits.div_ceil(6));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k.is_multiple_of(6) {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if !k.is_multiple_of(6) {
        out.push((acc << (6 - k % 6)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent encoder: builds the bit string first, then chunks it.
    fn reference_encode(g: &Graph) -> String {
        let n = g.n();
        let mut bits = Vec::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(g.has_edge(i, j));
            }
        }
        while bits.len() % 6 != 0 {
            bits.push(false);
        }
        let mut s = String::new();
        s.push((n as u8 + 63) as char);
        for chunk in bits.chunks(6) {
            let v = chunk.iter().fold(0u8, |a, &b| a * 2 + b as u8);
            s.push((v + 63) as char);
        }
        s
    }

    #[test]
    fn tiny_graphs() {
        let k1 = parse_graph6("@").unwrap();
        assert_eq!(k1.n(), 1);
        assert_eq!(k1.edge_count(), 0);
        assert_eq!(encode_graph6(&k1).unwrap(), "@");

        let p3 = parse_graph6("Bg").unwrap();
        assert_eq!(p3, Graph::path(3).unwrap());
        assert_eq!(encode_graph6(&Graph::path(3).unwrap()).unwrap(), "Bg");
    }

    #[test]
    fn yu_oh_graph_decodes() {
        let g = parse_graph6("L?AB?vOLDPHa`o").unwrap();
        assert_eq!(g.n(), 13);
        assert_eq!(g.edge_count(), 24);
    }

    #[test]
    fn fixture_round_trip() {
        let s = "L?`D@bCUCbDgWc";
        assert_eq!(encode_graph6(&parse_graph6(s).unwrap()).unwrap(), s);
    }

    #[test]
    fn errors_name_offsets() {
        assert!(matches!(
            parse_graph6(""),
            Err(GraphError::Graph6 { offset: 0, .. })
        ));
        // bad character inside the body
        assert!(matches!(
            parse_graph6("B g"),
            Err(GraphError::Graph6 { offset: 1, .. })
        ));
        // too short for 13 vertices
        assert!(matches!(
            parse_graph6("L?AB"),
            Err(GraphError::Graph6 { offset: 4, .. })
        ));
        // too long
        assert!(matches!(
            parse_graph6("Bgg"),
            Err(GraphError::Graph6 { offset: 2, .. })
        ));
        assert!(parse_graph6("~?@A").is_err());
        assert!(parse_graph6("?").is_err());
        // P3 with a padding bit set
        assert!(parse_graph6("Bh").is_err());
    }

    #[test]
    fn trailing_newline_is_accepted() {
        assert_eq!(parse_graph6("Bg\n").unwrap(), Graph::path(3).unwrap());
    }

    #[test]
    fn oversized_graph_rejected_by_encoder() {
        let g = Graph::new(63).unwrap();
        assert!(encode_graph6(&g).is_err());
    }

    #[test]
    fn round_trip_every_graph_up_to_seven_vertices() {
        for n in 1..=7usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..(1 << pairs.len()) {
                let mut g = Graph::new(n).unwrap();
                for (k, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        g.add_edge(u, v);
                    }
                }
                let s = encode_graph6(&g).unwrap();
                assert_eq!(s, reference_encode(&g));
                assert_eq!(parse_graph6(&s).unwrap(), g);
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip_random(n in 1usize..=62, seed in any::<u64>()) {
            let mut g = Graph::new(n).unwrap();
            let mut state = seed | 1;
            for j in 1..n {
                for i in 0..j {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state & 3 == 0 {
                        g.add_edge(i, j);
                    }
                }
            }
            let s = encode_graph6(&g).unwrap();
            prop_assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }
}
