//! graph6 and JSON graph formats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// JSON form of a graph. Edges are pairs of vertex ids; when `ids` is absent the
/// ids are `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ids: Option<Vec<u32>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(a, b)| [a.0, b.0]).collect(),
            ids: Some(g.vertices().iter().map(|v| v.0).collect()),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let ids: Vec<u32> = match j.ids {
            Some(ids) if ids.len() != j.n => {
                return Err(Error::Precondition(format!("n = {} but {} ids given", j.n, ids.len())))
            }
            Some(ids) => ids,
            None => (0..j.n as u32).collect(),
        };
        Graph::new(ids.into_iter().map(VertexId), j.edges.into_iter().map(|[a, b]| (VertexId(a), VertexId(b))))
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Graph, D::Error> {
        GraphJson::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph json")
}

pub fn from_json(s: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(s)?;
    j.try_into()
}

/// graph6 encoding. Vertex order is id order; ids themselves are not stored.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.adj_idx(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("ascii")
}

/// Parses graph6 (optionally with the `>>graph6<<` header). Ids are `0..n`.
pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6("byte outside 63..=126".into()));
    }
    let (n, rest) = match bytes.first() {
        None => return Err(Error::Graph6("empty input".into())),
        Some(126) => {
            if bytes.len() < 4 || bytes[1] == 126 {
                return Err(Error::Graph6("unsupported size header".into()));
            }
            let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, &bytes[4..])
        }
        Some(&b) => ((b - 63) as usize, &bytes[1..]),
    };
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() != needed {
        return Err(Error::Graph6(format!("expected {needed} data bytes, found {}", rest.len())));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i as u32, j as u32));
            }
            k += 1;
        }
    }
    Graph::from_edges(n as u32, &edges)
}

/// Reads either format: JSON if the text starts with `{`, graph6 otherwise.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_graph6(text)
    }
}
