use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::Result;

/// On-disk JSON form: `{"n": …, "edges": [[u, v], …], "labels": [...]}`
/// with edges sorted and `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl Graph {
    pub fn to_json_value(&self) -> GraphJson {
        GraphJson {
            n: self.n(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: self
                .labels()
                .map(|ls| ls.iter().map(ToString::to_string).collect()),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(&self.to_json_value())?;
        s.push('\n');
        Ok(s)
    }

    /// Reads the JSON form back. Labels are not reconstructed.
    pub fn from_json(s: &str) -> Result<Graph> {
        let gj: GraphJson = serde_json::from_str(s)?;
        Graph::from_edges(gj.n, gj.edges.into_iter().map(|[u, v]| (u, v)))
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph {name} {{").unwrap();
        for v in 0..self.n() {
            match self.label(v) {
                Some(l) => writeln!(out, "  {v} [label=\"{l}\"];").unwrap(),
                None => writeln!(out, "  {v};").unwrap(),
            }
        }
        for (u, v) in self.edges() {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn json_round_trip(n in 1usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12), 0..30)) {
            let edges: Vec<(usize, usize)> = raw
                .into_iter()
                .filter(|&(u, v)| u < n && v < n && u != v)
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let back = Graph::from_json(&g.to_json().unwrap()).unwrap();
            prop_assert_eq!(back, g);
        }
    }

    #[test]
    fn dot_shape() {
        let dot = Graph::path(3).to_dot("p3");
        assert_eq!(
            dot,
            "graph p3 {\n  0;\n  1;\n  2;\n  0 -- 1;\n  1 -- 2;\n}\n"
        );
    }
}
