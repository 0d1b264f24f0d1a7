//! Hypergraph data model, `.hg` I/O, induced subhypergraphs, the proper-coloring
//! predicate and the closed neighborhood operator `N[X]`.
//!
//! Vertices are `0..n` in memory. The `.hg` format and every report use 1-based ids.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    edge_sets: Vec<VertexSet>,
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph from 0-based edges. Duplicate edges are dropped (first occurrence
    /// wins); empty edges, repeated vertices inside an edge and out-of-range ids are rejected.
    pub fn new<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut kept = Vec::new();
        let mut dropped = 0usize;
        for edge in edges {
            let mut e = edge.as_ref().to_vec();
            if e.is_empty() {
                return Err(Error::contract("the empty set is not allowed as an edge"));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::contract(format!("edge {e:?} repeats a vertex")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::contract(format!("vertex id {v} out of range 0..{n}")));
            }
            if seen.insert(e.clone()) {
                kept.push(e);
            } else {
                dropped += 1;
            }
        }
        if dropped > 0 {
            log::warn!("dropped {dropped} duplicate edge(s)");
        }
        Ok(Self::from_unique_edges(n, kept))
    }

    fn from_unique_edges(n: usize, edges: Vec<Vec<usize>>) -> Self {
        let edge_sets = edges.iter().map(|e| VertexSet::from_slice(n, e)).collect();
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        Hypergraph {
            n,
            edges,
            edge_sets,
            incidence,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_unique_edges(n, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted vertex lists, in first-occurrence order.
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub fn edge_set(&self, i: usize) -> &VertexSet {
        &self.edge_sets[i]
    }

    /// Indices of the edges containing `v`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn has_singleton_edge(&self) -> bool {
        self.edges.iter().any(|e| e.len() == 1)
    }

    pub fn is_uniform(&self, k: usize) -> bool {
        self.edges.iter().all(|e| e.len() == k)
    }

    pub fn is_graph(&self) -> bool {
        self.is_uniform(2)
    }

    pub fn to_hg_string(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// Parses the `.hg` text format: a `n m` header followed by `m` edge lines of 1-based ids.
/// `#` comments and blank lines are ignored anywhere.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header \"n m\"".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let parse_err = |message: &str| Error::Parse {
        line: header_line,
        message: message.to_string(),
    };
    if fields.len() != 2 {
        return Err(parse_err("malformed header, expected \"n m\""));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| parse_err("malformed header: vertex count is not a non-negative integer"))?;
    let m: usize = fields[1]
        .parse()
        .map_err(|_| parse_err("malformed header: edge count is not a non-negative integer"))?;

    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        if edges.len() == m {
            return Err(Error::Parse {
                line,
                message: format!("more than the {m} edge lines announced in the header"),
            });
        }
        let mut edge = Vec::new();
        for tok in body.split_whitespace() {
            let id: usize = tok.parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid vertex id {tok:?}"),
            })?;
            if id == 0 || id > n {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex id out of range: {id} not in 1..{n}"),
                });
            }
            if edge.contains(&(id - 1)) {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex id {id} repeated within an edge"),
                });
            }
            edge.push(id - 1);
        }
        edges.push(edge);
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line,
            message: format!("header announces {m} edges but {} were found", edges.len()),
        });
    }
    Hypergraph::new(n, edges)
}

/// Total assignment of colors `0..t` to the vertices (files use `1..=t`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    t: usize,
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(t: usize, colors: Vec<usize>) -> Result<Self> {
        if t == 0 && !colors.is_empty() {
            return Err(Error::contract("a coloring of a nonempty vertex set needs t >= 1"));
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= t) {
            return Err(Error::contract(format!("color {c} not below t = {t}")));
        }
        Ok(Coloring { t, colors })
    }

    pub fn from_one_based(t: usize, colors: &[usize]) -> Result<Self> {
        if colors.contains(&0) {
            return Err(Error::contract("colors are 1-based; found 0"));
        }
        Self::new(t, colors.iter().map(|c| c - 1).collect())
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.t];
        self.colors.iter().for_each(|&c| seen[c] = true);
        seen.into_iter().filter(|&b| b).count()
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.colors.iter().map(|c| c + 1).collect()
    }

    /// Applies `perm` (a permutation of `0..t`) to every color.
    pub fn permuted(&self, perm: &[usize]) -> Coloring {
        Coloring {
            t: self.t,
            colors: self.colors.iter().map(|&c| perm[c]).collect(),
        }
    }

    /// Relabels colors by order of first appearance, so the result is the canonical
    /// representative of its orbit under color permutations.
    pub fn canonicalized(&self) -> Coloring {
        let mut map = vec![usize::MAX; self.t];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c] == usize::MAX {
                    map[c] = next;
                    next += 1;
                }
                map[c]
            })
            .collect();
        Coloring { t: self.t, colors }
    }

    pub fn to_file(&self) -> ColoringFile {
        ColoringFile {
            t: self.t,
            colors: self.to_one_based(),
        }
    }
}

/// JSON shape `{"t": int, "colors": [int; n]}` with 1-based colors.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ColoringFile {
    pub t: usize,
    pub colors: Vec<usize>,
}

impl ColoringFile {
    pub fn into_coloring(self) -> Result<Coloring> {
        Coloring::from_one_based(self.t, &self.colors)
    }
}

pub fn parse_coloring(json: &str) -> Result<Coloring> {
    let file: ColoringFile = serde_json::from_str(json).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    file.into_coloring()
}

/// `H[X]` with its vertices renumbered `0..|X|`; `index_map[i]` is the original id of vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub hypergraph: Hypergraph,
    pub index_map: Vec<usize>,
}

pub fn induced(h: &Hypergraph, x: &VertexSet) -> Induced {
    let index_map: Vec<usize> = x.iter().filter(|&v| v < h.n).collect();
    let mut new_id = vec![usize::MAX; h.n];
    for (i, &v) in index_map.iter().enumerate() {
        new_id[v] = i;
    }
    let edges = h
        .edges
        .iter()
        .zip(&h.edge_sets)
        .filter(|(_, s)| s.is_subset(x))
        .map(|(e, _)| e.iter().map(|&v| new_id[v]).collect::<Vec<_>>())
        .collect();
    Induced {
        hypergraph: Hypergraph::from_unique_edges(index_map.len(), edges),
        index_map,
    }
}

pub fn is_proper(h: &Hypergraph, c: &Coloring) -> Result<bool> {
    if c.len() != h.n {
        return Err(Error::contract(format!(
            "coloring covers {} vertices, hypergraph has {}",
            c.len(),
            h.n
        )));
    }
    Ok(h.edges.iter().all(|e| {
        let first = c.colors[e[0]];
        e.iter().any(|&v| c.colors[v] != first)
    }))
}

/// `N[X] = X ∪ { v : some edge e has e \ X = {v} }`.
pub fn neighborhood_closure(h: &Hypergraph, x: &VertexSet) -> VertexSet {
    let mut out = x.clone();
    for e in &h.edges {
        let mut outside = e.iter().filter(|&&v| !x.contains(v));
        if let (Some(v), None) = (outside.next(), outside.next()) {
            out.insert(*v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5_pairs_text() -> String {
        let mut s = String::from("5 10\n");
        for i in 1..=5 {
            for j in i + 1..=5 {
                s.push_str(&format!("{i} {j}\n"));
            }
        }
        s
    }

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, [[0, 1], [1, 2], [0, 2]]).unwrap()
    }

    #[test]
    fn parses_complete_pairs() {
        let h = parse_hypergraph(&k5_pairs_text()).unwrap();
        assert_eq!(h.vertex_count(), 5);
        assert_eq!(h.edge_count(), 10);
        assert_eq!(h.edge(0), &[0, 1]);
    }

    #[test]
    fn duplicate_edges_are_merged() {
        let h = parse_hypergraph("3 3\n1 2\n# again\n2 1\n\n2 3\n").unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.edges(), &[vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn out_of_range_vertex_is_rejected_with_line() {
        let err = parse_hypergraph("5 1\n0 3\n").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("vertex id out of range"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_hypergraph("2 1\n1 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_hypergraph(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_hypergraph("5\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_hypergraph("x 1\n1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_hypergraph("3 2\n1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_hypergraph("3 1\n1 2\n2 3\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_hypergraph("3 1\n1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn hg_round_trip() {
        let h = parse_hypergraph("4 2\n1 2 3\n4\n").unwrap();
        assert_eq!(parse_hypergraph(&h.to_hg_string()).unwrap(), h);
    }

    #[test]
    fn empty_edge_rejected_by_constructor() {
        let empty: [Vec<usize>; 1] = [vec![]];
        assert!(Hypergraph::new(3, empty).is_err());
    }

    #[test]
    fn induced_examples() {
        let h = parse_hypergraph(&k5_pairs_text()).unwrap();
        let sub = induced(&h, &VertexSet::from_slice(5, &[0, 1, 2]));
        assert_eq!(sub.hypergraph.vertex_count(), 3);
        assert_eq!(sub.hypergraph.edge_count(), 3);
        assert_eq!(sub.index_map, vec![0, 1, 2]);

        let none = induced(&h, &VertexSet::new(5));
        assert_eq!(none.hypergraph.vertex_count(), 0);
        assert_eq!(none.hypergraph.edge_count(), 0);

        let all = induced(&h, &VertexSet::full(5));
        assert_eq!(all.hypergraph, h);
    }

    #[test]
    fn properness_examples() {
        let tri = triangle();
        assert!(!is_proper(&tri, &Coloring::new(1, vec![0, 0, 0]).unwrap()).unwrap());
        let e = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        assert!(is_proper(&e, &Coloring::new(2, vec![0, 0, 1]).unwrap()).unwrap());
        let single = Hypergraph::new(2, [vec![0], vec![0, 1]]).unwrap();
        for colors in [[0, 1], [1, 0], [0, 0]] {
            assert!(!is_proper(&single, &Coloring::new(2, colors.to_vec()).unwrap()).unwrap());
        }
        assert!(is_proper(&tri, &Coloring::new(2, vec![0, 1]).unwrap()).is_err());
    }

    #[test]
    fn closure_examples() {
        let e = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        let c = neighborhood_closure(&e, &VertexSet::from_slice(3, &[0, 1]));
        assert!(c.contains(2));

        let tri = triangle();
        assert!(neighborhood_closure(&tri, &VertexSet::new(3)).is_empty());
        assert_eq!(neighborhood_closure(&tri, &VertexSet::from_slice(3, &[0])).len(), 3);
    }

    #[test]
    fn coloring_file_is_one_based() {
        let c = parse_coloring(r#"{"t": 3, "colors": [1, 3, 2]}"#).unwrap();
        assert_eq!(c.colors(), &[0, 2, 1]);
        assert_eq!(c.to_file().colors, vec![1, 3, 2]);
        assert!(parse_coloring(r#"{"t": 2, "colors": [0, 1]}"#).is_err());
        assert!(parse_coloring(r#"{"t": 2, "colors": [3]}"#).is_err());
    }

    #[test]
    fn canonical_relabeling() {
        let c = Coloring::new(3, vec![2, 2, 0, 1, 0]).unwrap();
        assert_eq!(c.canonicalized().colors(), &[0, 0, 1, 2, 1]);
        assert_eq!(c.colors_used(), 3);
    }
}
