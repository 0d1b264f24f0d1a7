//! Kneser hypergraphs `KG^q(H)`: one vertex per edge of the base hypergraph, one edge per
//! q-set of pairwise disjoint base edges.

use crate::error::{Error, Result};
use crate::hypercore::Hypergraph;
use crate::vertex_set::VertexSet;

pub const DEFAULT_EDGE_CAP: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KneserStructure {
    base: Hypergraph,
    q: usize,
    kg: Hypergraph,
}

impl KneserStructure {
    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn kg(&self) -> &Hypergraph {
        &self.kg
    }

    /// Base edge (sorted, 0-based) represented by kg vertex `id`.
    pub fn base_edge(&self, id: usize) -> &[usize] {
        self.base.edge(id)
    }

    pub fn base_edge_set(&self, id: usize) -> &VertexSet {
        self.base.edge_set(id)
    }
}

/// All `C(n, k)` k-subsets of `0..n` in lexicographic order.
pub fn complete_ksubsets(n: usize, k: usize) -> Result<Hypergraph> {
    if k == 0 || k > n {
        return Err(Error::contract(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    let mut edges = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        edges.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    Hypergraph::new(n, edges)
}

pub fn build_kneser(base: &Hypergraph, q: usize) -> Result<KneserStructure> {
    build_kneser_capped(base, q, DEFAULT_EDGE_CAP)
}

/// Materializes every q-set of pairwise disjoint base edges. Fails with a resource error as
/// soon as more than `edge_cap` kg edges have been produced.
pub fn build_kneser_capped(base: &Hypergraph, q: usize, edge_cap: usize) -> Result<KneserStructure> {
    if q < 2 {
        return Err(Error::contract(format!("Kneser uniformity must be >= 2, got {q}")));
    }
    let m = base.edge_count();
    let mut kg_edges: Vec<Vec<usize>> = Vec::new();
    let mut chosen = Vec::with_capacity(q);
    let all: Vec<usize> = (0..m).collect();
    extend_disjoint(base, q, &all, &mut chosen, &mut kg_edges, edge_cap)?;
    let kg = Hypergraph::new(m, kg_edges)?;
    Ok(KneserStructure {
        base: base.clone(),
        q,
        kg,
    })
}

fn extend_disjoint(
    base: &Hypergraph,
    q: usize,
    candidates: &[usize],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    if chosen.len() == q {
        if out.len() == cap {
            return Err(Error::resource(format!(
                "Kneser hypergraph has more than {cap} edges (raise the edge cap)"
            )));
        }
        out.push(chosen.clone());
        return Ok(());
    }
    let need = q - chosen.len();
    for (pos, &e) in candidates.iter().enumerate() {
        if candidates.len() - pos < need {
            break;
        }
        let rest: Vec<usize> = candidates[pos + 1..]
            .iter()
            .copied()
            .filter(|&f| base.edge_set(e).is_disjoint(base.edge_set(f)))
            .collect();
        chosen.push(e);
        extend_disjoint(base, q, &rest, chosen, out, cap)?;
        chosen.pop();
    }
    Ok(())
}

pub fn is_kneser_edge(k: &KneserStructure, ids: &[usize]) -> bool {
    if ids.len() != k.q || ids.iter().any(|&i| i >= k.kg.vertex_count()) {
        return false;
    }
    ids.iter().enumerate().all(|(a, &i)| {
        ids[a + 1..]
            .iter()
            .all(|&j| i != j && k.base_edge_set(i).is_disjoint(k.base_edge_set(j)))
    })
}
