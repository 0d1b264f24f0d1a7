//! Brute-force oracles. Each one is written from the definitions alone and shares no code with
//! the library searches it checks.
#![allow(dead_code)]

use kneser_lab::Hypergraph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Calls `f` on every vector in `{0..base}^n`, last coordinate fastest.
pub fn for_each_vector(n: usize, base: usize, mut f: impl FnMut(&[usize])) {
    let mut v = vec![0usize; n];
    loop {
        f(&v);
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            v[k] += 1;
            if v[k] < base {
                break;
            }
            v[k] = 0;
        }
    }
}

fn monochromatic(edge: &[usize], colors: &[usize]) -> bool {
    edge.iter().all(|&v| colors[v] == colors[edge[0]])
}

/// Smallest `t` with a proper `t`-coloring among all `t^n` assignments; `None` when some edge is
/// a singleton.
pub fn chi_brute(h: &Hypergraph) -> Option<usize> {
    let n = h.vertex_count();
    if h.edges().iter().any(|e| e.len() == 1) {
        return None;
    }
    if n == 0 {
        return Some(0);
    }
    for t in 1..=n {
        let mut found = false;
        for_each_vector(n, t, |c| {
            if !found && !h.edges().iter().any(|e| monochromatic(e, c)) {
                found = true;
            }
        });
        if found {
            return Some(t);
        }
    }
    unreachable!("n colors always suffice without singleton edges")
}

/// `cd^q`: over all `(q+1)^n` assignments where symbol `q` means "removed", the fewest removed
/// vertices such that no edge among the kept vertices is monochromatic.
pub fn cd_brute(h: &Hypergraph, q: usize) -> usize {
    let n = h.vertex_count();
    let mut best = n;
    for_each_vector(n, q + 1, |c| {
        let removed = c.iter().filter(|&&x| x == q).count();
        if removed < best && !h.edges().iter().any(|e| c[e[0]] != q && monochromatic(e, c)) {
            best = removed;
        }
    });
    best
}

/// Longest alternating subsequence by the quadratic dynamic program.
pub fn alt_dp(x: &[usize], pi: &[usize]) -> usize {
    let seq: Vec<usize> = pi.iter().map(|&i| x[i]).filter(|&s| s != 0).collect();
    let mut best = vec![0usize; seq.len()];
    for i in 0..seq.len() {
        best[i] = 1 + (0..i).filter(|&j| seq[j] != seq[i]).map(|j| best[j]).max().unwrap_or(0);
    }
    best.into_iter().max().unwrap_or(0)
}

/// Every sign class of `x` contains no edge.
pub fn feasible(h: &Hypergraph, x: &[usize]) -> bool {
    !h.edges().iter().any(|e| x[e[0]] != 0 && monochromatic(e, x))
}

/// `max alt_π(X)` over all feasible `X ∈ {0..q}^n`.
pub fn max_alt_brute(h: &Hypergraph, q: usize, pi: &[usize]) -> usize {
    let mut best = 0;
    for_each_vector(h.vertex_count(), q + 1, |x| {
        if feasible(h, x) {
            best = best.max(alt_dp(x, pi));
        }
    });
    best
}

/// All q-subsets of edge ids whose edges are pairwise disjoint, each sorted, in sorted order.
pub fn kg_edges_brute(base: &Hypergraph, q: usize) -> Vec<Vec<usize>> {
    let m = base.edge_count();
    let mut out = Vec::new();
    for_each_vector(m, 2, |mask| {
        let ids: Vec<usize> = (0..m).filter(|&i| mask[i] == 1).collect();
        if ids.len() != q {
            return;
        }
        let disjoint = ids.iter().enumerate().all(|(a, &i)| {
            ids[a + 1..]
                .iter()
                .all(|&j| base.edge(i).iter().all(|v| !base.edge(j).contains(v)))
        });
        if disjoint {
            out.push(ids);
        }
    });
    out.sort();
    out
}

/// Largest independent set size over all subsets.
pub fn alpha_brute(g: &Hypergraph) -> usize {
    let n = g.vertex_count();
    let mut best = 0;
    for_each_vector(n, 2, |s| {
        let ok = g.edges().iter().all(|e| !(s[e[0]] == 1 && s[e[1]] == 1));
        if ok {
            best = best.max(s.iter().sum());
        }
    });
    best
}

/// Random hypergraph: `m` distinct nonempty edges of size `lo..=hi` on `n` vertices.
pub fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize, m: usize, lo: usize, hi: usize) -> Hypergraph {
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut attempts = 0;
    while edges.len() < m && attempts < 1000 {
        attempts += 1;
        let size = rng.gen_range(lo..=hi.min(n));
        let mut e: Vec<usize> = rand::seq::index::sample(rng, n, size).into_vec();
        e.sort();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Hypergraph::new(n, edges).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Graph on `n` vertices whose edges are the set bits of `mask` over the pairs in lex order.
pub fn graph_from_mask(n: usize, mask: u64) -> Hypergraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push(vec![a, b]);
            }
            bit += 1;
        }
    }
    Hypergraph::new(n, edges).unwrap()
}
