//! Join reduction from maximum independent set to the fixed-permutation alternation maximum.
//!
//! For a graph `G` the join of `G` with a copy `G′` is numbered so that `v` gets `2ρ(v)−1` and
//! its copy gets `2ρ(v)`. Under the identity permutation the best feasible two-signed vector
//! then alternates `2α(G)` times. The same family shows that the two-colorability defect is
//! hard to compute.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{max_alt_fixed_perm_with, AltCaps, AltResult};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hypercore::Hypergraph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinInstance {
    source: Hypergraph,
    joined: Hypergraph,
    /// `rho[v]` is the 0-based rank of source vertex `v`; `v` maps to `2·rho[v]`, its copy to
    /// `2·rho[v] + 1` (0-based).
    rho: Vec<usize>,
}

impl JoinInstance {
    pub fn source(&self) -> &Hypergraph {
        &self.source
    }

    pub fn joined(&self) -> &Hypergraph {
        &self.joined
    }

    pub fn rho(&self) -> &[usize] {
        &self.rho
    }

    pub fn original(&self, v: usize) -> usize {
        2 * self.rho[v]
    }

    pub fn copy(&self, v: usize) -> usize {
        2 * self.rho[v] + 1
    }

    /// `(source vertex, is_copy)` for a joined vertex.
    pub fn preimage(&self, w: usize) -> (usize, bool) {
        let rank = w / 2;
        let v = self.rho.iter().position(|&r| r == rank).expect("rank in range");
        (v, w % 2 == 1)
    }
}

fn require_graph(g: &Hypergraph) -> Result<()> {
    if !g.is_graph() {
        return Err(Error::contract("input must be a graph (every edge of size 2)"));
    }
    Ok(())
}

/// Join with `ρ` equal to the input vertex order.
pub fn join_construction(g: &Hypergraph) -> Result<JoinInstance> {
    let rho = (0..g.vertex_count()).collect();
    join_with_rho(g, rho)
}

/// Join with a seeded uniformly random `ρ`.
pub fn join_construction_shuffled(g: &Hypergraph, seed: u64) -> Result<JoinInstance> {
    let mut rho: Vec<usize> = (0..g.vertex_count()).collect();
    rho.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    join_with_rho(g, rho)
}

pub fn join_with_rho(g: &Hypergraph, rho: Vec<usize>) -> Result<JoinInstance> {
    require_graph(g)?;
    let n = g.vertex_count();
    crate::bounds::check_permutation(&rho, n)?;
    let orig = |v: usize| 2 * rho[v];
    let copy = |v: usize| 2 * rho[v] + 1;
    let mut edges = Vec::with_capacity(2 * g.edge_count() + n * n);
    for e in g.edges() {
        edges.push(vec![orig(e[0]), orig(e[1])]);
        edges.push(vec![copy(e[0]), copy(e[1])]);
    }
    for v in 0..n {
        for w in 0..n {
            edges.push(vec![orig(v), copy(w)]);
        }
    }
    let joined = Hypergraph::new(2 * n, edges)?;
    Ok(JoinInstance {
        source: g.clone(),
        joined,
        rho,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceResult {
    /// Size of `witness`; exact when `complete`.
    pub value: usize,
    pub witness: VertexSet,
    /// Upper bound on `α(G)`; equals `value` when `complete`.
    pub upper: usize,
    pub complete: bool,
}

pub fn independence_number(g: &Hypergraph) -> Result<IndependenceResult> {
    independence_number_with(g, &Budget::unlimited())
}

/// Exact `α(G)` by branch and bound. On an exhausted budget the best set found so far is
/// returned with `complete = false`.
pub fn independence_number_with(g: &Hypergraph, budget: &Budget) -> Result<IndependenceResult> {
    require_graph(g)?;
    let n = g.vertex_count();
    let mut adj = vec![VertexSet::new(n); n];
    for e in g.edges() {
        adj[e[0]].insert(e[1]);
        adj[e[1]].insert(e[0]);
    }
    let mut search = MisSearch {
        adj: &adj,
        budget,
        best: VertexSet::new(n),
        cur: VertexSet::new(n),
    };
    let all = VertexSet::full(n);
    let root_bound = clique_cover_bound(&adj, &all);
    let complete = search.run(all).is_ok();
    let value = search.best.len();
    Ok(IndependenceResult {
        value,
        witness: search.best,
        upper: if complete { value } else { root_bound },
        complete,
    })
}

/// Number of cliques in a greedy clique cover of `p`; at least `α(G[p])`.
fn clique_cover_bound(adj: &[VertexSet], p: &VertexSet) -> usize {
    let mut cliques: Vec<VertexSet> = Vec::new();
    for v in p.iter() {
        // a clique accepts v when v is adjacent to all of its members
        match cliques.iter_mut().find(|c| c.is_subset(&adj[v])) {
            Some(c) => {
                c.insert(v);
            }
            None => {
                let mut c = VertexSet::new(adj.len());
                c.insert(v);
                cliques.push(c);
            }
        }
    }
    cliques.len()
}

struct MisSearch<'a, 'b> {
    adj: &'a [VertexSet],
    budget: &'b Budget,
    best: VertexSet,
    cur: VertexSet,
}

impl MisSearch<'_, '_> {
    fn run(&mut self, mut p: VertexSet) -> std::result::Result<(), crate::budget::Interrupted> {
        self.budget.tick()?;
        // isolated vertices of G[p] join every maximum set
        let mut added = Vec::new();
        for v in p.to_vec() {
            if self.adj[v].is_disjoint(&p) {
                p.remove(v);
                self.cur.insert(v);
                added.push(v);
            }
        }
        if p.is_empty() {
            if self.cur.len() > self.best.len() {
                self.best = self.cur.clone();
            }
        } else if self.cur.len() + clique_cover_bound(self.adj, &p) > self.best.len() {
            let v = p
                .iter()
                .max_by_key(|&u| {
                    let mut d = self.adj[u].clone();
                    d.difference_with(&p.complement());
                    (d.len(), std::cmp::Reverse(u))
                })
                .expect("p is nonempty");
            let mut with = p.clone();
            with.difference_with(&self.adj[v]);
            with.remove(v);
            self.cur.insert(v);
            let r = self.run(with);
            self.cur.remove(v);
            r?;
            let mut without = p;
            without.remove(v);
            self.run(without)?;
        }
        for v in added {
            self.cur.remove(v);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionVerdict {
    pub join: JoinInstance,
    pub alpha: IndependenceResult,
    /// Maximum of `alt_id` over feasible vectors on the joined graph.
    pub alt: AltResult,
    pub equal: bool,
}

impl ReductionVerdict {
    pub fn max_alt_id(&self) -> usize {
        self.alt.value
    }
}

pub fn verify_reduction(g: &Hypergraph) -> Result<ReductionVerdict> {
    verify_join(join_construction(g)?, AltCaps::default(), &Budget::unlimited())
}

pub fn verify_join(join: JoinInstance, caps: AltCaps, budget: &Budget) -> Result<ReductionVerdict> {
    let alpha = independence_number_with(&join.source, budget)?;
    if !alpha.complete {
        return Err(Error::resource(
            "budget exhausted while computing the independence number",
        ));
    }
    let id: Vec<usize> = (0..join.joined.vertex_count()).collect();
    let alt = max_alt_fixed_perm_with(&join.joined, 2, &id, caps, budget)?;
    for sign in 1..=2 {
        let class = alt.vector.class(sign);
        let sides: Vec<bool> = class.iter().map(|w| w % 2 == 1).collect();
        assert!(
            sides.windows(2).all(|s| s[0] == s[1]),
            "sign class {sign} of the witness straddles both sides of the join"
        );
    }
    let equal = alt.value == 2 * alpha.value;
    Ok(ReductionVerdict {
        join,
        alpha,
        alt,
        equal,
    })
}
