//! Colorability defect `cd^q`, alternation numbers and the consolidated lower-bound report.
//!
//! Symbols of `Z_q ∪ {0}` are stored as `0` (zero) and `1..=q` (the power of ω).

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::{Budget, Interrupted};
use crate::coloring::{
    chromatic_number_with, default_local_cap, local_chromatic_number_with, try_t_coloring, ChromaticOptions,
    ChromaticValue, LocalResult,
};
use crate::error::{Error, Result};
use crate::hypercore::{induced, Hypergraph};
use crate::kneser::build_kneser_capped;
pub use crate::signed::SignedVector;
use crate::vertex_set::VertexSet;
use crate::watch::EdgeWatch;

pub fn check_permutation(pi: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if pi.len() != n {
        return Err(Error::contract(format!(
            "permutation has length {}, expected {n}",
            pi.len()
        )));
    }
    for &p in pi {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::contract(format!("{pi:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

/// Longest alternating subsequence of `x_{π(1)}, ..., x_{π(n)}`: drop zeros, then count maximal
/// runs of equal symbols.
pub fn alt_pi(x: &SignedVector, pi: &[usize]) -> usize {
    let mut last = 0;
    let mut runs = 0;
    for &i in pi {
        let s = x.entries()[i];
        if s != 0 && s != last {
            runs += 1;
            last = s;
        }
    }
    runs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectResult {
    /// Exact `cd^q` when `complete`, otherwise an upper bound.
    pub value: usize,
    /// `|Y| = value` and `χ(H[V \ Y]) <= q`.
    pub witness: VertexSet,
    /// Certified lower bound (equals `value` when complete).
    pub lower: usize,
    pub complete: bool,
}

pub fn cd(h: &Hypergraph, q: usize) -> Result<DefectResult> {
    cd_with(h, q, &Budget::unlimited())
}

/// Minimum `|Y|` with `χ(H[V \ Y]) <= q`, trying sizes in increasing order and subsets of each
/// size in lexicographic order. Every failed candidate is shrunk to a minimal non-q-colorable
/// vertex set; later candidates must hit all of those sets.
pub fn cd_with(h: &Hypergraph, q: usize, budget: &Budget) -> Result<DefectResult> {
    if q < 2 {
        return Err(Error::contract(format!("defect needs q >= 2, got {q}")));
    }
    let n = h.vertex_count();
    let mut obstructions: Vec<VertexSet> = Vec::new();
    let give_up = |lower: usize| DefectResult {
        value: n,
        witness: VertexSet::full(n),
        lower,
        complete: false,
    };

    for size in 0..=n {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let y = VertexSet::from_slice(n, &subset);
            if obstructions.iter().all(|o| !o.is_disjoint(&y)) {
                let rest = y.complement();
                match colorable_within(h, &rest, q, budget) {
                    Err(Interrupted) => return Ok(give_up(size)),
                    Ok(true) => {
                        return Ok(DefectResult {
                            value: size,
                            witness: y,
                            lower: size,
                            complete: true,
                        })
                    }
                    Ok(false) => match shrink_obstruction(h, rest, q, budget) {
                        Ok(o) => obstructions.push(o),
                        Err(Interrupted) => return Ok(give_up(size)),
                    },
                }
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    unreachable!("removing every vertex leaves an empty, 0-colorable hypergraph")
}

fn colorable_within(
    h: &Hypergraph,
    keep: &VertexSet,
    q: usize,
    budget: &Budget,
) -> std::result::Result<bool, Interrupted> {
    let sub = induced(h, keep);
    Ok(try_t_coloring(&sub.hypergraph, q, budget)?.is_some())
}

fn shrink_obstruction(
    h: &Hypergraph,
    mut set: VertexSet,
    q: usize,
    budget: &Budget,
) -> std::result::Result<VertexSet, Interrupted> {
    for v in set.to_vec() {
        set.remove(v);
        if colorable_within(h, &set, q, budget)? {
            set.insert(v);
        }
    }
    Ok(set)
}

/// Advances a sorted k-subset of `0..n` to its lexicographic successor.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 && c[i - 1] == n - k + i - 1 {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    c[i - 1] += 1;
    for j in i..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum AltMode {
    /// Inner maximum for one given permutation.
    FixedPermutation,
    /// Minimum over every permutation.
    Exact,
    /// Best permutation found by seeded local search; `value` is an upper bound on `alt^q`.
    Heuristic { seed: u64, restarts: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltResult {
    pub value: usize,
    pub permutation: Vec<usize>,
    /// Feasible vector attaining `value` under `permutation`.
    pub vector: SignedVector,
    pub mode: AltMode,
    /// False when an outer search ran out of budget; `value` is still an upper bound on `alt^q`.
    pub complete: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AltCaps {
    /// Largest `n` for the exact inner maximum.
    pub inner: usize,
    /// Largest `n` for enumerating all permutations.
    pub outer: usize,
}

impl Default for AltCaps {
    fn default() -> Self {
        AltCaps { inner: 22, outer: 9 }
    }
}

pub fn max_alt_fixed_perm(h: &Hypergraph, q: usize, pi: &[usize]) -> Result<AltResult> {
    max_alt_fixed_perm_with(h, q, pi, AltCaps::default(), &Budget::unlimited())
}

/// Maximum of `alt_π(X)` over vectors whose classes `X^1..X^q` each induce no edge.
pub fn max_alt_fixed_perm_with(
    h: &Hypergraph,
    q: usize,
    pi: &[usize],
    caps: AltCaps,
    budget: &Budget,
) -> Result<AltResult> {
    let n = h.vertex_count();
    if q < 2 {
        return Err(Error::contract(format!("alternation needs q >= 2, got {q}")));
    }
    check_permutation(pi, n)?;
    if n > caps.inner {
        return Err(Error::resource(format!(
            "n = {n} exceeds the exact inner cap {}; use heuristic mode or raise the cap",
            caps.inner
        )));
    }
    let (value, entries) = inner_max(h, q, pi, None, budget)
        .map_err(|_| Error::resource("budget exhausted during the fixed-permutation search"))?;
    Ok(AltResult {
        value,
        permutation: pi.to_vec(),
        vector: SignedVector::from_parts(q, entries),
        mode: AltMode::FixedPermutation,
        complete: true,
    })
}

/// Depth-first search over positions in π order. Repeating the previous nonzero symbol is
/// never better than writing 0, and symbols are interchangeable, so a new symbol is only
/// introduced as the next unused one. With `stop_at`, returns as soon as that value is reached.
fn inner_max(
    h: &Hypergraph,
    q: usize,
    pi: &[usize],
    stop_at: Option<usize>,
    budget: &Budget,
) -> std::result::Result<(usize, Vec<usize>), Interrupted> {
    let n = h.vertex_count();
    let mut s = AltSearch {
        watch: EdgeWatch::new(h, q),
        pi,
        q,
        entries: vec![0; n],
        best: 0,
        best_entries: vec![0; n],
        stop_at: stop_at.unwrap_or(usize::MAX),
        budget,
    };
    s.run(0, 0, 0, 0)?;
    Ok((s.best, s.best_entries))
}

struct AltSearch<'a, 'b> {
    watch: EdgeWatch<'a>,
    pi: &'b [usize],
    q: usize,
    entries: Vec<usize>,
    best: usize,
    best_entries: Vec<usize>,
    stop_at: usize,
    budget: &'b Budget,
}

impl AltSearch<'_, '_> {
    /// Returns `Ok(true)` once `stop_at` is reached.
    fn run(&mut self, pos: usize, cur: usize, last: usize, used: usize) -> std::result::Result<bool, Interrupted> {
        if cur > self.best {
            self.best = cur;
            self.best_entries = self.entries.clone();
            if self.best >= self.stop_at {
                return Ok(true);
            }
        }
        if pos == self.pi.len() || cur + (self.pi.len() - pos) <= self.best {
            return Ok(false);
        }
        self.budget.tick()?;
        let v = self.pi[pos];
        for sym in 1..=self.q.min(used + 1) {
            if sym == last || !self.watch.allows(v, sym - 1) {
                continue;
            }
            self.watch.assign(v, sym - 1);
            self.entries[v] = sym;
            let done = self.run(pos + 1, cur + 1, sym, used.max(sym))?;
            self.watch.unassign(v, sym - 1);
            self.entries[v] = 0;
            if done {
                return Ok(true);
            }
        }
        self.run(pos + 1, cur, last, used)
    }
}

/// Lexicographic successor of a permutation; false after the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AltSearchMode {
    Exact,
    Heuristic { seed: u64, restarts: usize },
}

pub fn alt_number(h: &Hypergraph, q: usize, mode: &AltSearchMode) -> Result<AltResult> {
    alt_number_with(h, q, mode, AltCaps::default(), &Budget::unlimited())
}

/// `alt^q(H) = min_π max_X alt_π(X)`.
///
/// Exact mode walks every permutation with `π(1) < π(n)` (reversing π does not change the
/// inner maximum). Heuristic mode runs first-improvement adjacent-swap descent from the
/// identity and from `restarts - 1` seeded shuffles.
pub fn alt_number_with(
    h: &Hypergraph,
    q: usize,
    mode: &AltSearchMode,
    caps: AltCaps,
    budget: &Budget,
) -> Result<AltResult> {
    let n = h.vertex_count();
    if q < 2 {
        return Err(Error::contract(format!("alternation needs q >= 2, got {q}")));
    }
    if n > caps.inner {
        return Err(Error::resource(format!(
            "n = {n} exceeds the exact inner cap {}",
            caps.inner
        )));
    }
    match *mode {
        AltSearchMode::Exact => {
            if n > caps.outer {
                return Err(Error::resource(format!(
                    "exact alternation enumerates n! permutations; n = {n} exceeds the cap {} (use heuristic mode)",
                    caps.outer
                )));
            }
            exact_alt(h, q, budget)
        }
        AltSearchMode::Heuristic { seed, restarts } => heuristic_alt(h, q, seed, restarts.max(1), budget),
    }
}

fn exact_alt(h: &Hypergraph, q: usize, budget: &Budget) -> Result<AltResult> {
    let n = h.vertex_count();
    let mut pi: Vec<usize> = (0..n).collect();
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    let mut complete = true;
    loop {
        if n < 2 || pi[0] < pi[n - 1] {
            let cutoff = best.as_ref().map(|b| b.0);
            match inner_max(h, q, &pi, cutoff, budget) {
                Ok((v, entries)) => {
                    if cutoff.is_none_or(|c| v < c) {
                        best = Some((v, pi.clone(), entries));
                    }
                }
                Err(Interrupted) => {
                    complete = false;
                    break;
                }
            }
        }
        if !next_permutation(&mut pi) {
            break;
        }
    }
    let (value, permutation, entries) =
        best.ok_or_else(|| Error::resource("budget exhausted before any permutation was evaluated"))?;
    Ok(AltResult {
        value,
        permutation,
        vector: SignedVector::from_parts(q, entries),
        mode: AltMode::Exact,
        complete,
    })
}

fn heuristic_alt(h: &Hypergraph, q: usize, seed: u64, restarts: usize, budget: &Budget) -> Result<AltResult> {
    let n = h.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    let mut complete = true;
    'restarts: for r in 0..restarts {
        let mut pi: Vec<usize> = (0..n).collect();
        if r > 0 {
            pi.shuffle(&mut rng);
        }
        let (mut value, mut entries) = match inner_max(h, q, &pi, None, budget) {
            Ok(x) => x,
            Err(Interrupted) => {
                complete = false;
                break;
            }
        };
        'descent: loop {
            for i in 0..n.saturating_sub(1) {
                pi.swap(i, i + 1);
                match inner_max(h, q, &pi, Some(value), budget) {
                    Ok((v, e)) if v < value => {
                        value = v;
                        entries = e;
                        continue 'descent;
                    }
                    Ok(_) => pi.swap(i, i + 1),
                    Err(Interrupted) => {
                        pi.swap(i, i + 1);
                        complete = false;
                        if best.as_ref().is_none_or(|b| value < b.0) {
                            best = Some((value, pi, entries));
                        }
                        break 'restarts;
                    }
                }
            }
            break;
        }
        if best.as_ref().is_none_or(|b| value < b.0) {
            best = Some((value, pi, entries));
        }
    }
    let (value, permutation, entries) =
        best.ok_or_else(|| Error::resource("budget exhausted before any permutation was evaluated"))?;
    Ok(AltResult {
        value,
        permutation,
        vector: SignedVector::from_parts(q, entries),
        mode: AltMode::Heuristic { seed, restarts },
        complete,
    })
}

pub(crate) fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `min(⌈r/p⌉ + 1, ⌈r/(p-1)⌉)`: local chromatic lower bound from a rainbow witness of size r.
pub fn local_bound_from_witness_size(r: usize, p: usize) -> usize {
    (ceil_div(r, p) + 1).min(ceil_div(r, p - 1))
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub alt_mode: AltSearchMode,
    pub caps: AltCaps,
    pub kg_edge_cap: usize,
    pub exact_chi: bool,
    pub exact_local: bool,
    /// Color cap for the local chromatic search; defaults to `min(n_kg, χ + 2)`.
    pub local_max_t: Option<usize>,
    pub node_limit: Option<u64>,
    pub time_limit: Option<std::time::Duration>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            alt_mode: AltSearchMode::Heuristic { seed: 0, restarts: 8 },
            caps: AltCaps::default(),
            kg_edge_cap: crate::kneser::DEFAULT_EDGE_CAP,
            exact_chi: false,
            exact_local: false,
            local_max_t: None,
            node_limit: None,
            time_limit: None,
        }
    }
}

impl ReportOptions {
    fn budget(&self) -> Budget {
        Budget::unlimited().and_nodes(self.node_limit).and_time(self.time_limit)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    /// `None` when the bound does not apply to this (H, q).
    pub bound: Option<usize>,
    /// Which quantity the bound is on: `chi` or `local_chi`.
    pub target: &'static str,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub mode: String,
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n: usize,
    pub q: usize,
    pub kg_vertices: usize,
    pub kg_edges: usize,
    pub cd: DefectResult,
    pub alt: Option<AltResult>,
    pub alt_error: Option<String>,
    pub chi: Option<ChromaticValue>,
    pub local: Option<LocalResult>,
    pub local_error: Option<String>,
    pub bounds: BTreeMap<String, BoundEntry>,
    /// Human-readable descriptions of every failed consistency check.
    pub violations: Vec<String>,
}

impl BoundReport {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

fn inputs(pairs: &[(&str, serde_json::Value)]) -> BTreeMap<String, serde_json::Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Computes `cd^q`, an alternation value and every lower bound they imply for `KG^q(H)`,
/// optionally checks them against exact `χ` and `χ_ℓ`.
pub fn bound_report(h: &Hypergraph, q: usize, opts: &ReportOptions) -> Result<BoundReport> {
    if q < 2 {
        return Err(Error::contract(format!("q must be >= 2, got {q}")));
    }
    let n = h.vertex_count();
    let budget = opts.budget();
    let defect = cd_with(h, q, &budget)?;
    let defect_mode = if defect.complete { "exact" } else { "upper_bound_only" };

    let alt = alt_number_with(h, q, &opts.alt_mode, opts.caps, &budget);
    let (alt, alt_error) = match alt {
        Ok(a) => (Some(a), None),
        Err(e) => (None, Some(e.to_string())),
    };

    let mut bounds = BTreeMap::new();
    let cd_val = defect.value;
    let cd_ok = defect.complete;
    let cd_bound = |b: usize| cd_ok.then_some(b);

    bounds.insert(
        "dolnikov".to_string(),
        BoundEntry {
            bound: if q == 2 { cd_bound(cd_val) } else { None },
            target: "chi",
            inputs: inputs(&[("cd", cd_val.into())]),
            mode: if q == 2 {
                defect_mode.into()
            } else {
                "not_applicable".into()
            },
        },
    );
    bounds.insert(
        "kriz".to_string(),
        BoundEntry {
            bound: cd_bound(ceil_div(cd_val, q - 1)),
            target: "chi",
            inputs: inputs(&[("cd", cd_val.into()), ("q", q.into())]),
            mode: defect_mode.into(),
        },
    );
    let st_applies = q == 2 && cd_val >= 2;
    bounds.insert(
        "simonyi_tardos_local".to_string(),
        BoundEntry {
            bound: if st_applies {
                cd_bound(ceil_div(cd_val, 2) + 1)
            } else {
                None
            },
            target: "local_chi",
            inputs: inputs(&[("cd", cd_val.into())]),
            mode: if st_applies {
                defect_mode.into()
            } else {
                "not_applicable".into()
            },
        },
    );
    let prime = is_prime(q);
    bounds.insert(
        "local_from_defect".to_string(),
        BoundEntry {
            bound: if prime {
                cd_bound(local_bound_from_witness_size(cd_val, q))
            } else {
                None
            },
            target: "local_chi",
            inputs: inputs(&[("cd", cd_val.into()), ("p", q.into())]),
            mode: if prime {
                defect_mode.into()
            } else {
                "not_applicable_non_prime".into()
            },
        },
    );
    let alt_mode_name = |a: &AltResult| match (&a.mode, a.complete) {
        (AltMode::Exact, true) => "exact".to_string(),
        (AltMode::Exact, false) => "exact_partial_upper_bound".to_string(),
        _ => "heuristic_upper_bound".to_string(),
    };
    let alt_inputs = |a: &AltResult| {
        inputs(&[
            ("n", n.into()),
            ("alt", a.value.into()),
            (
                "permutation",
                a.permutation.iter().map(|v| v + 1).collect::<Vec<_>>().into(),
            ),
        ])
    };
    match &alt {
        Some(a) => {
            let r = n - a.value;
            bounds.insert(
                "alishahi_hajiabolhassan".to_string(),
                BoundEntry {
                    bound: Some(ceil_div(r, q - 1)),
                    target: "chi",
                    inputs: alt_inputs(a),
                    mode: alt_mode_name(a),
                },
            );
            bounds.insert(
                "local_from_alternation".to_string(),
                BoundEntry {
                    bound: prime.then(|| local_bound_from_witness_size(r, q)),
                    target: "local_chi",
                    inputs: alt_inputs(a),
                    mode: if prime {
                        alt_mode_name(a)
                    } else {
                        "not_applicable_non_prime".into()
                    },
                },
            );
        }
        None => {
            for (name, target) in [
                ("alishahi_hajiabolhassan", "chi"),
                ("local_from_alternation", "local_chi"),
            ] {
                bounds.insert(
                    name.to_string(),
                    BoundEntry {
                        bound: None,
                        target,
                        inputs: BTreeMap::new(),
                        mode: "unavailable".into(),
                    },
                );
            }
        }
    }

    let mut violations = Vec::new();
    if let Some(a) = &alt {
        if a.mode == AltMode::Exact && a.complete && cd_ok && n - a.value < cd_val {
            violations.push(format!("n - alt = {} is below cd = {cd_val}", n - a.value));
        }
    }

    let mut kg_vertices = h.edge_count();
    let mut kg_edges = 0;
    let mut chi = None;
    let mut local = None;
    let mut local_error = None;
    if opts.exact_chi || opts.exact_local {
        let k = build_kneser_capped(h, q, opts.kg_edge_cap)?;
        kg_vertices = k.kg().vertex_count();
        kg_edges = k.kg().edge_count();
        let c = chromatic_number_with(
            k.kg(),
            &ChromaticOptions {
                budget: opts.budget(),
                start: 0,
            },
        );
        chi = Some(c.value);
        if let ChromaticValue::Exact(x) = c.value {
            for (name, b) in &bounds {
                if b.target == "chi" && b.bound.is_some_and(|v| v > x) {
                    violations.push(format!("{name} bound {} exceeds χ = {x}", b.bound.unwrap()));
                }
            }
            if opts.exact_local && kg_edges > 0 {
                let max_t = opts
                    .local_max_t
                    .unwrap_or_else(|| default_local_cap(kg_vertices, x))
                    .max(x);
                match local_chromatic_number_with(k.kg(), max_t, &opts.budget()) {
                    Ok(l) => {
                        if l.complete {
                            for (name, b) in &bounds {
                                if b.target == "local_chi" && b.bound.is_some_and(|v| v > l.value) {
                                    violations.push(format!(
                                        "{name} bound {} exceeds χ_ℓ = {} (max_t = {max_t})",
                                        b.bound.unwrap(),
                                        l.value
                                    ));
                                }
                            }
                        }
                        if l.value > x {
                            violations.push(format!("χ_ℓ = {} exceeds χ = {x}", l.value));
                        }
                        local = Some(l);
                    }
                    Err(e) => local_error = Some(e.to_string()),
                }
            } else if opts.exact_local {
                local_error = Some("Kneser hypergraph has no edges".into());
            }
        }
    }

    Ok(BoundReport {
        n,
        q,
        kg_vertices,
        kg_edges,
        cd: defect,
        alt,
        alt_error,
        chi,
        local,
        local_error,
        bounds,
        violations,
    })
}

/// Independent check that every class of `x` induces no edge of `h`.
pub fn is_feasible_vector(h: &Hypergraph, x: &SignedVector) -> bool {
    x.len() == h.vertex_count()
        && (1..=x.q()).all(|j| {
            let class = x.class(j);
            h.edges().iter().all(|e| e.iter().any(|&v| !class.contains(v)))
        })
}
