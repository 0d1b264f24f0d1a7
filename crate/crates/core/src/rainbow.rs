//! Balanced complete p-partite subhypergraphs with rainbow parts inside properly colored
//! Kneser hypergraphs, and the sweep that checks one exists for every coloring.
//!
//! In `KG^p(H)` a p-partite p-uniform subhypergraph is complete exactly when base edges taken
//! from different parts are pairwise disjoint. Base edges inside one part may intersect.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{alt_number_with, cd_with, ceil_div, is_prime, AltCaps, AltSearchMode};
use crate::budget::Budget;
use crate::coloring::enumerate_proper_colorings;
use crate::error::{Error, Result};
use crate::hypercore::{is_proper, Coloring, Hypergraph};
use crate::kneser::{build_kneser_capped, KneserStructure, DEFAULT_EDGE_CAP};
use crate::vertex_set::VertexSet;
use crate::watch::EdgeWatch;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartiteWitness {
    /// Kg-vertex ids of each part.
    pub parts: Vec<Vec<usize>>,
}

impl PartiteWitness {
    pub fn r(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn colors_per_part(&self, c: &Coloring) -> Vec<Vec<usize>> {
        self.parts
            .iter()
            .map(|part| part.iter().map(|&u| c.color(u)).collect())
            .collect()
    }
}

/// `r mod p` parts of size `⌈r/p⌉` followed by parts of size `⌊r/p⌋`.
pub fn part_sizes(r: usize, p: usize) -> Vec<usize> {
    assert!(p >= 2, "need at least two parts");
    (0..p).map(|j| r / p + usize::from(j < r % p)).collect()
}

/// Checks the three witness properties with plain set arithmetic.
pub fn validate_witness(
    k: &KneserStructure,
    c: &Coloring,
    w: &PartiteWitness,
    r: usize,
) -> std::result::Result<(), String> {
    let p = k.q();
    if w.parts.len() != p {
        return Err(format!("{} parts, expected {p}", w.parts.len()));
    }
    let mut sizes: Vec<usize> = w.parts.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    if sizes != part_sizes(r, p) {
        return Err(format!("part sizes {sizes:?} are not a balanced split of {r}"));
    }
    let mut all = BTreeSet::new();
    for part in &w.parts {
        for &u in part {
            if u >= k.kg().vertex_count() {
                return Err(format!("kg vertex {u} does not exist"));
            }
            if !all.insert(u) {
                return Err(format!("kg vertex {u} appears twice"));
            }
        }
    }
    for (j, part) in w.parts.iter().enumerate() {
        let colors: BTreeSet<usize> = part.iter().map(|&u| c.color(u)).collect();
        if colors.len() != part.len() {
            return Err(format!("part {j} repeats a color"));
        }
        for other in &w.parts[j + 1..] {
            for &u in part {
                let a: BTreeSet<usize> = k.base_edge(u).iter().copied().collect();
                for &v in other {
                    if k.base_edge(v).iter().any(|x| a.contains(x)) {
                        return Err(format!("base edges of {u} and {v} intersect across parts"));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn find_rainbow_witness(k: &KneserStructure, c: &Coloring, r: usize) -> Result<Option<PartiteWitness>> {
    find_witness_impl(k, c, r, true)
}

/// Same search without the interchangeable-empty-parts reduction; used to re-verify a
/// coloring for which the reduced search found nothing.
pub fn find_rainbow_witness_unreduced(k: &KneserStructure, c: &Coloring, r: usize) -> Result<Option<PartiteWitness>> {
    find_witness_impl(k, c, r, false)
}

fn find_witness_impl(k: &KneserStructure, c: &Coloring, r: usize, reduce: bool) -> Result<Option<PartiteWitness>> {
    if !is_proper(k.kg(), c)? {
        return Err(Error::contract("rainbow witness search needs a proper coloring"));
    }
    let p = k.q();
    let sizes = part_sizes(r, p);
    let m = k.kg().vertex_count();

    // vertices grouped by color, larger classes first
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); c.t()];
    for u in 0..m {
        classes[c.color(u)].push(u);
    }
    let mut order_classes: Vec<usize> = (0..c.t()).filter(|&col| !classes[col].is_empty()).collect();
    order_classes.sort_by_key(|&col| (std::cmp::Reverse(classes[col].len()), col));
    let order: Vec<usize> = order_classes
        .iter()
        .flat_map(|&col| classes[col].iter().copied())
        .collect();
    // distinct colors among order[i..]
    let mut colors_left = vec![0; m + 1];
    for i in (0..m).rev() {
        let new_class = i + 1 == m || c.color(order[i]) != c.color(order[i + 1]);
        colors_left[i] = colors_left[i + 1] + usize::from(new_class);
    }

    if sizes[0] > order_classes.len() {
        return Ok(None);
    }
    let base_n = k.base().vertex_count();
    let mut s = WitnessSearch {
        k,
        c,
        order: &order,
        colors_left: &colors_left,
        sizes: &sizes,
        parts: vec![Vec::new(); p],
        part_colors: vec![VertexSet::new(c.t()); p],
        unions: vec![VertexSet::new(base_n); p],
        reduce,
    };
    if s.run(0, r) {
        Ok(Some(PartiteWitness { parts: s.parts }))
    } else {
        Ok(None)
    }
}

struct WitnessSearch<'a> {
    k: &'a KneserStructure,
    c: &'a Coloring,
    order: &'a [usize],
    colors_left: &'a [usize],
    sizes: &'a [usize],
    parts: Vec<Vec<usize>>,
    part_colors: Vec<VertexSet>,
    unions: Vec<VertexSet>,
    reduce: bool,
}

impl WitnessSearch<'_> {
    fn run(&mut self, idx: usize, slots: usize) -> bool {
        if slots == 0 {
            return true;
        }
        if self.order.len() - idx < slots {
            return false;
        }
        let colors_left = self.colors_left[idx];
        if (0..self.parts.len()).any(|j| self.sizes[j] - self.parts[j].len() > colors_left) {
            return false;
        }
        let u = self.order[idx];
        let color = self.c.color(u);
        let edge = self.k.base_edge_set(u);
        for j in 0..self.parts.len() {
            if self.parts[j].len() == self.sizes[j] || self.part_colors[j].contains(color) {
                continue;
            }
            if self.reduce
                && self.parts[j].is_empty()
                && (0..j).any(|i| self.parts[i].is_empty() && self.sizes[i] == self.sizes[j])
            {
                continue;
            }
            if (0..self.parts.len()).any(|i| i != j && !self.unions[i].is_disjoint(edge)) {
                continue;
            }
            let saved = self.unions[j].clone();
            self.unions[j].union_with(edge);
            self.part_colors[j].insert(color);
            self.parts[j].push(u);
            if self.run(idx + 1, slots - 1) {
                return true;
            }
            self.parts[j].pop();
            self.part_colors[j].remove(color);
            self.unions[j] = saved;
        }
        self.run(idx + 1, slots)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSize {
    /// `r = cd^p(H)`.
    Defect,
    /// `r = |V(H)| - alt^p(H)`.
    Alternation,
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub r_mode: WitnessSize,
    /// Colorings use at most this many colors; defaults to `χ(KG^p(H)) + 1`.
    pub max_t: Option<usize>,
    /// Enumerate exhaustively while the canonical stream has at most this many colorings.
    pub exhaustive_cap: usize,
    /// Number of seeded random colorings checked once the cap is exceeded.
    pub samples: usize,
    pub seed: u64,
    /// Run for non-prime p; results are exploratory.
    pub force: bool,
    pub alt_caps: AltCaps,
    pub kg_edge_cap: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            r_mode: WitnessSize::Defect,
            max_t: None,
            exhaustive_cap: 1_000_000,
            samples: 10_000,
            seed: 0,
            force: false,
            alt_caps: AltCaps::default(),
            kg_edge_cap: DEFAULT_EDGE_CAP,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepTally {
    pub colorings_checked: usize,
    pub improper_skipped: usize,
    pub witnesses_found: usize,
    /// Proper colorings with no witness, even after re-verification.
    pub counterexamples: Vec<Coloring>,
    /// Colorings using fewer than `⌈r/(p-1)⌉` colors.
    pub kriz_violations: usize,
    /// Witnesses that failed independent validation (a search bug, never expected).
    pub invalid_witnesses: usize,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub p: usize,
    pub r: usize,
    pub r_mode: WitnessSize,
    /// Whether `r` comes from an exact computation (false: heuristic alternation value).
    pub r_exact: bool,
    pub max_t: usize,
    pub exhaustive: bool,
    pub seed: u64,
    pub samples: usize,
    pub exploratory: bool,
    pub tally: SweepTally,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.tally.counterexamples.is_empty() && self.tally.invalid_witnesses == 0 && self.tally.kriz_violations == 0
    }
}

/// Runs the witness search on every coloring of `colorings`, skipping improper ones.
pub fn check_colorings<I>(k: &KneserStructure, r: usize, colorings: I) -> Result<SweepTally>
where
    I: IntoIterator<Item = Coloring>,
{
    let p = k.q();
    let mut tally = SweepTally::default();
    for c in colorings {
        if c.len() != k.kg().vertex_count() || !is_proper(k.kg(), &c)? {
            tally.improper_skipped += 1;
            continue;
        }
        tally.colorings_checked += 1;
        if c.colors_used() < ceil_div(r, p - 1) {
            tally.kriz_violations += 1;
        }
        let found = match find_rainbow_witness(k, &c, r)? {
            Some(w) => Some(w),
            None => find_rainbow_witness_unreduced(k, &c, r)?,
        };
        match found {
            Some(w) => {
                if validate_witness(k, &c, &w, r).is_ok() {
                    tally.witnesses_found += 1;
                } else {
                    log::error!("witness failed validation: {w:?}");
                    tally.invalid_witnesses += 1;
                }
            }
            None => {
                log::warn!("no witness of size {r} for coloring {:?}", c.to_one_based());
                tally.counterexamples.push(c);
            }
        }
    }
    Ok(tally)
}

/// Seeded random proper colorings with at most `t` colors, in canonical form.
pub fn sample_proper_colorings(h: &Hypergraph, t: usize, count: usize, seed: u64) -> Vec<Coloring> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        match random_coloring(h, t, &mut rng) {
            Some(c) => out.push(c.canonicalized()),
            None => break,
        }
    }
    out
}

fn random_coloring(h: &Hypergraph, t: usize, rng: &mut ChaCha8Rng) -> Option<Coloring> {
    let n = h.vertex_count();
    let mut watch = EdgeWatch::new(h, t);
    let mut colors = vec![usize::MAX; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    // per position: remaining candidate colors in random order
    let mut choices: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut pos = 0;
    let mut steps = 0u64;
    while pos < n {
        steps += 1;
        if steps > 1_000_000 {
            return None;
        }
        if choices.len() == pos {
            let mut cs: Vec<usize> = (0..t).collect();
            cs.shuffle(rng);
            choices.push(cs);
        }
        let v = order[pos];
        if colors[v] != usize::MAX {
            watch.unassign(v, colors[v]);
            colors[v] = usize::MAX;
        }
        let pick = loop {
            match choices[pos].pop() {
                Some(col) if watch.allows(v, col) => break Some(col),
                Some(_) => continue,
                None => break None,
            }
        };
        match pick {
            Some(col) => {
                watch.assign(v, col);
                colors[v] = col;
                pos += 1;
            }
            None => {
                choices.pop();
                if pos == 0 {
                    return None;
                }
                pos -= 1;
            }
        }
    }
    Coloring::new(t, colors).ok()
}

/// Checks that every proper coloring of `KG^p(H)` with at most `max_t` colors contains a
/// balanced rainbow complete p-partite subhypergraph on `r` vertices.
pub fn sweep_verify(h: &Hypergraph, p: usize, opts: &SweepOptions) -> Result<SweepReport> {
    if !is_prime(p) {
        if !opts.force {
            return Err(Error::Rejected(format!(
                "p = {p} is not prime; whether the witness always exists for non-prime p is open (use --force to experiment)"
            )));
        }
        if p < 2 {
            return Err(Error::contract("p must be at least 2"));
        }
    }
    let n = h.vertex_count();
    let budget = Budget::unlimited();
    let (r, r_exact) = match opts.r_mode {
        WitnessSize::Defect => {
            let d = cd_with(h, p, &budget)?;
            (d.value, d.complete)
        }
        WitnessSize::Alternation => {
            let mode = if n <= opts.alt_caps.outer {
                AltSearchMode::Exact
            } else {
                AltSearchMode::Heuristic {
                    seed: opts.seed,
                    restarts: 8,
                }
            };
            let a = alt_number_with(h, p, &mode, opts.alt_caps, &budget)?;
            (n - a.value, mode == AltSearchMode::Exact && a.complete)
        }
    };
    let k = build_kneser_capped(h, p, opts.kg_edge_cap)?;
    let max_t = match opts.max_t {
        Some(t) => t,
        None => match crate::coloring::chromatic_number(k.kg()).value.exact() {
            Some(chi) => chi + 1,
            None => return Err(Error::resource("could not determine χ for the default color cap")),
        },
    };

    let mut stream = enumerate_proper_colorings(k.kg(), max_t, true);
    let first: Vec<Coloring> = stream.by_ref().take(opts.exhaustive_cap + 1).collect();
    let exhaustive = first.len() <= opts.exhaustive_cap;
    let tally = if exhaustive {
        check_colorings(&k, r, first)?
    } else {
        drop(first);
        let sample = sample_proper_colorings(k.kg(), max_t, opts.samples, opts.seed);
        check_colorings(&k, r, sample)?
    };
    Ok(SweepReport {
        p,
        r,
        r_mode: opts.r_mode,
        r_exact,
        max_t,
        exhaustive,
        seed: opts.seed,
        samples: if exhaustive { 0 } else { opts.samples },
        exploratory: !is_prime(p),
        tally,
    })
}
