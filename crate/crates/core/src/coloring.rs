//! Exact chromatic number, proper-coloring enumeration and the hypergraph local chromatic
//! number `min_c max_{e, v in e} |c(N[e \ {v}])|`.
//!
//! All searches share one incremental properness test: for every edge and color we keep the
//! number of already colored vertices of the edge with that color. Giving `v` color `c` is
//! forbidden exactly when some edge through `v` has all its other vertices colored `c`.

use crate::budget::{Budget, Interrupted};
use crate::error::{Error, Result};
use crate::hypercore::{is_proper, neighborhood_closure, Coloring, Hypergraph};
use crate::vertex_set::VertexSet;
use crate::watch::EdgeWatch;

const NONE: usize = usize::MAX;

/// Descending degree, ties broken by id.
pub fn degree_order(h: &Hypergraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..h.vertex_count()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    order
}

/// Searches for a proper coloring with at most `t` colors.
pub fn is_t_colorable(h: &Hypergraph, t: usize) -> Option<Coloring> {
    try_t_coloring(h, t, &Budget::unlimited()).expect("unlimited budget")
}

pub fn try_t_coloring(h: &Hypergraph, t: usize, budget: &Budget) -> std::result::Result<Option<Coloring>, Interrupted> {
    if t == 0 {
        return Ok((h.vertex_count() == 0).then(|| Coloring::new(0, Vec::new()).unwrap()));
    }
    if h.has_singleton_edge() {
        return Ok(None);
    }
    let order = degree_order(h);
    let mut search = DecisionSearch {
        watch: EdgeWatch::new(h, t),
        order: &order,
        colors: vec![NONE; h.vertex_count()],
        t,
        budget,
    };
    if search.run(0, 0)? {
        Ok(Some(Coloring::new(t, search.colors).unwrap()))
    } else {
        Ok(None)
    }
}

struct DecisionSearch<'a, 'b> {
    watch: EdgeWatch<'a>,
    order: &'b [usize],
    colors: Vec<usize>,
    t: usize,
    budget: &'b Budget,
}

impl DecisionSearch<'_, '_> {
    /// `used` is the number of distinct colors on `order[..pos]`; a fresh color is only ever
    /// introduced as `used`, which removes color-permutation symmetry.
    fn run(&mut self, pos: usize, used: usize) -> std::result::Result<bool, Interrupted> {
        if pos == self.order.len() {
            return Ok(true);
        }
        self.budget.tick()?;
        let v = self.order[pos];
        for c in 0..self.t.min(used + 1) {
            if self.watch.allows(v, c) {
                self.watch.assign(v, c);
                self.colors[v] = c;
                if self.run(pos + 1, used.max(c + 1))? {
                    return Ok(true);
                }
                self.watch.unassign(v, c);
                self.colors[v] = NONE;
            }
        }
        Ok(false)
    }
}

/// Greedy first-fit coloring in degree order. Always proper when no singleton edge exists.
pub fn greedy_coloring(h: &Hypergraph) -> Option<Coloring> {
    if h.has_singleton_edge() {
        return None;
    }
    let n = h.vertex_count();
    let t = n.max(1);
    let mut watch = EdgeWatch::new(h, t);
    let mut colors = vec![NONE; n];
    for v in degree_order(h) {
        let c = (0..t)
            .find(|&c| watch.allows(v, c))
            .expect("a fresh color is always allowed");
        watch.assign(v, c);
        colors[v] = c;
    }
    let used = colors.iter().map(|c| c + 1).max().unwrap_or(0);
    Coloring::new(used.max(1), colors).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChromaticValue {
    Exact(usize),
    /// Some edge is a singleton, so no proper coloring exists.
    Unbounded,
    /// The budget ran out; `lower` is certified, `upper` comes from a known proper coloring.
    Bounds {
        lower: usize,
        upper: usize,
    },
}

impl ChromaticValue {
    pub fn exact(&self) -> Option<usize> {
        match *self {
            ChromaticValue::Exact(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticResult {
    pub value: ChromaticValue,
    pub witness: Option<Coloring>,
}

#[derive(Clone, Debug, Default)]
pub struct ChromaticOptions {
    pub budget: Budget,
    /// Smallest `t` tried. Only pass a proven lower bound here.
    pub start: usize,
}

pub fn chromatic_number(h: &Hypergraph) -> ChromaticResult {
    chromatic_number_with(h, &ChromaticOptions::default())
}

/// Tries `t = max(start, 2), 3, ...` until a proper coloring appears.
pub fn chromatic_number_with(h: &Hypergraph, opts: &ChromaticOptions) -> ChromaticResult {
    let n = h.vertex_count();
    if n == 0 {
        return ChromaticResult {
            value: ChromaticValue::Exact(0),
            witness: Some(Coloring::new(0, Vec::new()).unwrap()),
        };
    }
    if h.has_singleton_edge() {
        return ChromaticResult {
            value: ChromaticValue::Unbounded,
            witness: None,
        };
    }
    if h.edge_count() == 0 {
        return ChromaticResult {
            value: ChromaticValue::Exact(1),
            witness: Some(Coloring::new(1, vec![0; n]).unwrap()),
        };
    }
    let greedy = greedy_coloring(h).expect("no singleton edges");
    let upper = greedy.colors_used();
    let mut t = opts.start.max(2);
    while t < upper {
        match try_t_coloring(h, t, &opts.budget) {
            Ok(Some(c)) => {
                return ChromaticResult {
                    value: ChromaticValue::Exact(t),
                    witness: Some(c),
                }
            }
            Ok(None) => t += 1,
            Err(Interrupted) => {
                return ChromaticResult {
                    value: ChromaticValue::Bounds { lower: t, upper },
                    witness: Some(greedy),
                }
            }
        }
    }
    // t == upper: either every smaller t failed, or the seed already reached the greedy count
    let witness = match try_t_coloring(h, t, &Budget::unlimited()) {
        Ok(Some(c)) => c,
        _ => greedy,
    };
    ChromaticResult {
        value: ChromaticValue::Exact(t),
        witness: Some(witness),
    }
}

/// Stream of proper colorings with colors in `0..t`, vertices assigned in id order.
///
/// With `canonical`, only colorings whose colors first appear in increasing order (by vertex
/// id) are produced: exactly one per orbit of the color-permutation action.
pub struct ProperColorings<'a> {
    watch: EdgeWatch<'a>,
    n: usize,
    t: usize,
    canonical: bool,
    colors: Vec<usize>,
    /// `used[i]` = number of distinct colors on vertices `0..i` (canonical mode).
    used: Vec<usize>,
    pos: usize,
    started: bool,
    done: bool,
}

pub fn enumerate_proper_colorings(h: &Hypergraph, t: usize, canonical: bool) -> ProperColorings<'_> {
    let n = h.vertex_count();
    ProperColorings {
        watch: EdgeWatch::new(h, t.max(1)),
        n,
        t,
        canonical,
        colors: vec![NONE; n],
        used: vec![0; n + 1],
        pos: 0,
        started: false,
        done: t == 0 && n > 0,
    }
}

impl Iterator for ProperColorings<'_> {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(Coloring::new(self.t, Vec::new()).unwrap());
        }
        if self.started {
            // resume after the last emitted leaf
            self.pos = self.n - 1;
        }
        self.started = true;
        loop {
            let v = self.pos;
            let from = match self.colors[v] {
                NONE => 0,
                c => {
                    self.watch.unassign(v, c);
                    c + 1
                }
            };
            let limit = if self.canonical {
                self.t.min(self.used[v] + 1)
            } else {
                self.t
            };
            let next = (from..limit).find(|&c| self.watch.allows(v, c));
            match next {
                Some(c) => {
                    self.watch.assign(v, c);
                    self.colors[v] = c;
                    self.used[v + 1] = self.used[v].max(c + 1);
                    if v + 1 == self.n {
                        return Some(Coloring::new(self.t, self.colors.clone()).unwrap());
                    }
                    self.pos += 1;
                }
                None => {
                    self.colors[v] = NONE;
                    if v == 0 {
                        self.done = true;
                        return None;
                    }
                    self.pos -= 1;
                }
            }
        }
    }
}

/// The distinct sets `N[e \ {v}]` over all edges `e` and `v in e`.
pub fn local_neighborhoods(h: &Hypergraph) -> Vec<VertexSet> {
    let n = h.vertex_count();
    let mut sets: Vec<VertexSet> = Vec::new();
    for e in h.edges() {
        for &v in e {
            let mut rest = VertexSet::from_slice(n, e);
            rest.remove(v);
            let closure = neighborhood_closure(h, &rest);
            if !sets.contains(&closure) {
                sets.push(closure);
            }
        }
    }
    sets
}

pub fn local_value(h: &Hypergraph, c: &Coloring) -> Result<usize> {
    if h.edge_count() == 0 {
        return Err(Error::Undefined("local value of a hypergraph without edges".into()));
    }
    if !is_proper(h, c)? {
        return Err(Error::contract("local value needs a proper coloring"));
    }
    Ok(local_neighborhoods(h)
        .iter()
        .map(|s| {
            let mut seen = vec![false; c.t()];
            s.iter().for_each(|v| seen[c.color(v)] = true);
            seen.into_iter().filter(|&b| b).count()
        })
        .max()
        .unwrap_or(0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalResult {
    pub value: usize,
    pub witness: Coloring,
    /// Colors actually used by the witness.
    pub witness_t: usize,
    /// Only colorings with at most this many colors were searched.
    pub max_t: usize,
    /// False when the budget ran out; `value` is then only an upper bound.
    pub complete: bool,
}

/// Default color cap for the local chromatic search: `min(n, chi + 2)`.
pub fn default_local_cap(n: usize, chi: usize) -> usize {
    n.min(chi + 2).max(chi)
}

pub fn local_chromatic_number(h: &Hypergraph, max_t: usize) -> Result<LocalResult> {
    local_chromatic_number_with(h, max_t, &Budget::unlimited())
}

/// Branch and bound over proper colorings with at most `max_t` colors. The number of
/// distinct colors already present in a neighborhood set can only grow, so a partial coloring
/// is cut as soon as some set reaches the incumbent value.
pub fn local_chromatic_number_with(h: &Hypergraph, max_t: usize, budget: &Budget) -> Result<LocalResult> {
    if h.edge_count() == 0 {
        return Err(Error::Undefined(
            "local chromatic number of a hypergraph without edges".into(),
        ));
    }
    if h.has_singleton_edge() {
        return Err(Error::contract(
            "local chromatic number needs a finite chromatic number",
        ));
    }
    let start = is_t_colorable(h, max_t)
        .ok_or_else(|| Error::contract(format!("max_t = {max_t} is below the chromatic number")))?;
    let start_value = local_value(h, &start)?;

    let n = h.vertex_count();
    let sets = local_neighborhoods(h);
    let mut member_of = vec![Vec::new(); n];
    for (i, s) in sets.iter().enumerate() {
        for v in s.iter() {
            member_of[v].push(i);
        }
    }
    let mut search = LocalSearch {
        watch: EdgeWatch::new(h, max_t),
        order: degree_order(h),
        member_of,
        set_counts: vec![0; sets.len() * max_t],
        distinct: vec![0; sets.len()],
        colors: vec![NONE; n],
        t: max_t,
        best: start_value,
        best_colors: start.colors().to_vec(),
        budget,
    };
    let complete = search.run(0, 0).is_ok();
    let witness = Coloring::new(max_t, search.best_colors).unwrap();
    Ok(LocalResult {
        value: search.best,
        witness_t: witness.colors_used(),
        witness,
        max_t,
        complete,
    })
}

struct LocalSearch<'a, 'b> {
    watch: EdgeWatch<'a>,
    order: Vec<usize>,
    member_of: Vec<Vec<usize>>,
    set_counts: Vec<u32>,
    distinct: Vec<usize>,
    colors: Vec<usize>,
    t: usize,
    best: usize,
    best_colors: Vec<usize>,
    budget: &'b Budget,
}

impl LocalSearch<'_, '_> {
    fn run(&mut self, pos: usize, used: usize) -> std::result::Result<(), Interrupted> {
        if pos == self.order.len() {
            let value = self.distinct.iter().copied().max().unwrap_or(0);
            if value < self.best {
                self.best = value;
                self.best_colors = self.colors.clone();
            }
            return Ok(());
        }
        self.budget.tick()?;
        let v = self.order[pos];
        for c in 0..self.t.min(used + 1) {
            if !self.watch.allows(v, c) {
                continue;
            }
            let mut cut = false;
            for &s in &self.member_of[v] {
                let k = s * self.t + c;
                if self.set_counts[k] == 0 && self.distinct[s] + 1 >= self.best {
                    cut = true;
                    break;
                }
            }
            if cut {
                continue;
            }
            self.watch.assign(v, c);
            self.colors[v] = c;
            for &s in &self.member_of[v] {
                let k = s * self.t + c;
                if self.set_counts[k] == 0 {
                    self.distinct[s] += 1;
                }
                self.set_counts[k] += 1;
            }
            let r = self.run(pos + 1, used.max(c + 1));
            for &s in &self.member_of[v] {
                let k = s * self.t + c;
                self.set_counts[k] -= 1;
                if self.set_counts[k] == 0 {
                    self.distinct[s] -= 1;
                }
            }
            self.watch.unassign(v, c);
            self.colors[v] = NONE;
            r?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneser::{build_kneser, complete_ksubsets};

    fn petersen() -> crate::kneser::KneserStructure {
        build_kneser(&complete_ksubsets(5, 2).unwrap(), 2).unwrap()
    }

    /// c({i,j}) = min(i,j) if <= 3 else 3 (1-based elements and colors).
    fn petersen_min_coloring(k: &crate::kneser::KneserStructure) -> Coloring {
        let colors = (0..k.kg().vertex_count())
            .map(|v| (k.base_edge(v)[0] + 1).min(3) - 1)
            .collect();
        Coloring::new(3, colors).unwrap()
    }

    #[test]
    fn petersen_colorability() {
        let p = petersen();
        assert!(is_t_colorable(p.kg(), 2).is_none());
        let c = is_t_colorable(p.kg(), 3).unwrap();
        assert!(is_proper(p.kg(), &c).unwrap());
        assert_eq!(c.colors_used(), 3);
    }

    #[test]
    fn edgeless_is_one_colorable() {
        let h = Hypergraph::empty(4);
        assert_eq!(is_t_colorable(&h, 1).unwrap().colors(), &[0, 0, 0, 0]);
        assert_eq!(chromatic_number(&h).value, ChromaticValue::Exact(1));
        assert_eq!(chromatic_number(&Hypergraph::empty(0)).value, ChromaticValue::Exact(0));
    }

    #[test]
    fn chromatic_examples() {
        let r = chromatic_number(petersen().kg());
        assert_eq!(r.value, ChromaticValue::Exact(3));
        assert!(is_proper(petersen().kg(), r.witness.as_ref().unwrap()).unwrap());

        let k = build_kneser(&complete_ksubsets(7, 2).unwrap(), 3).unwrap();
        assert_eq!(chromatic_number(k.kg()).value, ChromaticValue::Exact(2));

        let s = Hypergraph::new(2, [vec![0], vec![0, 1]]).unwrap();
        assert_eq!(chromatic_number(&s).value, ChromaticValue::Unbounded);
        assert!(is_t_colorable(&s, 5).is_none());
    }

    #[test]
    fn chromatic_timeout_reports_bounds() {
        let p = petersen();
        let opts = ChromaticOptions {
            budget: Budget::with_nodes(2),
            start: 0,
        };
        match chromatic_number_with(p.kg(), &opts).value {
            ChromaticValue::Bounds { lower, upper } => {
                assert_eq!(lower, 2);
                assert!(upper >= 3);
            }
            other => panic!("expected bounds, got {other:?}"),
        }
    }

    #[test]
    fn enumeration_examples() {
        let e = Hypergraph::new(2, [[0, 1]]).unwrap();
        let canon: Vec<_> = enumerate_proper_colorings(&e, 2, true).collect();
        assert_eq!(canon.len(), 1);
        assert_eq!(canon[0].colors(), &[0, 1]);
        assert_eq!(enumerate_proper_colorings(&e, 2, false).count(), 2);
        assert_eq!(enumerate_proper_colorings(petersen().kg(), 2, true).count(), 0);
        assert_eq!(enumerate_proper_colorings(petersen().kg(), 2, false).count(), 0);
    }

    #[test]
    fn enumeration_counts_match_chromatic_polynomial() {
        // triangle: P(t) = t(t-1)(t-2)
        let tri = Hypergraph::new(3, [[0, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(enumerate_proper_colorings(&tri, 4, false).count(), 24);
        assert_eq!(enumerate_proper_colorings(&tri, 4, true).count(), 1);
        // Petersen: P(3) = 120, so 120 / 3! canonical 3-colorings
        assert_eq!(enumerate_proper_colorings(petersen().kg(), 3, false).count(), 120);
        assert_eq!(enumerate_proper_colorings(petersen().kg(), 3, true).count(), 20);
    }

    #[test]
    fn local_value_examples() {
        let e = Hypergraph::new(2, [[0, 1]]).unwrap();
        assert_eq!(local_value(&e, &Coloring::new(2, vec![0, 1]).unwrap()).unwrap(), 2);

        let p = petersen();
        assert_eq!(local_value(p.kg(), &petersen_min_coloring(&p)).unwrap(), 3);

        let tri = Hypergraph::new(3, [[0, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(local_value(&tri, &Coloring::new(3, vec![0, 1, 2]).unwrap()).unwrap(), 3);

        assert!(matches!(
            local_value(&tri, &Coloring::new(3, vec![0, 0, 1]).unwrap()),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            local_value(&Hypergraph::empty(2), &Coloring::new(1, vec![0, 0]).unwrap()),
            Err(Error::Undefined(_))
        ));
    }

    #[test]
    fn local_chromatic_examples() {
        let e = Hypergraph::new(2, [[0, 1]]).unwrap();
        assert_eq!(local_chromatic_number(&e, 2).unwrap().value, 2);

        let r = local_chromatic_number(petersen().kg(), 4).unwrap();
        assert_eq!(r.value, 3);
        assert!(r.complete);
        assert_eq!(r.max_t, 4);
        assert_eq!(local_value(petersen().kg(), &r.witness).unwrap(), 3);

        let three = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        let r = local_chromatic_number(&three, 3).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.witness_t, 2);

        assert!(local_chromatic_number(petersen().kg(), 2).is_err());
    }

    #[test]
    fn default_cap() {
        assert_eq!(default_local_cap(10, 3), 5);
        assert_eq!(default_local_cap(4, 3), 4);
        assert_eq!(default_local_cap(2, 2), 2);
    }
}
