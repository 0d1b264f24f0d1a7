//! Combinatorial Z_q-Fan check on the barycentric subdivision of `Z_q^{*n}`.
//!
//! Vertices of `sd(Z_q^{*n})` are the nonzero vectors of `(Z_q ∪ {0})^n`; its simplices are
//! chains under domination. A labeling sends each vertex to `(sign, abs)` in
//! `Z_q × {1..m}`. It is equivariant when rotating every sign of a vector rotates the label sign,
//! and proper when two comparable vectors never get equal `abs` with different signs (so the
//! labeling is a simplicial map into `Z_q^{*m}`).
//!
//! An alternating chain is a full chain `X_1 ⊏ ... ⊏ X_n` whose labels, listed by increasing
//! `abs`, have pairwise distinct `abs` and consecutive distinct signs. The order of the labels
//! along the chain is not constrained.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::signed::SignedVector;

pub const DEFAULT_VERTEX_CAP: usize = 1 << 20;
pub const DEFAULT_LABELING_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Label {
    /// `1..=q`
    pub sign: usize,
    /// `1..=m`
    pub abs: usize,
}

impl Label {
    fn rotated(self, q: usize, k: usize) -> Label {
        Label {
            sign: (self.sign - 1 + k) % q + 1,
            abs: self.abs,
        }
    }
}

/// The vertex set of `sd(Z_q^{*n})` with its free Z_q orbit structure.
#[derive(Clone, Debug)]
pub struct SdComplex {
    q: usize,
    n: usize,
    vectors: Vec<SignedVector>,
    index: HashMap<Vec<usize>, usize>,
    /// `orbit[i] = (o, k)` with `vectors[i] = ω^k · vectors[reps[o]]`.
    orbit: Vec<(usize, usize)>,
    reps: Vec<usize>,
    /// Strictly comparable pairs `(i, j)` with `vectors[i] ⊏ vectors[j]`.
    comparable: Vec<(usize, usize)>,
}

impl SdComplex {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vectors(&self) -> &[SignedVector] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &SignedVector {
        &self.vectors[i]
    }

    pub fn position(&self, entries: &[usize]) -> Option<usize> {
        self.index.get(entries).copied()
    }

    pub fn orbit_count(&self) -> usize {
        self.reps.len()
    }

    /// Lexicographically least vector of each orbit.
    pub fn orbit_representatives(&self) -> impl Iterator<Item = &SignedVector> + '_ {
        self.reps.iter().map(|&i| &self.vectors[i])
    }

    pub fn orbit_of(&self, i: usize) -> (usize, usize) {
        self.orbit[i]
    }

    pub fn comparable_pairs(&self) -> &[(usize, usize)] {
        &self.comparable
    }
}

/// All `(q+1)^n - 1` nonzero vectors in lexicographic order (`0 < 1 < ... < q`).
pub fn sd_vertices(q: usize, n: usize) -> Result<SdComplex> {
    sd_vertices_capped(q, n, DEFAULT_VERTEX_CAP)
}

pub fn sd_vertices_capped(q: usize, n: usize, cap: usize) -> Result<SdComplex> {
    if q < 2 || n < 1 {
        return Err(Error::contract(format!("need q >= 2 and n >= 1, got q = {q}, n = {n}")));
    }
    let total = (q + 1)
        .checked_pow(n as u32)
        .filter(|&t| t - 1 <= cap)
        .ok_or_else(|| Error::resource(format!("(q+1)^n - 1 vertices exceed the cap {cap}")))?;

    let mut vectors = Vec::with_capacity(total - 1);
    for code in 1..total {
        let mut entries = vec![0; n];
        let mut c = code;
        for slot in entries.iter_mut().rev() {
            *slot = c % (q + 1);
            c /= q + 1;
        }
        vectors.push(SignedVector::from_parts(q, entries));
    }
    let index: HashMap<Vec<usize>, usize> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| (v.entries().to_vec(), i))
        .collect();

    let mut orbit = vec![(usize::MAX, 0); vectors.len()];
    let mut reps = Vec::new();
    for i in 0..vectors.len() {
        if orbit[i].0 != usize::MAX {
            continue;
        }
        let o = reps.len();
        reps.push(i);
        let mut w = vectors[i].clone();
        for k in 0..q {
            let j = index[w.entries()];
            assert!(k == 0 || j != i, "Z_q action fixes {:?}", vectors[i]);
            orbit[j] = (o, k);
            w = w.rotated();
        }
    }
    assert_eq!(reps.len() * q, vectors.len(), "orbits must all have size q");

    let mut comparable = Vec::new();
    for (i, x) in vectors.iter().enumerate() {
        for (j, y) in vectors.iter().enumerate() {
            if i != j && x.is_dominated_by(y) {
                comparable.push((i, j));
            }
        }
    }
    Ok(SdComplex {
        q,
        n,
        vectors,
        index,
        orbit,
        reps,
        comparable,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    q: usize,
    n: usize,
    m: usize,
    assignment: Vec<Label>,
}

impl Labeling {
    /// A total labeling; `None` entries are a contract violation.
    pub fn new(sd: &SdComplex, m: usize, assignment: Vec<Option<Label>>) -> Result<Self> {
        if assignment.len() != sd.vectors.len() {
            return Err(Error::contract(format!(
                "labeling covers {} of {} vectors",
                assignment.len(),
                sd.vectors.len()
            )));
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(i, l)| {
                let l = l.ok_or_else(|| Error::contract(format!("no label for {:?}", sd.vectors[i].entries())))?;
                if l.sign == 0 || l.sign > sd.q || l.abs == 0 || l.abs > m {
                    return Err(Error::contract(format!("label {l:?} outside Z_{} x 1..{m}", sd.q)));
                }
                Ok(l)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Labeling {
            q: sd.q,
            n: sd.n,
            m,
            assignment,
        })
    }

    /// The equivariant labeling determined by one label per orbit representative.
    pub fn from_orbit_choices(sd: &SdComplex, m: usize, choices: &[Label]) -> Result<Self> {
        if choices.len() != sd.orbit_count() {
            return Err(Error::contract(format!(
                "{} choices for {} orbits",
                choices.len(),
                sd.orbit_count()
            )));
        }
        let assignment = sd
            .orbit
            .iter()
            .map(|&(o, k)| Some(choices[o].rotated(sd.q, k)))
            .collect();
        Labeling::new(sd, m, assignment)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn label(&self, i: usize) -> Label {
        self.assignment[i]
    }

    pub fn labels(&self) -> &[Label] {
        &self.assignment
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proper,
    /// `label(ω·X) ≠ ω·label(X)` for `X = vector`, which lies in the orbit of `orbit_rep`.
    NotEquivariant {
        vector: usize,
        orbit_rep: usize,
    },
    /// Comparable `lower ⊏ upper` with equal `abs` and different signs.
    Improper {
        lower: usize,
        upper: usize,
    },
}

fn check_shape(sd: &SdComplex, l: &Labeling) -> Result<()> {
    if l.q != sd.q || l.n != sd.n || l.assignment.len() != sd.vectors.len() {
        return Err(Error::contract("labeling does not match the complex"));
    }
    Ok(())
}

pub fn check_labeling(sd: &SdComplex, l: &Labeling) -> Result<Verdict> {
    check_shape(sd, l)?;
    for (i, x) in sd.vectors.iter().enumerate() {
        let j = sd.index[x.rotated().entries()];
        if l.assignment[j] != l.assignment[i].rotated(sd.q, 1) {
            return Ok(Verdict::NotEquivariant {
                vector: i,
                orbit_rep: sd.reps[sd.orbit[i].0],
            });
        }
    }
    Ok(first_conflict(sd, l)
        .map(|(lower, upper)| Verdict::Improper { lower, upper })
        .unwrap_or(Verdict::Proper))
}

fn first_conflict(sd: &SdComplex, l: &Labeling) -> Option<(usize, usize)> {
    sd.comparable.iter().copied().find(|&(i, j)| {
        let (a, b) = (l.assignment[i], l.assignment[j]);
        a.abs == b.abs && a.sign != b.sign
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingChain {
    /// Positions in the complex, `|X_i| = i`.
    pub vectors: Vec<usize>,
    pub labels: Vec<Label>,
}

/// Labels sorted by `abs` have distinct `abs` and consecutive distinct signs.
pub fn labels_alternate(labels: &[Label]) -> bool {
    let mut sorted = labels.to_vec();
    sorted.sort_by_key(|l| l.abs);
    sorted.windows(2).all(|w| w[0].abs < w[1].abs && w[0].sign != w[1].sign)
}

/// Labels along the chain have increasing `abs` and consecutive distinct signs.
pub fn labels_alternate_in_chain_order(labels: &[Label]) -> bool {
    labels.windows(2).all(|w| w[0].abs < w[1].abs && w[0].sign != w[1].sign)
}

pub fn find_alternating_chain(sd: &SdComplex, l: &Labeling) -> Result<Option<AlternatingChain>> {
    if check_labeling(sd, l)? != Verdict::Proper {
        return Err(Error::contract(
            "alternating chain search needs a proper equivariant labeling",
        ));
    }
    Ok(search_chain(sd, l, labels_alternate))
}

/// Depth-first search over full chains, extending one zero coordinate at a time.
fn search_chain(sd: &SdComplex, l: &Labeling, accept: fn(&[Label]) -> bool) -> Option<AlternatingChain> {
    let q = sd.q;
    let n = sd.n;
    let mut chain = Vec::with_capacity(n);
    let mut used_abs = vec![false; l.m + 1];

    fn extend(
        sd: &SdComplex,
        l: &Labeling,
        q: usize,
        n: usize,
        chain: &mut Vec<usize>,
        used_abs: &mut [bool],
        accept: fn(&[Label]) -> bool,
    ) -> bool {
        if chain.len() == n {
            let labels: Vec<Label> = chain.iter().map(|&i| l.assignment[i]).collect();
            return accept(&labels);
        }
        let base: Vec<usize> = match chain.last() {
            Some(&i) => sd.vectors[i].entries().to_vec(),
            None => vec![0; n],
        };
        for pos in 0..n {
            if base[pos] != 0 {
                continue;
            }
            for sym in 1..=q {
                let mut next = base.clone();
                next[pos] = sym;
                let i = sd.index[&next];
                let abs = l.assignment[i].abs;
                if used_abs[abs] {
                    continue;
                }
                used_abs[abs] = true;
                chain.push(i);
                if extend(sd, l, q, n, chain, used_abs, accept) {
                    return true;
                }
                chain.pop();
                used_abs[abs] = false;
            }
        }
        false
    }

    if extend(sd, l, q, n, &mut chain, &mut used_abs, accept) {
        let labels = chain.iter().map(|&i| l.assignment[i]).collect();
        Some(AlternatingChain { vectors: chain, labels })
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sampling {
    pub seed: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitLabel {
    /// Orbit representative, symbols `0..=q`.
    pub representative: Vec<usize>,
    pub label: Label,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub q: usize,
    pub n: usize,
    pub m: usize,
    pub orbits: usize,
    pub exhaustive: bool,
    pub sampling: Option<Sampling>,
    pub labelings: u64,
    pub proper: u64,
    pub with_chain: u64,
    /// Proper labelings with a chain whose labels alternate in chain order as well.
    pub with_chain_order_alternation: u64,
    pub violations: u64,
    /// First proper labeling without an alternating chain, if any.
    pub counterexample: Option<Vec<OrbitLabel>>,
}

/// Enumerates (or samples) equivariant labelings by free choice of a label on every orbit
/// representative and checks that each proper one has an alternating chain.
pub fn exhaustive_fan_check(
    q: usize,
    n: usize,
    m: usize,
    sampling: Option<Sampling>,
    labeling_cap: u64,
) -> Result<FanReport> {
    if m == 0 {
        return Err(Error::contract("m must be at least 1"));
    }
    let sd = sd_vertices(q, n)?;
    let orbits = sd.orbit_count();
    let per_orbit = q * m;
    let all_labels: Vec<Label> = (1..=q)
        .flat_map(|sign| (1..=m).map(move |abs| Label { sign, abs }))
        .collect();
    let total = (per_orbit as u64).checked_pow(orbits as u32);

    let mut report = FanReport {
        q,
        n,
        m,
        orbits,
        exhaustive: sampling.is_none(),
        sampling,
        labelings: 0,
        proper: 0,
        with_chain: 0,
        with_chain_order_alternation: 0,
        violations: 0,
        counterexample: None,
    };
    let visit = |choice_idx: &[usize], report: &mut FanReport| -> Result<()> {
        let choices: Vec<Label> = choice_idx.iter().map(|&c| all_labels[c]).collect();
        let l = Labeling::from_orbit_choices(&sd, m, &choices)?;
        report.labelings += 1;
        if first_conflict(&sd, &l).is_some() {
            return Ok(());
        }
        report.proper += 1;
        if search_chain(&sd, &l, labels_alternate).is_some() {
            report.with_chain += 1;
        } else {
            report.violations += 1;
            if report.counterexample.is_none() {
                report.counterexample = Some(
                    sd.orbit_representatives()
                        .zip(&choices)
                        .map(|(v, &label)| OrbitLabel {
                            representative: v.entries().to_vec(),
                            label,
                        })
                        .collect(),
                );
            }
        }
        if search_chain(&sd, &l, labels_alternate_in_chain_order).is_some() {
            report.with_chain_order_alternation += 1;
        }
        Ok(())
    };

    match sampling {
        None => {
            match total {
                Some(t) if t <= labeling_cap => {}
                _ => {
                    return Err(Error::resource(format!(
                        "{per_orbit}^{orbits} labelings exceed the cap {labeling_cap}; use sampling"
                    )))
                }
            }
            let mut idx = vec![0usize; orbits];
            loop {
                visit(&idx, &mut report)?;
                // mixed-radix increment, last orbit fastest
                let mut k = orbits;
                loop {
                    if k == 0 {
                        return Ok(report);
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < per_orbit {
                        break;
                    }
                    idx[k] = 0;
                }
            }
        }
        Some(Sampling { seed, count }) => {
            let mut idx = vec![0usize; orbits];
            for i in 0..count {
                // labeling i depends on (seed, i) only
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i);
                for slot in idx.iter_mut() {
                    *slot = rng.gen_range(0..per_orbit);
                }
                visit(&idx, &mut report)?;
            }
            Ok(report)
        }
    }
}
