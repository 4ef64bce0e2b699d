//! Finite posets given by a cover relation.
//!
//! Elements are identified by name and stored in lexicographic order, so the
//! index of an element is stable for a given element set. The reflexive
//! transitive closure of the covers is precomputed as a bit matrix; chain
//! degrees are computed lazily on first use and cached.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default upper bound on the number of elements a poset may have.
pub const DEFAULT_ELEMENT_CAP: usize = 4096;

/// Name of a poset element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ElementId(String);

impl ElementId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::EmptyName);
        }
        Ok(Self(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Fingerprint of a poset, used to reject mixing vectors from different posets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpaceId(u64);

#[derive(Clone, Debug)]
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            words,
            bits: vec![0; words * n],
        }
    }

    fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    fn set(&mut self, r: usize, c: usize) {
        self.bits[r * self.words + c / 64] |= 1 << (c % 64);
    }

    fn or_row_into(&mut self, src: usize, dst: usize) {
        for w in 0..self.words {
            let v = self.bits[src * self.words + w];
            self.bits[dst * self.words + w] |= v;
        }
    }

    fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.bits[r * self.words..(r + 1) * self.words];
        row.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let t = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + t)
            })
        })
    }
}

#[derive(Debug)]
struct Grading {
    violation: Option<(usize, usize)>,
    degree: HashMap<(usize, usize), u32>,
}

/// A finite partially ordered set.
#[derive(Debug)]
pub struct Poset {
    names: Vec<ElementId>,
    index: HashMap<String, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    /// `leq.get(p, q)` iff `p <= q`.
    leq: BitMatrix,
    topo: Vec<usize>,
    id: SpaceId,
    grading: OnceLock<Grading>,
}

impl Clone for Poset {
    fn clone(&self) -> Self {
        Self {
            names: self.names.clone(),
            index: self.index.clone(),
            up: self.up.clone(),
            down: self.down.clone(),
            leq: self.leq.clone(),
            topo: self.topo.clone(),
            id: self.id,
            grading: OnceLock::new(),
        }
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.up == other.up
    }
}

impl Eq for Poset {}

fn sorted_names<S: AsRef<str>>(
    elements: impl IntoIterator<Item = S>,
    cap: usize,
) -> Result<(Vec<ElementId>, HashMap<String, usize>)> {
    let mut set = BTreeSet::new();
    for e in elements {
        let id = ElementId::new(e.as_ref())?;
        if !set.insert(id.clone()) {
            return Err(Error::DuplicateElement(id.0));
        }
    }
    if set.len() > cap {
        return Err(Error::TooLarge {
            size: set.len(),
            cap,
        });
    }
    let names: Vec<ElementId> = set.into_iter().collect();
    let index = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.0.clone(), i))
        .collect();
    Ok((names, index))
}

/// Kahn's algorithm over an edge list; returns a topological order or the
/// smallest index left on a cycle.
fn topological_order(n: usize, up: &[Vec<usize>]) -> std::result::Result<Vec<usize>, usize> {
    let mut indeg = vec![0usize; n];
    for targets in up {
        for &q in targets {
            indeg[q] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(p) = ready.pop_first() {
        order.push(p);
        for &q in &up[p] {
            indeg[q] -= 1;
            if indeg[q] == 0 {
                ready.insert(q);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).find(|&i| indeg[i] > 0).unwrap_or(0))
    }
}

fn closure(n: usize, up: &[Vec<usize>], topo: &[usize]) -> BitMatrix {
    let mut leq = BitMatrix::new(n);
    for &p in topo.iter().rev() {
        leq.set(p, p);
        for &q in &up[p] {
            leq.or_row_into(q, p);
        }
    }
    leq
}

impl Poset {
    /// Builds a poset from its elements and cover pairs `(lower, upper)`,
    /// using [`DEFAULT_ELEMENT_CAP`].
    pub fn from_covers<S, A, B>(
        elements: impl IntoIterator<Item = S>,
        covers: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Self>
    where
        S: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        Self::from_covers_capped(elements, covers, DEFAULT_ELEMENT_CAP)
    }

    pub fn from_covers_capped<S, A, B>(
        elements: impl IntoIterator<Item = S>,
        covers: impl IntoIterator<Item = (A, B)>,
        cap: usize,
    ) -> Result<Self>
    where
        S: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let (names, index) = sorted_names(elements, cap)?;
        let n = names.len();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let mut up = vec![BTreeSet::new(); n];
        for (a, b) in covers {
            let (p, q) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if p == q {
                return Err(Error::SelfCover(names[p].0.clone()));
            }
            up[p].insert(q);
        }
        let up: Vec<Vec<usize>> = up.into_iter().map(|s| s.into_iter().collect()).collect();
        let topo = topological_order(n, &up).map_err(|i| Error::Cycle(names[i].0.clone()))?;
        let leq = closure(n, &up, &topo);
        for p in 0..n {
            for &q in &up[p] {
                if let Some(&r) = up[p].iter().find(|&&r| r != q && leq.get(r, q)) {
                    return Err(Error::NotACover {
                        lower: names[p].0.clone(),
                        upper: names[q].0.clone(),
                        via: names[r].0.clone(),
                    });
                }
            }
        }
        Ok(Self::assemble(names, index, up, topo, leq))
    }

    /// Builds a poset from an arbitrary strict relation `lower < upper`
    /// (not necessarily transitive, not necessarily covers); the order is its
    /// transitive closure and the covers are derived from it.
    pub fn from_relation_capped<S, A, B>(
        elements: impl IntoIterator<Item = S>,
        relation: impl IntoIterator<Item = (A, B)>,
        cap: usize,
    ) -> Result<Self>
    where
        S: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let (names, index) = sorted_names(elements, cap)?;
        let n = names.len();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let mut edges = vec![BTreeSet::new(); n];
        for (a, b) in relation {
            let (p, q) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if p == q {
                return Err(Error::Cycle(names[p].0.clone()));
            }
            edges[p].insert(q);
        }
        let edges: Vec<Vec<usize>> = edges.into_iter().map(|s| s.into_iter().collect()).collect();
        let topo = topological_order(n, &edges).map_err(|i| Error::Cycle(names[i].0.clone()))?;
        let leq = closure(n, &edges, &topo);
        // q covers p iff q is strictly above p and not strictly above any
        // other strict upper bound of p.
        let up = (0..n)
            .map(|p| {
                let mut shadow = vec![false; n];
                for r in leq.row_ones(p).filter(|&r| r != p) {
                    for s in leq.row_ones(r).filter(|&s| s != r) {
                        shadow[s] = true;
                    }
                }
                leq.row_ones(p).filter(|&q| q != p && !shadow[q]).collect()
            })
            .collect();
        Ok(Self::assemble(names, index, up, topo, leq))
    }

    fn assemble(
        names: Vec<ElementId>,
        index: HashMap<String, usize>,
        up: Vec<Vec<usize>>,
        topo: Vec<usize>,
        leq: BitMatrix,
    ) -> Self {
        let n = names.len();
        let mut down = vec![Vec::new(); n];
        for (p, targets) in up.iter().enumerate() {
            for &q in targets {
                down[q].push(p);
            }
        }
        let mut h = DefaultHasher::new();
        names.hash(&mut h);
        up.hash(&mut h);
        Self {
            names,
            index,
            up,
            down,
            leq,
            topo,
            id: SpaceId(h.finish()),
            grading: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn space_id(&self) -> SpaceId {
        self.id
    }

    /// Elements in canonical (lexicographic) order.
    pub fn elements(&self) -> &[ElementId] {
        &self.names
    }

    pub fn name(&self, ix: usize) -> &ElementId {
        &self.names[ix]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, p: &str, q: &str) -> Result<bool> {
        Ok(self.leq_ix(self.index_of(p)?, self.index_of(q)?))
    }

    pub fn leq_ix(&self, p: usize, q: usize) -> bool {
        self.leq.get(p, q)
    }

    /// Elements `q >= p`, in index order.
    pub fn upset(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        self.leq.row_ones(p)
    }

    /// Elements covering `p`.
    pub fn upper_covers(&self, p: usize) -> &[usize] {
        &self.up[p]
    }

    /// Elements covered by `p`.
    pub fn lower_covers(&self, p: usize) -> &[usize] {
        &self.down[p]
    }

    /// All cover pairs `(lower, upper)` in index order.
    pub fn cover_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(p, qs)| qs.iter().map(move |&q| (p, q)))
    }

    /// Every saturated chain `p = r0 ⋖ r1 ⋖ … ⋖ rk = q`.
    pub fn maximal_chains(&self, p: &str, q: &str) -> Result<Vec<Vec<ElementId>>> {
        let (pi, qi) = (self.index_of(p)?, self.index_of(q)?);
        self.require_leq(pi, qi)?;
        let mut out = Vec::new();
        let mut path = vec![pi];
        self.extend_chains(qi, &mut path, &mut out);
        Ok(out
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.names[i].clone()).collect())
            .collect())
    }

    fn extend_chains(&self, target: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().expect("path is never empty");
        if last == target {
            out.push(path.clone());
            return;
        }
        for &r in &self.up[last] {
            if self.leq.get(r, target) {
                path.push(r);
                self.extend_chains(target, path, out);
                path.pop();
            }
        }
    }

    fn require_leq(&self, p: usize, q: usize) -> Result<()> {
        if self.leq.get(p, q) {
            Ok(())
        } else {
            Err(Error::Incomparable {
                lower: self.names[p].0.clone(),
                upper: self.names[q].0.clone(),
            })
        }
    }

    fn grading(&self) -> &Grading {
        self.grading.get_or_init(|| {
            let n = self.len();
            let mut pos = vec![0; n];
            for (i, &p) in self.topo.iter().enumerate() {
                pos[p] = i;
            }
            let mut shortest = vec![u32::MAX; n];
            let mut longest = vec![0u32; n];
            let mut degree = HashMap::new();
            let mut violation: Option<(usize, usize)> = None;
            for p in 0..n {
                let reach: Vec<usize> = self.leq.row_ones(p).collect();
                for &q in &reach {
                    shortest[q] = u32::MAX;
                    longest[q] = 0;
                }
                shortest[p] = 0;
                for &r in &self.topo[pos[p]..] {
                    if !self.leq.get(p, r) {
                        continue;
                    }
                    let (lo, hi) = (shortest[r], longest[r]);
                    for &s in &self.up[r] {
                        shortest[s] = shortest[s].min(lo + 1);
                        longest[s] = longest[s].max(hi + 1);
                    }
                }
                for &q in &reach {
                    if shortest[q] != longest[q] {
                        if violation.is_none_or(|v| (p, q) < v) {
                            violation = Some((p, q));
                        }
                    } else {
                        degree.insert((p, q), longest[q]);
                    }
                }
            }
            if violation.is_some() {
                degree.clear();
            }
            Grading { violation, degree }
        })
    }

    /// True iff all maximal chains between any comparable pair have equal length.
    pub fn is_jordan_holder(&self) -> bool {
        self.grading().violation.is_none()
    }

    /// The first pair `(p, q)`, in index order, with maximal chains of
    /// different lengths.
    pub fn jordan_holder_violation(&self) -> Option<(ElementId, ElementId)> {
        self.grading()
            .violation
            .map(|(p, q)| (self.names[p].clone(), self.names[q].clone()))
    }

    /// Common length of the maximal chains from `p` to `q`.
    pub fn chain_degree(&self, p: &str, q: &str) -> Result<u32> {
        self.chain_degree_ix(self.index_of(p)?, self.index_of(q)?)
    }

    pub fn chain_degree_ix(&self, p: usize, q: usize) -> Result<u32> {
        self.require_leq(p, q)?;
        let g = self.grading();
        if let Some((a, b)) = g.violation {
            return Err(Error::NotJordanHolder {
                lower: self.names[a].0.clone(),
                upper: self.names[b].0.clone(),
            });
        }
        Ok(g.degree[&(p, q)])
    }
}
