#![allow(dead_code)]

use std::collections::BTreeSet;

use incidence_calculus::text::parse_greechie;
use incidence_calculus::{GreechieLogic, Poset, SimplicialComplex, DEFAULT_ELEMENT_CAP};
use rand::Rng;

pub const GREECHIE_CORPUS: &[(&str, &str)] = &[
    ("single_2", include_str!("../../../../corpus/single_2.gdl")),
    ("single_3", include_str!("../../../../corpus/single_3.gdl")),
    ("single_4", include_str!("../../../../corpus/single_4.gdl")),
    ("single_5", include_str!("../../../../corpus/single_5.gdl")),
    (
        "two_blocks",
        include_str!("../../../../corpus/two_blocks.gdl"),
    ),
    ("chain3", include_str!("../../../../corpus/chain3.gdl")),
    ("loop4", include_str!("../../../../corpus/loop4.gdl")),
    ("loop5", include_str!("../../../../corpus/loop5.gdl")),
    (
        "wide_pair",
        include_str!("../../../../corpus/wide_pair.gdl"),
    ),
];

pub fn corpus_logic(text: &str) -> GreechieLogic {
    GreechieLogic::validate_logic(parse_greechie(text).unwrap()).unwrap()
}

pub fn vertex_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

/// Downward closure of 1..=4 random generator sets over at most
/// `max_vertices` vertices.
pub fn random_complex<R: Rng>(rng: &mut R, max_vertices: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..=max_vertices);
    let names = vertex_names(n);
    let gens: Vec<Vec<String>> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let mask = rng.gen_range(1u32..(1 << n));
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| names[i].clone())
                .collect()
        })
        .collect();
    SimplicialComplex::close_downward(&names, &gens).unwrap()
}

/// The full simplex on `n` vertices.
pub fn full_simplex(n: usize) -> SimplicialComplex {
    let names = vertex_names(n);
    SimplicialComplex::close_downward(&names, [&names]).unwrap()
}

/// Order, covers and saturated chains computed from scratch, for checking
/// the library's poset machinery.
pub struct BruteOrder {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
}

impl BruteOrder {
    /// Floyd–Warshall closure of `edges` on `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in edges {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Self { n, leq }
    }

    pub fn from_poset(p: &Poset) -> Self {
        let n = p.len();
        let leq = (0..n)
            .map(|i| (0..n).map(|j| p.leq_ix(i, j)).collect())
            .collect();
        Self { n, leq }
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && !(0..self.n).any(|r| self.lt(a, r) && self.lt(r, b))
    }

    /// All saturated chains from `a` to `b`, by depth-first search.
    pub fn chains(&self, a: usize, b: usize) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        let mut path = vec![a];
        self.dfs(b, &mut path, &mut out);
        out
    }

    fn dfs(&self, b: usize, path: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == b {
            out.insert(path.clone());
            return;
        }
        for r in 0..self.n {
            if self.covers(last, r) && self.leq[r][b] {
                path.push(r);
                self.dfs(b, path, out);
                path.pop();
            }
        }
    }

    /// Lengths of all saturated chains from `a` to `b`.
    pub fn chain_lengths(&self, a: usize, b: usize) -> BTreeSet<usize> {
        self.chains(a, b).iter().map(|c| c.len() - 1).collect()
    }
}

/// A poset on names `e00..` from a random relation that only points upward
/// in index order (hence acyclic).
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> (Poset, Vec<(usize, usize)>) {
    let names: Vec<String> = (0..n).map(|i| format!("e{i:02}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    let rel: Vec<(&str, &str)> = edges
        .iter()
        .map(|&(i, j)| (names[i].as_str(), names[j].as_str()))
        .collect();
    let poset = Poset::from_relation_capped(&names, rel, DEFAULT_ELEMENT_CAP).unwrap();
    (poset, edges)
}
