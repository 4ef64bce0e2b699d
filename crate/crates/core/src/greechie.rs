//! Atomic Greechie logics given as pastings of finite Boolean blocks.
//!
//! A block is determined by its atoms; its elements are the subsets of its
//! atom set, with joins given by unions. Two blocks may share at most one
//! atom `v`, in which case they also share its orthocomplement `v'`. The
//! proper elements (everything except 0 and 1) form a Jordan–Hölder poset,
//! and the border operator of the block complex is pushed forward along the
//! join map `f` to a border operator on that poset.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::chain::LinearOperator;
use crate::error::{Error, Result};
use crate::poset::{ElementId, Poset, DEFAULT_ELEMENT_CAP};
use crate::scalar::Scalar;
use crate::simplicial::{boundary_faces, Simplex, SimplicialComplex};
use crate::sparse::SparseVec;

/// Largest block (in atoms) whose subsets are enumerated.
const MAX_BLOCK_ATOMS: usize = 24;

/// Separator used in the names of joins of atoms.
pub const JOIN: &str = "∨";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreechieLogic {
    /// Atom positions of each block, sorted.
    blocks: Vec<Simplex>,
    /// Atom names in sign order.
    atoms: Vec<String>,
    atom_index: HashMap<String, usize>,
    warnings: Vec<String>,
}

impl GreechieLogic {
    /// Checks the pasting conditions and builds the logic; atoms are ordered
    /// lexicographically.
    pub fn validate_logic<S, I, J>(blocks: I) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = S>,
    {
        let named: Vec<Vec<String>> = blocks
            .into_iter()
            .map(|b| b.into_iter().map(|a| a.as_ref().to_string()).collect())
            .collect();
        for (i, b) in named.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for a in b {
                if a.is_empty() {
                    return Err(Error::EmptyName);
                }
                if !seen.insert(a) {
                    return Err(Error::DuplicateVertex(a.clone()));
                }
            }
            if seen.len() < 2 {
                return Err(Error::DegenerateBlock { index: i });
            }
        }
        let atoms: BTreeSet<&String> = named.iter().flatten().collect();
        let atoms: Vec<String> = atoms.into_iter().cloned().collect();
        let atom_index: HashMap<String, usize> = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        let blocks: Vec<Simplex> = named
            .iter()
            .map(|b| {
                let mut s: Simplex = b.iter().map(|a| atom_index[a]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if blocks[i] == blocks[j] {
                    return Err(Error::DuplicateBlock {
                        first: i,
                        second: j,
                    });
                }
                let shared: Vec<String> = blocks[i]
                    .iter()
                    .filter(|a| blocks[j].contains(a))
                    .map(|&a| atoms[a].clone())
                    .collect();
                if shared.len() >= 2 {
                    return Err(Error::PastingViolation {
                        first: i,
                        second: j,
                        shared,
                    });
                }
            }
        }
        let warnings = blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.len() == 2)
            .map(|(i, b)| {
                format!(
                    "block {i} {{{},{}}} has two atoms: its proper elements are atoms and each is the other's complement",
                    atoms[b[0]], atoms[b[1]]
                )
            })
            .collect();
        Ok(Self {
            blocks,
            atoms,
            atom_index,
            warnings,
        })
    }

    /// Re-expresses the logic over a new total order of its atoms; this
    /// order fixes the signs of the border operator.
    pub fn with_vertex_order<S: AsRef<str>>(
        &self,
        order: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let order: Vec<String> = order.into_iter().map(|s| s.as_ref().to_string()).collect();
        let index: HashMap<String, usize> = order
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        if index.len() != order.len()
            || order.len() != self.atoms.len()
            || self.atoms.iter().any(|a| !index.contains_key(a))
        {
            return Err(Error::BadVertexOrder(order.join(" ")));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut s: Simplex = b.iter().map(|&a| index[&self.atoms[a]]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        Ok(Self {
            blocks,
            atoms: order,
            atom_index: index,
            warnings: self.warnings.clone(),
        })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn blocks(&self) -> &[Simplex] {
        &self.blocks
    }

    pub fn block_atoms(&self, i: usize) -> Vec<&str> {
        self.blocks[i]
            .iter()
            .map(|&a| self.atoms[a].as_str())
            .collect()
    }

    /// Diagnostics for admissible but degenerate input (two-atom blocks).
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn atom(&self, name: &str) -> Result<usize> {
        self.atom_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    fn check_block_sizes(&self) -> Result<()> {
        if let Some(b) = self.blocks.iter().find(|b| b.len() > MAX_BLOCK_ATOMS) {
            return Err(Error::TooLarge {
                size: (1usize << MAX_BLOCK_ATOMS.min(b.len())) - 2,
                cap: (1usize << MAX_BLOCK_ATOMS) - 2,
            });
        }
        Ok(())
    }

    /// Nonempty proper subsets of each block's atoms, block by block.
    fn proper_subsets(&self, block: usize) -> impl Iterator<Item = Simplex> + '_ {
        let atoms = &self.blocks[block];
        let full = (1u64 << atoms.len()) - 1;
        (1..full).map(move |mask| {
            atoms
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &a)| a)
                .collect()
        })
    }

    /// The complex whose simplices are the nonempty proper subsets of each
    /// block's atom set.
    pub fn block_complex(&self) -> Result<SimplicialComplex> {
        self.check_block_sizes()?;
        let simplices: Vec<Vec<&str>> = (0..self.blocks.len())
            .flat_map(|i| self.proper_subsets(i))
            .map(|s| s.iter().map(|&a| self.atoms[a].as_str()).collect())
            .collect();
        SimplicialComplex::new(self.atoms.iter().map(String::as_str), simplices)
    }

    pub fn proper_poset(&self) -> Result<ProperPoset> {
        self.proper_poset_capped(DEFAULT_ELEMENT_CAP)
    }

    /// Builds the poset of proper elements, identifying shared atoms and
    /// the complements of shared atoms across blocks.
    pub fn proper_poset_capped(&self, cap: usize) -> Result<ProperPoset> {
        self.check_block_sizes()?;
        let estimate: usize = self.blocks.iter().map(|b| (1usize << b.len()) - 2).sum();
        // Each element has at most one representation per block.
        if estimate > cap.saturating_mul(self.blocks.len().max(1)) {
            return Err(Error::TooLarge {
                size: estimate,
                cap,
            });
        }
        let complex = self.block_complex()?;
        let simplices: Vec<Simplex> = complex.simplices().cloned().collect();
        let slot: HashMap<&Simplex, usize> =
            simplices.iter().enumerate().map(|(i, s)| (s, i)).collect();

        let mut uf = UnionFind::new(simplices.len());
        let mut complement_of: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); simplices.len()];
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                if let Some(&v) = self.blocks[i].iter().find(|a| self.blocks[j].contains(a)) {
                    let ci: Simplex = self.blocks[i].iter().copied().filter(|&a| a != v).collect();
                    let cj: Simplex = self.blocks[j].iter().copied().filter(|&a| a != v).collect();
                    let (si, sj) = (slot[&ci], slot[&cj]);
                    complement_of[si].insert(v);
                    complement_of[sj].insert(v);
                    uf.union(si, sj);
                }
            }
        }

        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for s in 0..simplices.len() {
            classes.entry(uf.find(s)).or_default().push(s);
        }
        if classes.len() > cap {
            return Err(Error::TooLarge {
                size: classes.len(),
                cap,
            });
        }
        // Names depend only on atom names, not on the sign order.
        let mut class_name: HashMap<usize, String> = HashMap::new();
        for (&root, members) in &classes {
            let name = if members.len() == 1 {
                let s = &simplices[members[0]];
                let mut names: Vec<&str> = s.iter().map(|&a| self.atoms[a].as_str()).collect();
                names.sort_unstable();
                names.join(JOIN)
            } else {
                let v = members
                    .iter()
                    .flat_map(|&m| complement_of[m].iter().map(|&v| self.atoms[v].as_str()))
                    .min()
                    .expect("only complements of shared atoms are identified");
                format!("{v}'")
            };
            class_name.insert(root, name);
        }

        let mut relation: BTreeSet<(usize, usize)> = BTreeSet::new();
        for i in 0..self.blocks.len() {
            for t in self.proper_subsets(i) {
                let upper = uf.find(slot[&t]);
                for (face, _) in boundary_faces(&t) {
                    relation.insert((uf.find(slot[&face]), upper));
                }
            }
        }
        let poset = Poset::from_relation_capped(
            class_name.values(),
            relation
                .iter()
                .map(|(lo, hi)| (&class_name[lo], &class_name[hi])),
            cap,
        )?;

        let mut elements: Vec<ProperElement> = poset
            .elements()
            .iter()
            .map(|id| ProperElement {
                id: id.clone(),
                representations: Vec::new(),
            })
            .collect();
        let mut element_of = HashMap::new();
        for (s, simplex) in simplices.iter().enumerate() {
            let e = poset.index_of(&class_name[&uf.find(s)])?;
            element_of.insert(simplex.clone(), e);
        }
        for i in 0..self.blocks.len() {
            for s in self.proper_subsets(i) {
                elements[element_of[&s]].representations.push((i, s));
            }
        }
        Ok(ProperPoset {
            logic: self.clone(),
            complex,
            poset,
            elements,
            element_of,
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // Smaller root wins so class roots do not depend on union order.
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

/// A proper element of the logic with every way of writing it as a subset
/// of some block's atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperElement {
    pub id: ElementId,
    /// `(block index, atom positions)` pairs.
    pub representations: Vec<(usize, Simplex)>,
}

/// The proper-element poset of a logic together with its block complex and
/// the join map from simplices to elements.
#[derive(Clone, Debug)]
pub struct ProperPoset {
    logic: GreechieLogic,
    complex: SimplicialComplex,
    poset: Poset,
    elements: Vec<ProperElement>,
    element_of: HashMap<Simplex, usize>,
}

impl ProperPoset {
    pub fn logic(&self) -> &GreechieLogic {
        &self.logic
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn block_complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Indexed like the poset's elements.
    pub fn elements(&self) -> &[ProperElement] {
        &self.elements
    }

    pub fn element(&self, ix: usize) -> &ProperElement {
        &self.elements[ix]
    }

    /// `f(s) = ∨ {v : v ∈ s}`, as a poset index.
    pub fn f_map(&self, simplex: &[usize]) -> Result<usize> {
        self.element_of
            .get(simplex)
            .copied()
            .ok_or_else(|| Error::NotASimplex(self.complex.simplex_name(simplex)))
    }

    /// [`Self::f_map`] on a simplex given by atom names.
    pub fn f_map_named<S: AsRef<str>>(
        &self,
        atoms: impl IntoIterator<Item = S>,
    ) -> Result<&ElementId> {
        let s = self.complex.simplex(atoms)?;
        Ok(&self.elements[self.f_map(&s)?].id)
    }

    /// Simplices of the block complex mapped onto element `ix`.
    pub fn preimages(&self, ix: usize) -> Vec<&Simplex> {
        let set: BTreeSet<&Simplex> = self.elements[ix]
            .representations
            .iter()
            .map(|(_, s)| s)
            .collect();
        set.into_iter().collect()
    }

    /// `#_i p`: the number of atoms of block `i` below `p`.
    pub fn block_count(&self, block: usize, ix: usize) -> Result<usize> {
        self.elements[ix]
            .representations
            .iter()
            .find(|(b, _)| *b == block)
            .map(|(_, s)| s.len())
            .ok_or_else(|| Error::NotInBlock {
                element: self.elements[ix].id.to_string(),
                block,
            })
    }

    /// `#_i q - #_i p` in a block where both are represented with the atoms
    /// of `p` among those of `q`; fails unless all such blocks agree.
    pub fn block_degree(&self, p: usize, q: usize) -> Result<u32> {
        let (pn, qn) = (
            self.elements[p].id.to_string(),
            self.elements[q].id.to_string(),
        );
        if !self.poset.leq_ix(p, q) {
            return Err(Error::Incomparable {
                lower: pn,
                upper: qn,
            });
        }
        let mut degree = None;
        for (bp, sp) in &self.elements[p].representations {
            for (bq, sq) in &self.elements[q].representations {
                if bp == bq && sp.iter().all(|a| sq.contains(a)) {
                    let d = (sq.len() - sp.len()) as u32;
                    match degree {
                        None => degree = Some(d),
                        Some(e) if e != d => {
                            return Err(Error::InconsistentBlockDegree {
                                lower: pn,
                                upper: qn,
                            })
                        }
                        _ => {}
                    }
                }
            }
        }
        degree.ok_or(Error::InconsistentBlockDegree {
            lower: pn,
            upper: qn,
        })
    }

    /// `d|p⟩ = Σ_{f(s) = p} f(d_K s)` with `d_K` the alternating border of
    /// the block complex.
    pub fn border<T: Scalar>(&self) -> LinearOperator<T> {
        let mut columns = vec![SparseVec::new(); self.poset.len()];
        for s in self.complex.simplices() {
            let p = self.element_of[s];
            for (face, i) in boundary_faces(s) {
                columns[p].add_term(self.element_of[&face], T::sign(i));
            }
        }
        LinearOperator::from_columns(&self.poset, &self.poset, columns)
            .expect("images of faces are proper elements")
    }
}
