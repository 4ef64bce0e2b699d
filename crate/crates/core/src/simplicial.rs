//! Abstract simplicial complexes, their face posets and the alternating
//! border operator.
//!
//! Vertices carry a total order (declaration order, or lexicographic when
//! none is given); a simplex is stored as the sorted list of its vertex
//! positions in that order, which fixes the signs of the border.

use std::collections::{BTreeSet, HashMap};

use crate::chain::LinearOperator;
use crate::error::{Error, Result};
use crate::poset::{Poset, DEFAULT_ELEMENT_CAP};
use crate::scalar::Scalar;
use crate::sparse::SparseVec;

/// Sorted vertex positions.
pub type Simplex = Vec<usize>;

/// `#s = card(s) - 1`.
pub fn dim<V>(simplex: &[V]) -> Result<usize> {
    simplex.len().checked_sub(1).ok_or(Error::EmptySimplex)
}

/// Codimension-one faces of a sorted simplex with their border signs:
/// removing the i-th vertex contributes `(-1)^i`. Vertices have no faces.
pub fn boundary_faces(simplex: &[usize]) -> impl Iterator<Item = (Simplex, u32)> + '_ {
    let n = if simplex.len() > 1 { simplex.len() } else { 0 };
    (0..n).map(move |i| {
        let mut face = simplex.to_vec();
        face.remove(i);
        (face, i as u32)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    simplices: BTreeSet<Simplex>,
}

fn index_vertices<S: AsRef<str>>(
    vertices: impl IntoIterator<Item = S>,
) -> Result<(Vec<String>, HashMap<String, usize>)> {
    let mut names = Vec::new();
    let mut index = HashMap::new();
    for v in vertices {
        let v = v.as_ref();
        if v.is_empty() {
            return Err(Error::EmptyName);
        }
        if index.insert(v.to_string(), names.len()).is_some() {
            return Err(Error::DuplicateVertex(v.to_string()));
        }
        names.push(v.to_string());
    }
    Ok((names, index))
}

impl SimplicialComplex {
    /// Takes the family exactly as given; see [`Self::validate`].
    pub fn new<S, I, J>(vertices: impl IntoIterator<Item = S>, simplices: I) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = S>,
    {
        let (vertices, vertex_index) = index_vertices(vertices)?;
        let mut out = Self {
            vertices,
            vertex_index,
            simplices: BTreeSet::new(),
        };
        for s in simplices {
            let s = out.simplex_from_names(s)?;
            out.simplices.insert(s);
        }
        Ok(out)
    }

    /// The smallest downward-closed family containing every generator and
    /// every declared vertex.
    pub fn close_downward<S, I, J>(
        vertices: impl IntoIterator<Item = S>,
        generators: I,
    ) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = S>,
    {
        let mut out = Self::new(vertices, std::iter::empty::<Vec<S>>())?;
        let mut gens: Vec<Simplex> = (0..out.vertices.len()).map(|v| vec![v]).collect();
        for g in generators {
            gens.push(out.simplex_from_names(g)?);
        }
        for g in gens {
            out.insert_closed(&g);
        }
        Ok(out)
    }

    /// Like [`Self::close_downward`] with vertices ordered lexicographically.
    pub fn from_generators<S, I, J>(generators: I) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = S>,
    {
        let gens: Vec<Vec<String>> = generators
            .into_iter()
            .map(|g| g.into_iter().map(|v| v.as_ref().to_string()).collect())
            .collect();
        let vertices: BTreeSet<&String> = gens.iter().flatten().collect();
        Self::close_downward(vertices, gens.iter().map(|g| g.iter()))
    }

    fn insert_closed(&mut self, s: &[usize]) {
        if s.is_empty() || self.simplices.contains(s) {
            return;
        }
        self.simplices.insert(s.to_vec());
        for (face, _) in boundary_faces(s) {
            self.insert_closed(&face);
        }
    }

    fn simplex_from_names<S: AsRef<str>>(
        &self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<Simplex> {
        let mut s = Vec::new();
        for n in names {
            let n = n.as_ref();
            let v = *self
                .vertex_index
                .get(n)
                .ok_or_else(|| Error::UnknownVertex(n.to_string()))?;
            s.push(v);
        }
        s.sort_unstable();
        s.dedup();
        if s.is_empty() {
            return Err(Error::EmptySimplex);
        }
        Ok(s)
    }

    /// Re-expresses the complex over a new total order of the same vertices.
    pub fn with_vertex_order<S: AsRef<str>>(
        &self,
        order: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let (vertices, vertex_index) = index_vertices(order)?;
        if vertices.len() != self.vertices.len()
            || self.vertices.iter().any(|v| !vertex_index.contains_key(v))
        {
            return Err(Error::BadVertexOrder(vertices.join(" ")));
        }
        let simplices = self
            .simplices
            .iter()
            .map(|s| {
                let mut t: Simplex = s.iter().map(|&v| vertex_index[&self.vertices[v]]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        Ok(Self {
            vertices,
            vertex_index,
            simplices,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplices.contains(s)
    }

    pub fn simplex<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<Simplex> {
        self.simplex_from_names(names)
    }

    /// `{a,b,c}` with vertices listed in the complex's order.
    pub fn simplex_name(&self, s: &[usize]) -> String {
        let names: Vec<&str> = s.iter().map(|&v| self.vertices[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// The first face (in simplex order) whose absence breaks downward
    /// closure, or `None` if the family is a complex.
    pub fn missing_face(&self) -> Option<Simplex> {
        self.simplices.iter().find_map(|s| {
            boundary_faces(s)
                .map(|(f, _)| f)
                .find(|f| !self.simplices.contains(f))
        })
    }

    pub fn is_valid(&self) -> bool {
        self.missing_face().is_none()
    }

    pub fn validate(&self) -> Result<()> {
        match self.missing_face() {
            Some(f) => Err(Error::MissingFace(self.simplex_name(&f))),
            None => Ok(()),
        }
    }

    pub fn face_poset(&self) -> Result<FacePoset> {
        self.face_poset_capped(DEFAULT_ELEMENT_CAP)
    }

    /// The simplices ordered by inclusion, covers being codimension-one faces.
    pub fn face_poset_capped(&self, cap: usize) -> Result<FacePoset> {
        self.validate()?;
        if self.len() > cap {
            return Err(Error::TooLarge {
                size: self.len(),
                cap,
            });
        }
        let names: Vec<String> = self
            .simplices
            .iter()
            .map(|s| self.simplex_name(s))
            .collect();
        let covers: Vec<(String, String)> = self
            .simplices
            .iter()
            .flat_map(|s| {
                boundary_faces(s).map(move |(f, _)| (self.simplex_name(&f), self.simplex_name(s)))
            })
            .collect();
        let poset = Poset::from_covers_capped(&names, covers, cap)?;
        let mut simplex_of = vec![Vec::new(); poset.len()];
        let mut element_of = HashMap::new();
        for (s, name) in self.simplices.iter().zip(&names) {
            let ix = poset.index_of(name)?;
            simplex_of[ix] = s.clone();
            element_of.insert(s.clone(), ix);
        }
        Ok(FacePoset {
            complex: self.clone(),
            poset,
            simplex_of,
            element_of,
        })
    }
}

/// A validated complex together with its face poset.
#[derive(Clone, Debug)]
pub struct FacePoset {
    complex: SimplicialComplex,
    poset: Poset,
    simplex_of: Vec<Simplex>,
    element_of: HashMap<Simplex, usize>,
}

impl FacePoset {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn simplex(&self, element: usize) -> &Simplex {
        &self.simplex_of[element]
    }

    pub fn element(&self, simplex: &[usize]) -> Result<usize> {
        self.element_of
            .get(simplex)
            .copied()
            .ok_or_else(|| Error::NotASimplex(self.complex.simplex_name(simplex)))
    }

    /// `d|s⟩ = Σ_i (-1)^i |s \ v_i⟩`, zero on vertices.
    pub fn border<T: Scalar>(&self) -> LinearOperator<T> {
        let columns = self
            .simplex_of
            .iter()
            .map(|s| {
                boundary_faces(s)
                    .map(|(f, i)| (self.element_of[&f], T::sign(i)))
                    .collect::<SparseVec<usize, T>>()
            })
            .collect();
        LinearOperator::from_columns(&self.poset, &self.poset, columns)
            .expect("faces of a simplex are simplices")
    }
}
