//! Ket and bra vectors over the elements of a poset, their pairing, and
//! column-sparse linear operators between such spaces.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poset::{Poset, SpaceId};
use crate::scalar::Scalar;
use crate::sparse::SparseVec;

macro_rules! vector_type {
    ($(#[$meta:meta])* $name:ident, $open:literal, $close:literal) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq)]
        pub struct $name<T: Scalar> {
            space: SpaceId,
            dim: usize,
            coeffs: SparseVec<usize, T>,
        }

        impl<T: Scalar> $name<T> {
            pub fn zero(poset: &Poset) -> Self {
                Self { space: poset.space_id(), dim: poset.len(), coeffs: SparseVec::new() }
            }

            /// The basis vector of the named element.
            pub fn basis(poset: &Poset, name: &str) -> Result<Self> {
                Ok(Self::basis_ix(poset, poset.index_of(name)?))
            }

            pub fn basis_ix(poset: &Poset, ix: usize) -> Self {
                let mut v = Self::zero(poset);
                v.coeffs.add_term(ix, T::one());
                v
            }

            pub fn from_terms<'a>(
                poset: &Poset,
                terms: impl IntoIterator<Item = (&'a str, T)>,
            ) -> Result<Self> {
                let mut v = Self::zero(poset);
                for (name, c) in terms {
                    v.coeffs.add_term(poset.index_of(name)?, c);
                }
                Ok(v)
            }

            pub(crate) fn from_sparse(space: SpaceId, dim: usize, coeffs: SparseVec<usize, T>) -> Self {
                Self { space, dim, coeffs }
            }

            pub fn space(&self) -> SpaceId {
                self.space
            }

            pub fn coeffs(&self) -> &SparseVec<usize, T> {
                &self.coeffs
            }

            pub fn coeff(&self, ix: usize) -> T {
                self.coeffs.get(&ix).cloned().unwrap_or_else(T::zero)
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.is_zero()
            }

            pub fn iter(&self) -> impl Iterator<Item = (usize, &T)> + '_ {
                self.coeffs.iter().map(|(k, c)| (*k, c))
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                self.check_same(other.space)?;
                Ok(Self { coeffs: self.coeffs.sum(&other.coeffs), ..self.clone() })
            }

            pub fn scaled(&self, s: &T) -> Self {
                Self { coeffs: self.coeffs.scaled(s), ..self.clone() }
            }

            /// Keeps only the terms whose element satisfies `keep`.
            pub fn filtered(&self, keep: impl FnMut(&usize) -> bool) -> Self {
                Self { coeffs: self.coeffs.filter(keep), ..self.clone() }
            }

            fn check_same(&self, other: SpaceId) -> Result<()> {
                if self.space == other { Ok(()) } else { Err(Error::SpaceMismatch) }
            }

            /// Human-readable form such as `|b⟩ - |a⟩`, using the poset's names.
            pub fn display(&self, poset: &Poset) -> String {
                if self.is_zero() {
                    return "0".to_string();
                }
                let mut out = String::new();
                for (i, (ix, c)) in self.coeffs.iter().enumerate() {
                    let term = format!("{}{}{}", $open, poset.name(*ix), $close);
                    write_term(&mut out, i == 0, c, &term);
                }
                out
            }
        }
    };
}

pub(crate) fn write_term<T: Scalar>(out: &mut String, first: bool, c: &T, term: &str) {
    let one = T::one();
    let (neg, mag) = if *c == -one.clone() {
        (true, None)
    } else if *c == one {
        (false, None)
    } else {
        let s = c.to_string();
        match s.strip_prefix('-') {
            Some(rest) => (true, Some(rest.to_string())),
            None => (false, Some(s)),
        }
    };
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    if let Some(m) = mag {
        let _ = write!(out, "{m}");
    }
    out.push_str(term);
}

vector_type!(
    /// A finite linear combination of kets `|p⟩`.
    Chain, "|", "⟩"
);
vector_type!(
    /// A finite linear combination of bras `⟨p|`.
    Cochain, "⟨", "|"
);

/// `⟨b|k⟩ = Σ_p b[p]·k[p]`.
pub fn pairing<T: Scalar>(b: &Cochain<T>, k: &Chain<T>) -> Result<T> {
    if b.space != k.space {
        return Err(Error::SpaceMismatch);
    }
    Ok(b.coeffs.dot(&k.coeffs))
}

/// A linear map between chain spaces, stored by the image of each basis ket.
/// The transpose is kept alongside so the adjoint acts on bras in sparse time.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOperator<T: Scalar> {
    domain: SpaceId,
    codomain: SpaceId,
    codim: usize,
    columns: Vec<SparseVec<usize, T>>,
    rows: Vec<SparseVec<usize, T>>,
}

impl<T: Scalar> LinearOperator<T> {
    /// `columns[p]` is the image of `|p⟩` expressed over `codomain`.
    pub fn from_columns(
        domain: &Poset,
        codomain: &Poset,
        columns: Vec<SparseVec<usize, T>>,
    ) -> Result<Self> {
        if columns.len() != domain.len() {
            return Err(Error::IndexOutOfRange {
                index: columns.len(),
                dim: domain.len(),
            });
        }
        Self::build(
            domain.space_id(),
            codomain.space_id(),
            codomain.len(),
            columns,
        )
    }

    /// Builds an operator from named columns; unlisted columns are zero.
    pub fn from_named_columns<'a>(
        domain: &Poset,
        codomain: &Poset,
        columns: impl IntoIterator<Item = (&'a str, Vec<(&'a str, T)>)>,
    ) -> Result<Self> {
        let mut cols = vec![SparseVec::new(); domain.len()];
        for (src, image) in columns {
            let p = domain.index_of(src)?;
            for (dst, c) in image {
                cols[p].add_term(codomain.index_of(dst)?, c);
            }
        }
        Self::from_columns(domain, codomain, cols)
    }

    fn build(
        domain: SpaceId,
        codomain: SpaceId,
        codim: usize,
        columns: Vec<SparseVec<usize, T>>,
    ) -> Result<Self> {
        let mut rows = vec![SparseVec::new(); codim];
        for (p, col) in columns.iter().enumerate() {
            for (&q, c) in col.iter() {
                if q >= codim {
                    return Err(Error::IndexOutOfRange {
                        index: q,
                        dim: codim,
                    });
                }
                rows[q].add_term(p, c.clone());
            }
        }
        Ok(Self {
            domain,
            codomain,
            codim,
            columns,
            rows,
        })
    }

    pub fn zero(domain: &Poset, codomain: &Poset) -> Self {
        Self::from_columns(domain, codomain, vec![SparseVec::new(); domain.len()])
            .expect("zero columns are in range")
    }

    pub fn identity(poset: &Poset) -> Self {
        let cols = (0..poset.len())
            .map(|p| SparseVec::from_terms([(p, T::one())]))
            .collect();
        Self::from_columns(poset, poset, cols).expect("identity columns are in range")
    }

    pub fn domain(&self) -> SpaceId {
        self.domain
    }

    pub fn codomain(&self) -> SpaceId {
        self.codomain
    }

    /// Image of the basis ket `|p⟩`.
    pub fn column(&self, p: usize) -> &SparseVec<usize, T> {
        &self.columns[p]
    }

    /// Image of the basis bra `⟨q|` under the adjoint.
    pub fn row(&self, q: usize) -> &SparseVec<usize, T> {
        &self.rows[q]
    }

    pub fn columns(&self) -> &[SparseVec<usize, T>] {
        &self.columns
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn apply(&self, k: &Chain<T>) -> Result<Chain<T>> {
        if k.space() != self.domain {
            return Err(Error::SpaceMismatch);
        }
        let mut out = SparseVec::new();
        for (p, c) in k.iter() {
            out.add_scaled(&self.columns[p], c);
        }
        Ok(Chain::from_sparse(self.codomain, self.codim, out))
    }

    /// The coborder action `⟨b| ↦ ⟨b·op|`, characterised by
    /// `⟨b·op|k⟩ = ⟨b|op k⟩`.
    pub fn adjoint_apply(&self, b: &Cochain<T>) -> Result<Cochain<T>> {
        if b.space() != self.codomain {
            return Err(Error::SpaceMismatch);
        }
        let mut out = SparseVec::new();
        for (q, c) in b.iter() {
            out.add_scaled(&self.rows[q], c);
        }
        Ok(Cochain::from_sparse(self.domain, self.columns.len(), out))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.codomain != self.domain {
            return Err(Error::SpaceMismatch);
        }
        let cols = inner
            .columns
            .iter()
            .map(|col| {
                let mut out = SparseVec::new();
                for (&r, c) in col.iter() {
                    out.add_scaled(&self.columns[r], c);
                }
                out
            })
            .collect();
        Self::build(inner.domain, self.codomain, self.codim, cols)
    }

    /// Copy of the operator with the coefficient of `|row⟩` in column `col`
    /// negated. Fails if that entry is zero.
    pub fn with_negated_entry(&self, col: usize, row: usize) -> Result<Self> {
        let dim = self.columns.len();
        let column = self
            .columns
            .get(col)
            .ok_or(Error::IndexOutOfRange { index: col, dim })?;
        let c = column.get(&row).cloned().ok_or(Error::IndexOutOfRange {
            index: row,
            dim: self.codim,
        })?;
        let mut columns = self.columns.clone();
        columns[col].add_term(row, -(c.clone() + c));
        Self::build(self.domain, self.codomain, self.codim, columns)
    }
}
