//! The incidence algebra of a finite poset.
//!
//! Ω is spanned by symbols `|p⟩⟨q|` with `p <= q` and multiplied by
//! `|p⟩⟨q|·|r⟩⟨s| = δ_qr |p⟩⟨s|`. The diagonal symbols span the commutative
//! scalar subalgebra A; the strictly increasing ones span the module of
//! differentials R. On a Jordan–Hölder poset the chain degree grades Ω.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::chain::write_term;
use crate::error::{Error, Result};
use crate::export::coeff_json;
use crate::poset::{Poset, SpaceId};
use crate::scalar::Scalar;
use crate::sparse::SparseVec;

/// The basis symbol `|ket⟩⟨bra|`, valid only when `ket <= bra`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisPair {
    pub ket: usize,
    pub bra: usize,
}

impl BasisPair {
    pub fn new(poset: &Poset, ket: &str, bra: &str) -> Result<Self> {
        Self::from_ix(poset, poset.index_of(ket)?, poset.index_of(bra)?)
    }

    pub fn from_ix(poset: &Poset, ket: usize, bra: usize) -> Result<Self> {
        if ket < poset.len() && bra < poset.len() && poset.leq_ix(ket, bra) {
            Ok(Self { ket, bra })
        } else if ket >= poset.len() || bra >= poset.len() {
            Err(Error::IndexOutOfRange {
                index: ket.max(bra),
                dim: poset.len(),
            })
        } else {
            Err(Error::Incomparable {
                lower: poset.name(ket).to_string(),
                upper: poset.name(bra).to_string(),
            })
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.ket == self.bra
    }

    pub fn display(&self, poset: &Poset) -> String {
        format!("|{}⟩⟨{}|", poset.name(self.ket), poset.name(self.bra))
    }
}

/// All basis pairs of Ω, ordered by ket then bra.
pub fn basis(poset: &Poset) -> Vec<BasisPair> {
    (0..poset.len())
        .flat_map(|p| poset.upset(p).map(move |q| BasisPair { ket: p, bra: q }))
        .collect()
}

/// Grade of a basis pair: the length of any maximal chain from ket to bra.
pub fn grade(poset: &Poset, pair: BasisPair) -> Result<u32> {
    poset.chain_degree_ix(pair.ket, pair.bra)
}

/// An element of the incidence algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<T: Scalar> {
    space: SpaceId,
    terms: SparseVec<(usize, usize), T>,
}

impl<T: Scalar> AlgebraElement<T> {
    pub fn zero(poset: &Poset) -> Self {
        Self {
            space: poset.space_id(),
            terms: SparseVec::new(),
        }
    }

    pub fn from_pair(poset: &Poset, pair: BasisPair) -> Self {
        let mut x = Self::zero(poset);
        x.terms.add_term((pair.ket, pair.bra), T::one());
        x
    }

    /// Builds `Σ c |ket⟩⟨bra|` from named terms; every pair must satisfy `ket <= bra`.
    pub fn from_terms<'a>(
        poset: &Poset,
        terms: impl IntoIterator<Item = (&'a str, &'a str, T)>,
    ) -> Result<Self> {
        let mut x = Self::zero(poset);
        for (ket, bra, c) in terms {
            let pair = BasisPair::new(poset, ket, bra)?;
            x.terms.add_term((pair.ket, pair.bra), c);
        }
        Ok(x)
    }

    /// The unit `1 = Σ_p |p⟩⟨p|`.
    pub fn unit(poset: &Poset) -> Self {
        Self {
            space: poset.space_id(),
            terms: (0..poset.len()).map(|p| ((p, p), T::one())).collect(),
        }
    }

    pub(crate) fn from_sparse(space: SpaceId, terms: SparseVec<(usize, usize), T>) -> Self {
        Self { space, terms }
    }

    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, pair: BasisPair) -> T {
        self.terms
            .get(&(pair.ket, pair.bra))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisPair, &T)> + '_ {
        self.terms
            .iter()
            .map(|(&(ket, bra), c)| (BasisPair { ket, bra }, c))
    }

    pub(crate) fn sparse(&self) -> &SparseVec<(usize, usize), T> {
        &self.terms
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            space: self.space,
            terms: self.terms.sum(&other.terms),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            space: self.space,
            terms: self.terms.difference(&other.terms),
        })
    }

    pub fn scaled(&self, s: &T) -> Self {
        Self {
            space: self.space,
            terms: self.terms.scaled(s),
        }
    }

    /// Bilinear extension of `|p⟩⟨q|·|r⟩⟨s| = δ_qr |p⟩⟨s|`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = SparseVec::new();
        for (&(p, q), c) in self.terms.iter() {
            for (&(_, s), d) in other.terms.range((q, 0)..=(q, usize::MAX)) {
                out.add_term((p, s), c.clone() * d.clone());
            }
        }
        Ok(Self {
            space: self.space,
            terms: out,
        })
    }

    /// True iff every term is diagonal, i.e. the element lies in A.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|(p, q)| p == q)
    }

    /// Splits `x = a + r` with `a` in A and `r` in R.
    pub fn split_scalar_differential(&self) -> (Self, Self) {
        let a = self.terms.filter(|(p, q)| p == q);
        let r = self.terms.filter(|(p, q)| p != q);
        (
            Self {
                space: self.space,
                terms: a,
            },
            Self {
                space: self.space,
                terms: r,
            },
        )
    }

    pub fn display(&self, poset: &Poset) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (pair, c)) in self.terms().enumerate() {
            write_term(&mut out, i == 0, c, &pair.display(poset));
        }
        out
    }

    /// `[{ket, bra, coeff}, …]` ordered by ket then bra.
    pub fn to_json(&self, poset: &Poset) -> Value {
        Value::Array(
            self.terms()
                .map(|(pair, c)| {
                    json!({
                        "ket": poset.name(pair.ket),
                        "bra": poset.name(pair.bra),
                        "coeff": coeff_json(c),
                    })
                })
                .collect(),
        )
    }
}

/// The homogeneous components `Ωⁿ` of an element.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedDecomposition<T: Scalar> {
    pub parts: BTreeMap<u32, AlgebraElement<T>>,
}

impl<T: Scalar> GradedDecomposition<T> {
    pub fn reassemble(&self, poset: &Poset) -> AlgebraElement<T> {
        self.parts
            .values()
            .fold(AlgebraElement::zero(poset), |acc, x| {
                acc.add(x).expect("parts share the poset")
            })
    }
}

pub fn decompose<T: Scalar>(
    poset: &Poset,
    x: &AlgebraElement<T>,
) -> Result<GradedDecomposition<T>> {
    if x.space != poset.space_id() {
        return Err(Error::SpaceMismatch);
    }
    let mut parts: BTreeMap<u32, AlgebraElement<T>> = BTreeMap::new();
    for (pair, c) in x.terms() {
        let g = grade(poset, pair)?;
        parts
            .entry(g)
            .or_insert_with(|| AlgebraElement::zero(poset))
            .terms
            .add_term((pair.ket, pair.bra), c.clone());
    }
    Ok(GradedDecomposition { parts })
}
