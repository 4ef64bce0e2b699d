use std::collections::btree_map::{self, BTreeMap};

use crate::scalar::Scalar;

/// Finitely supported map `K -> T` that never stores a zero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<K: Ord, T> {
    terms: BTreeMap<K, T>,
}

impl<K: Ord, T> Default for SparseVec<K, T> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Copy, T: Scalar> SparseVec<K, T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, T)>) -> Self {
        let mut v = Self::new();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    /// Adds `coeff` to the coefficient at `key`, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: K, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &Self, scale: &T) {
        for (k, c) in &other.terms {
            self.add_term(*k, scale.clone() * c.clone());
        }
    }

    pub fn get(&self, key: &K) -> Option<&T> {
        self.terms.get(key)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &T)> + '_ {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> + '_ {
        self.terms.keys()
    }

    pub fn range<R: std::ops::RangeBounds<K>>(&self, r: R) -> impl Iterator<Item = (&K, &T)> + '_ {
        self.terms.range(r)
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn scaled(&self, s: &T) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, s.clone() * c.clone())))
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &T::one());
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-T::one());
        out
    }

    /// Re-keys every term; colliding keys are summed.
    pub fn map_keys<K2: Ord + Copy>(&self, mut f: impl FnMut(K) -> K2) -> SparseVec<K2, T> {
        SparseVec::from_terms(self.terms.iter().map(|(k, c)| (f(*k), c.clone())))
    }

    /// Pointwise product summed over common keys.
    pub fn dot(&self, other: &Self) -> T {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .terms
            .iter()
            .fold(T::zero(), |acc, (k, c)| match large.terms.get(k) {
                Some(d) => acc + c.clone() * d.clone(),
                None => acc,
            })
    }
}

impl<K: Ord + Copy, T: Scalar> FromIterator<(K, T)> for SparseVec<K, T> {
    fn from_iter<I: IntoIterator<Item = (K, T)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}
