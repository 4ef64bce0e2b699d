//! The Cartan differential induced by a border operator, and an exhaustive
//! checker for the differential-calculus axioms.
//!
//! Given a Jordan–Hölder poset and a border operator `d` on its kets,
//!
//! ```text
//! D|p⟩⟨q| = |dp⟩⟨q| - (-1)^m |p⟩⟨q·d|,   m = grade |p⟩⟨q|
//! ```
//!
//! where `|dp⟩⟨q|` keeps only the terms `|s⟩` of `d|p⟩` with `s <= q`, and
//! `⟨q·d|` keeps only the terms `⟨t|` of the coborder image with `p <= t`,
//! so that every output term is again a basis pair of Ω.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{Chain, Cochain, LinearOperator};
use crate::error::{Error, Result};
use crate::incidence::{self, AlgebraElement, BasisPair};
use crate::poset::Poset;
use crate::scalar::Scalar;
use crate::sparse::SparseVec;

/// Graded Leibniz rule used by [`DifferentialStructure::verify`].
pub const LEIBNIZ_RULE: &str = "D(w.w') = Dw.w' + (-1)^m w.Dw' for w of grade m";

/// A poset with a candidate border operator on its chain space.
#[derive(Clone, Debug)]
pub struct DifferentialStructure<'a, T: Scalar> {
    poset: &'a Poset,
    border: LinearOperator<T>,
    basis: Vec<BasisPair>,
    basis_index: HashMap<BasisPair, usize>,
    grades: Vec<u32>,
}

impl<'a, T: Scalar> DifferentialStructure<'a, T> {
    pub fn new(poset: &'a Poset, border: LinearOperator<T>) -> Result<Self> {
        if border.domain() != poset.space_id() || border.codomain() != poset.space_id() {
            return Err(Error::SpaceMismatch);
        }
        if let Some((lower, upper)) = poset.jordan_holder_violation() {
            return Err(Error::NotJordanHolder {
                lower: lower.to_string(),
                upper: upper.to_string(),
            });
        }
        let basis = incidence::basis(poset);
        let basis_index = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let grades = basis
            .iter()
            .map(|&b| incidence::grade(poset, b))
            .collect::<Result<_>>()?;
        Ok(Self {
            poset,
            border,
            basis,
            basis_index,
            grades,
        })
    }

    pub fn poset(&self) -> &Poset {
        self.poset
    }

    pub fn border(&self) -> &LinearOperator<T> {
        &self.border
    }

    pub fn basis(&self) -> &[BasisPair] {
        &self.basis
    }

    pub fn grade(&self, pair: BasisPair) -> u32 {
        self.grades[self.basis_index[&pair]]
    }

    /// Terms `|s⟩` of `image` with `s <= q`.
    pub fn restrict_ket(&self, image: &Chain<T>, q: usize) -> Chain<T> {
        image.filtered(|&s| self.poset.leq_ix(s, q))
    }

    /// Terms `⟨t|` of `image` with `p <= t`.
    pub fn restrict_bra(&self, image: &Cochain<T>, p: usize) -> Cochain<T> {
        image.filtered(|&t| self.poset.leq_ix(p, t))
    }

    /// `D` on a single basis pair.
    pub fn cartan_d_pair(&self, pair: BasisPair) -> AlgebraElement<T> {
        let BasisPair { ket: p, bra: q } = pair;
        let mut out = SparseVec::new();
        for (&s, c) in self.border.column(p).iter() {
            if self.poset.leq_ix(s, q) {
                out.add_term((s, q), c.clone());
            }
        }
        let sign = -T::sign(self.grade(pair));
        for (&t, c) in self.border.row(q).iter() {
            if self.poset.leq_ix(p, t) {
                out.add_term((p, t), sign.clone() * c.clone());
            }
        }
        AlgebraElement::from_sparse(self.poset.space_id(), out)
    }

    /// `D` extended linearly.
    pub fn cartan_d(&self, x: &AlgebraElement<T>) -> Result<AlgebraElement<T>> {
        if x.space() != self.poset.space_id() {
            return Err(Error::SpaceMismatch);
        }
        let mut out = AlgebraElement::zero(self.poset);
        for (pair, c) in x.terms() {
            out = out.add(&self.cartan_d_pair(pair).scaled(c))?;
        }
        Ok(out)
    }

    fn apply_cached(
        &self,
        cache: &[AlgebraElement<T>],
        x: &AlgebraElement<T>,
    ) -> AlgebraElement<T> {
        let mut out = SparseVec::new();
        for (pair, c) in x.terms() {
            out.add_scaled(cache[self.basis_index[&pair]].sparse(), c);
        }
        AlgebraElement::from_sparse(self.poset.space_id(), out)
    }

    /// Checks `d² = 0`, the grading shift, `D² = 0`, `D1 = 0` and the graded
    /// Leibniz rule exhaustively over the incidence basis.
    pub fn verify(&self) -> AxiomReport {
        let poset = self.poset;
        let n = self.basis.len();
        let pair_name = |b: BasisPair| b.display(poset);
        let cache: Vec<AlgebraElement<T>> = self
            .basis
            .par_iter()
            .map(|&b| self.cartan_d_pair(b))
            .collect();

        let mut grade_histogram = BTreeMap::new();
        for &g in &self.grades {
            *grade_histogram.entry(g).or_insert(0) += 1;
        }

        let d_squared = self
            .border
            .compose(&self.border)
            .expect("border is an endomorphism");
        let d_squared = (0..poset.len()).find_map(|p| {
            let col = d_squared.column(p);
            (!col.is_zero()).then(|| Counterexample {
                check: "d_squared".into(),
                elements: vec![format!("|{}⟩", poset.name(p))],
                detail: format!(
                    "d²|{}⟩ = {}",
                    poset.name(p),
                    Chain::from_sparse(poset.space_id(), poset.len(), col.clone()).display(poset)
                ),
            })
        });

        let grading_shift = first_some((0..n).into_par_iter().map(|i| {
            let w = self.basis[i];
            let m = self.grades[i];
            let ket_terms = self
                .border
                .column(w.ket)
                .keys()
                .filter(|&&s| poset.leq_ix(s, w.bra))
                .map(|&s| BasisPair { ket: s, bra: w.bra });
            let bra_terms = self
                .border
                .row(w.bra)
                .keys()
                .filter(|&&t| poset.leq_ix(w.ket, t))
                .map(|&t| BasisPair { ket: w.ket, bra: t });
            ket_terms.chain(bra_terms).find_map(|term| {
                let g = self.grade(term);
                (g != m + 1).then(|| Counterexample {
                    check: "grading_shift".into(),
                    elements: vec![pair_name(w), pair_name(term)],
                    detail: format!(
                        "D{} has term {} of grade {g}, expected {}",
                        pair_name(w),
                        pair_name(term),
                        m + 1
                    ),
                })
            })
        }));

        let cartan_squared = first_some((0..n).into_par_iter().map(|i| {
            let dd = self.apply_cached(&cache, &cache[i]);
            (!dd.is_zero()).then(|| Counterexample {
                check: "D_squared".into(),
                elements: vec![pair_name(self.basis[i])],
                detail: format!("D²{} = {}", pair_name(self.basis[i]), dd.display(poset)),
            })
        }));

        let mut d_unit = SparseVec::new();
        for (i, b) in self.basis.iter().enumerate() {
            if b.is_diagonal() {
                d_unit.add_scaled(cache[i].sparse(), &T::one());
            }
        }
        let d_unit = AlgebraElement::<T>::from_sparse(poset.space_id(), d_unit);
        let unit_annihilated = d_unit.terms().next().map(|(pair, _)| Counterexample {
            check: "unit_annihilated".into(),
            elements: vec![format!("|{}⟩", poset.name(pair.bra))],
            detail: format!(
                "D1 = {} does not vanish on |{}⟩",
                d_unit.display(poset),
                poset.name(pair.bra)
            ),
        });

        let leibniz = self.check_leibniz(&cache);

        let mut counterexamples = Vec::new();
        let mut verdict = |c: Option<Counterexample>| match c {
            Some(c) => {
                counterexamples.push(c);
                Verdict::Fail
            }
            None => Verdict::Pass,
        };
        AxiomReport {
            grading_shift: verdict(grading_shift),
            d_squared: verdict(d_squared),
            cartan_squared: verdict(cartan_squared),
            unit_annihilated: verdict(unit_annihilated),
            leibniz: verdict(leibniz),
            basis_size: n,
            grade_histogram,
            leibniz_rule: LEIBNIZ_RULE,
            counterexamples,
        }
    }

    /// Every pair (w, w') is covered: the three products in the rule vanish
    /// identically unless the ket of w' is the bra of w or a bra of Dw, or
    /// the bra of w is a ket of Dw'. Only those pairs are expanded.
    fn check_leibniz(&self, cache: &[AlgebraElement<T>]) -> Option<Counterexample> {
        let poset = self.poset;
        let n = self.basis.len();
        let mut by_ket: Vec<Vec<usize>> = vec![Vec::new(); poset.len()];
        let mut by_d_ket: Vec<Vec<usize>> = vec![Vec::new(); poset.len()];
        for (j, b) in self.basis.iter().enumerate() {
            by_ket[b.ket].push(j);
            let mut kets: Vec<usize> = cache[j].terms().map(|(t, _)| t.ket).collect();
            kets.dedup();
            for k in kets {
                by_d_ket[k].push(j);
            }
        }
        first_some((0..n).into_par_iter().map(|i| {
            let w = self.basis[i];
            let m = self.grades[i];
            let wx = AlgebraElement::from_pair(poset, w);
            let mut partners: Vec<usize> = by_ket[w.bra].clone();
            for (t, _) in cache[i].terms() {
                partners.extend_from_slice(&by_ket[t.bra]);
            }
            partners.extend_from_slice(&by_d_ket[w.bra]);
            partners.sort_unstable();
            partners.dedup();
            partners.into_iter().find_map(|j| {
                let wy = AlgebraElement::from_pair(poset, self.basis[j]);
                let lhs = self.apply_cached(cache, &wx.multiply(&wy).ok()?);
                let rhs = cache[i]
                    .multiply(&wy)
                    .ok()?
                    .add(&wx.multiply(&cache[j]).ok()?.scaled(&T::sign(m)))
                    .ok()?;
                (lhs != rhs).then(|| Counterexample {
                    check: "leibniz".into(),
                    elements: vec![w.display(poset), self.basis[j].display(poset)],
                    detail: format!(
                        "D(w.w') = {} but Dw.w' + (-1)^{m} w.Dw' = {}",
                        lhs.display(poset),
                        rhs.display(poset)
                    ),
                })
            })
        }))
    }
}

fn first_some<I>(it: I) -> Option<Counterexample>
where
    I: IndexedParallelIterator<Item = Option<Counterexample>>,
{
    let all: Vec<Option<Counterexample>> = it.collect();
    all.into_iter().flatten().next()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub elements: Vec<String>,
    pub detail: String,
}

/// Outcome of [`DifferentialStructure::verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub grading_shift: Verdict,
    pub d_squared: Verdict,
    #[serde(rename = "D_squared")]
    pub cartan_squared: Verdict,
    pub unit_annihilated: Verdict,
    pub leibniz: Verdict,
    pub basis_size: usize,
    pub grade_histogram: BTreeMap<u32, usize>,
    pub leibniz_rule: &'static str,
    pub counterexamples: Vec<Counterexample>,
}

impl AxiomReport {
    /// The four axioms of a differential calculus: grading shift, `D² = 0`,
    /// `D1 = 0` and the Leibniz rule.
    pub fn axioms_pass(&self) -> bool {
        [
            self.grading_shift,
            self.cartan_squared,
            self.unit_annihilated,
            self.leibniz,
        ]
        .iter()
        .all(|v| v.passed())
    }

    /// Axioms plus `d² = 0` for the border itself.
    pub fn all_pass(&self) -> bool {
        self.axioms_pass() && self.d_squared.passed()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report is plain data")
    }

    pub fn to_text(&self) -> String {
        let word = |v: Verdict| match v {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
        };
        let mut out = String::new();
        out.push_str(&format!("grading shift     {}\n", word(self.grading_shift)));
        out.push_str(&format!("d^2 = 0           {}\n", word(self.d_squared)));
        out.push_str(&format!(
            "D^2 = 0           {}\n",
            word(self.cartan_squared)
        ));
        out.push_str(&format!(
            "D1 = 0            {}\n",
            word(self.unit_annihilated)
        ));
        out.push_str(&format!("Leibniz           {}\n", word(self.leibniz)));
        out.push_str(&format!("  rule: {}\n", self.leibniz_rule));
        out.push_str(&format!("basis size        {}\n", self.basis_size));
        let hist: Vec<String> = self
            .grade_histogram
            .iter()
            .map(|(g, c)| format!("{g}:{c}"))
            .collect();
        out.push_str(&format!("grades            {}\n", hist.join(" ")));
        for c in &self.counterexamples {
            out.push_str(&format!("counterexample [{}] {}\n", c.check, c.detail));
        }
        out
    }
}
