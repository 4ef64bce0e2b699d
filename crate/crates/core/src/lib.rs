//! Incidence algebras of finite posets and their differential calculi.
//!
//! The crate builds the incidence algebra Ω of a finite poset, border
//! operators on two families of posets (face posets of simplicial complexes
//! and proper-element posets of atomic Greechie logics), the Cartan
//! differential `D` induced by a border, and an exhaustive checker for the
//! axioms of a graded differential algebra.
//!
//! Coefficients are generic over [`Scalar`]; the aliases below fix the
//! common choices.

pub mod chain;
pub mod differential;
pub mod error;
pub mod export;
pub mod greechie;
pub mod incidence;
pub mod poset;
pub mod scalar;
pub mod simplicial;
pub mod sparse;
pub mod text;

pub use chain::{pairing, Chain, Cochain, LinearOperator};
pub use differential::{AxiomReport, Counterexample, DifferentialStructure, Verdict};
pub use error::{Error, Result};
pub use greechie::{GreechieLogic, ProperElement, ProperPoset};
pub use incidence::{AlgebraElement, BasisPair, GradedDecomposition};
pub use poset::{ElementId, Poset, DEFAULT_ELEMENT_CAP};
pub use scalar::Scalar;
pub use simplicial::{FacePoset, Simplex, SimplicialComplex};

/// Default exact coefficient type. Structure constants are 0 and ±1, so
/// 64-bit integers do not overflow at the poset sizes the element cap allows.
pub type Integer = i64;

pub type IntChain = Chain<Integer>;
pub type IntCochain = Cochain<Integer>;
pub type IntOperator = LinearOperator<Integer>;
pub type IntElement = AlgebraElement<Integer>;
pub type IntStructure<'a> = DifferentialStructure<'a, Integer>;

pub type RealChain = Chain<f64>;
pub type RealOperator = LinearOperator<f64>;
pub type RealElement = AlgebraElement<f64>;
