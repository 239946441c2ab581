//! Exact computations on module-extension algebras `T(A,U) = A ⊕ U` over ℚ.
//!
//! Algebras and bimodules are given by rational structure constants. The crate
//! builds `T(A,U)`, computes derivation spaces through the Leibniz linear
//! system, decomposes maps on `T(A,U)` into their four blocks, and provides the
//! explicit derivation recipes (lifts, transports along module maps, quotient
//! and corner constructions) together with the structural predicates they need
//! (radical, center, simplicity, idempotents).
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod algebra;
pub mod blocks;
pub mod catalog;
pub mod constructions;
pub mod derivations;
pub mod error;
pub mod extension;
pub mod factor;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod structure;

pub use algebra::{annihilator, is_module_hom, Algebra, Bimodule, Side};
pub use blocks::{
    assemble, blocks_of, check_block_conditions, inner_on_extension, inner_witness, split_d1_d2, BlockDecomposition,
    InnerWitness,
};
pub use constructions::{
    corner_module, corner_tau, lift, quotient_derivation, transport, ConstructionResult,
    CornerModule, Recipe,
};
pub use derivations::{
    derivation_space, h1_dimension, inner_derivation, inner_space, is_derivation, DerivationSpace,
};
pub use error::{Error, Result, Violation};
pub use extension::{
    ideal_check, quotient_algebra, quotient_bimodule, submultiplicativity_constant,
    trivial_extension, ModuleExtension, Quotient,
};
pub use linalg::{Matrix, Rational, Subspace};
pub use poly::Polynomial;
pub use report::{Check, ConditionReport};
pub use structure::{
    center, find_surjective_left_hom, is_idempotent, is_simple_prime, min_poly, radical,
    RadicalReport, SimplicityReport, Verdict,
};
