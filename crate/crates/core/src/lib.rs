//! Factor analysis of matrices with grades.
//!
//! A matrix `I` whose entries come from a finite chain of grades is
//! decomposed as `I = A ∘ B`, where `(A ∘ B)_ij = max_l A_il ⊗ B_lj` for a
//! t-norm `⊗`. Factors are formal concepts of `I`: column `l` of `A` is the
//! extent and row `l` of `B` the intent of the `l`-th concept.
//!
//! ```
//! use gradefactor::{find_factors, GradedMatrix, Scale, TNorm, TieBreak};
//!
//! let scale = Scale::new(5, TNorm::Lukasiewicz)?;
//! let i = GradedMatrix::from_level_rows(scale, &[[4, 2, 0], [1, 4, 3], [2, 2, 4]])?;
//! let factors = find_factors(&i, TieBreak::default());
//! let (a, b) = factors.factor_matrices();
//! assert_eq!(a.compose(&b)?, i);
//! # Ok::<(), gradefactor::Error>(())
//! ```

pub mod cli;
pub mod concept;
pub mod data;
pub mod error;
pub mod experiment;
pub mod factorization;
pub mod matrix;
pub mod par;
pub mod report;
pub mod scale;

pub use concept::{close_extent, close_intent, down, enumerate_concepts, up, FormalConcept};
pub use error::{Error, Result};
pub use factorization::{
    find_factors, find_factors_with, gain, optimal_factorization, CandidateScan, CoverUniverse,
    FactorSet, FindOptions, OracleLimits, TieBreak,
};
pub use matrix::{additivity_check, FuzzySet, GradedMatrix};
pub use par::Execution;
pub use scale::{Grade, ParseMode, Scale, TNorm};
