//! Finite semigroups by multiplication table, homology of their classifying
//! spaces, and group completions.
//!
//! The library is organised around a single carrier type,
//! [`FiniteSemigroup`]: elements are dense `0..n` indices and the operation is
//! an `n x n` table. On top of that sit
//!
//! - [`constructions`]: rectangular bands, cyclic groups, the Moore-space
//!   semigroups `S_n`/`M_n`, the suspension monoid `J(S)` and the wedge
//!   monoid;
//! - [`homology`]: the (normalized) bar chain complex of a monoid and exact
//!   integral homology via Smith normal form over arbitrary-precision
//!   integers;
//! - [`completion`]: group completion `G(S)` (hence the fundamental group of
//!   the classifying space) by Todd-Coxeter coset enumeration;
//! - [`theorems`]: end-to-end verification suites (explicit projective
//!   resolution for `M_n`, suspension shift, wedge additivity, vanishing for
//!   regular monoids);
//! - [`expr`] and [`io`]: the constructor expression mini-language and the
//!   table/matrix file formats used by the CLI.
//!
//! All types are immutable after construction and all operations are pure
//! functions, so shared read-only use across threads is safe.
//!
//! ```
//! use bsemi_core::constructions::rectangular_band;
//! use bsemi_core::homology::{homology_profile, HomologyGroup, DEFAULT_COLUMN_CAP};
//! use bsemi_core::completion::is_simply_connected;
//!
//! // The five-element monoid whose classifying space is the 2-sphere.
//! let m = rectangular_band(2, 2).adjoin_identity();
//! let h = homology_profile(&m, 3, true, DEFAULT_COLUMN_CAP).unwrap();
//! assert_eq!(h[0], HomologyGroup::free(1));
//! assert!(h[1].is_zero());
//! assert_eq!(h[2], HomologyGroup::free(1));
//! assert!(is_simply_connected(&m).unwrap());
//! ```

pub mod completion;
pub mod constructions;
pub mod expr;
pub mod homology;
pub mod io;
pub mod matrix;
pub mod semigroup;
pub mod theorems;

pub use homology::{bar_complex, homology_profile, ChainComplex, HomologyError, HomologyGroup};
pub use matrix::{smith_normal_form, smith_normal_form_with_transforms, SnfResult, SparseMat};
pub use semigroup::{
    validate, FiniteSemigroup, IdealData, MaximalSubgroupData, PrincipalSeries, SemigroupError,
};
