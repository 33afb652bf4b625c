//! Associative spectra of finite p-ary groupoids.
//!
//! A *bracketing* is a term built from one p-ary operation symbol and one
//! variable. Two bracketings with the same number of operation symbols are
//! identified by a groupoid when their leaf-enumerated terms induce the same
//! term function; the resulting sequence of partitions is the groupoid's
//! *fine spectrum*, and the sequence of class counts is its *associative
//! spectrum*.
//!
//! The crate is organised bottom-up:
//!
//! * [`bracketing`]: p-ary trees, enumeration, text forms, structural statistics.
//! * [`tuple`] and [`counting`]: insertion tuples, the sets `M(n, k, p)`,
//!   exact generalized Catalan counts.
//! * [`partition`] and [`spectrum`]: partitions of a level, the implication
//!   operator, the closure test and the named abstract spectra.
//! * [`groupoid`], [`eval`], [`gallery`], [`ring`], [`quotient`]: finite
//!   groupoids, term functions and fine spectra computed by brute force.
//!
//! Counting functions are generic over the integer scalar (see [`scalar`]);
//! [`BigCount`] is the exact unbounded instantiation used throughout.

pub mod bracketing;
pub mod counting;
mod error;
pub mod eval;
pub mod gallery;
pub mod groupoid;
pub mod partition;
pub mod quotient;
pub mod ring;
pub mod scalar;
pub mod spectrum;
pub mod tuple;

pub use bracketing::{enumerate_bracketings, Bracketing, LabeledBracketing, TextFormat};
pub use error::{Error, Result};
pub use eval::{assoc_spectrum, fine_level, fine_spectrum, Evaluator, TermFunction};
pub use gallery::{gallery, Specimen};
pub use groupoid::{direct_product, Element, Groupoid};
pub use partition::{Level, Partition};
pub use quotient::quotient_from_spectrum;
pub use ring::{ring_closed_form_check, TruncatedRing};
pub use spectrum::{delta, verify_closed, ClosureReport, SpectrumPrefix};
pub use tuple::InsertionTuple;

/// Exact unbounded count of bracketings, tuples or classes.
pub type BigCount = num_bigint::BigUint;

/// Machine-word counts; overflow panics, so only for small arguments.
pub type WordCount = u64;

/// Resource caps for enumeration and brute-force evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of bracketings materialised for one level.
    pub max_bracketings: u64,
    /// Maximum number of term-function table cells evaluated for one level.
    pub max_cells: u64,
}

impl Limits {
    pub const DEFAULT_MAX_BRACKETINGS: u64 = 1_000_000;
    pub const DEFAULT_MAX_CELLS: u64 = 200_000_000;
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_bracketings: Self::DEFAULT_MAX_BRACKETINGS,
            max_cells: Self::DEFAULT_MAX_CELLS,
        }
    }
}
