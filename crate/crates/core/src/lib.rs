//! Generalized Narayana numbers `N_d(n,k)` and Catalan numbers `C_d(n)`.
//!
//! For an arity `d >= 2`,
//!
//! ```text
//! N_d(n,k) = 1/(n+1) * C(n+1, k+1) * C(n + (n-k)(d-2) + 1, k)
//! C_d(n)   = sum_{k=0..n} N_d(n,k)
//! ```
//!
//! Besides evaluating these numbers three independent ways ([`numbers`]),
//! the crate builds every family of objects they count, together with the
//! bijections relating them:
//!
//! | family | module | statistic pair |
//! |---|---|---|
//! | d-ary operator monomials | [`monomials`] | topt, lopt |
//! | Schröder paths with restricted H steps | [`paths`] | semilength, up steps |
//! | ordered trees with restricted outdegrees | [`trees`] | edges, internal nodes |
//! | Dyck paths with restricted ascents | [`paths`] | semilength, peaks |
//! | 231-avoiding permutations with restricted runs | [`permutations`] | size, runs |
//! | Schröder paths with labelled descents | [`paths`] | semilength, hdd |
//! | generalized F-paths | [`fpaths`] | length, north steps |
//! | labelled Dyck paths | [`paths`] | semilength, UU count |
//! | labelled ordered trees | [`trees`] | edges, leaves |
//!
//! [`bijections`] holds the maps `f1`..`f8` and their inverses, [`family`]
//! gives a uniform dynamic view over all nine families, and [`verify`] runs
//! exhaustive sweeps checking every counting claim and bijection.

pub mod bijections;
mod error;
pub mod family;
pub mod fpaths;
mod labels;
pub mod monomials;
pub mod numbers;
pub mod paths;
pub mod permutations;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
pub use fpaths::{FPath, FStep};
pub use monomials::{Factor, Monomial};
pub use numbers::{BivariateSeriesTable, CountValue};
pub use paths::{DescentLabeledPath, LabelKind, LatticePath, Step};
pub use permutations::Permutation;
pub use trees::{LabeledOrderedTree, OrderedTree};

/// Default cap on the number of objects a single enumeration may produce.
pub const DEFAULT_GUARD: usize = 1_000_000;

pub(crate) fn check_arity(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::InvalidArity(d))
    } else {
        Ok(())
    }
}

/// `len` has the form `1 + j(d-1)` for some `j >= 0`.
///
/// For `d = 2` this only requires `len >= 1`.
pub fn is_one_mod(len: usize, d: usize) -> bool {
    len >= 1 && (len - 1).is_multiple_of(d - 1)
}
