//! Generating-function machinery: canonical states, inclusion-exclusion
//! transforms, the block recurrence engine and the closed-form catalog.
//!
//! Every generating function here counts permutations that avoid 132 in
//! addition to the stated constraints.

mod catalog;
mod recurrence;
mod state;
mod transform;

pub use catalog::{
    append_max, gf_avoid_ulk, gf_both_once_u2k, gf_exact_once_ulk, lift_by_largest, ulk_set, U2kSum,
};
pub use recurrence::Engine;
pub use state::GfState;
pub use transform::{at_least_once_expand, at_least_once_expand_with, exact_once_reduce, Combination};

use crate::algebra::RationalFunction;

/// Where a generating function came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Catalog,
    Recurrence,
    InclusionExclusion,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Catalog => "catalog",
            Provenance::Recurrence => "recurrence",
            Provenance::InclusionExclusion => "inclusion-exclusion",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfResult {
    pub value: RationalFunction,
    pub provenance: Provenance,
}

impl GfResult {
    pub fn catalog(value: RationalFunction) -> Self {
        GfResult { value, provenance: Provenance::Catalog }
    }
}
