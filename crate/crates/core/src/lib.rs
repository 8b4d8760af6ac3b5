//! Finite and profinite n-ary (polyadic) groups.
//!
//! The crate covers finite n-ary groups ([`FiniteNaryGroup`]) with
//! exhaustive, sampled and certificate-based axiom checks; Hosszu-Gloskin
//! presentations ([`HGPresentation`]) and their recovery from a bare
//! operation; explicit Post covers ([`PostCoverGroup`]); finite truncations
//! of inverse systems ([`InverseSystem`]); and the exact normalized counting
//! measures on cylinder sets of the inverse limit, for the n-ary group, its
//! retract and its Post cover ([`measure`]).
//!
//! Elements are dense indices `0..size`. All measures are exact rationals.

pub mod corpus;
pub mod cover;
pub mod doc;
mod error;
pub mod group;
pub mod measure;
pub mod nary;
pub mod presentation;
pub mod report;
pub mod set;
pub mod system;

pub use cover::{build_post_cover, cover_subset_of_g, verify_cover_properties, PostCoverGroup};
pub use error::{Error, Result};
pub use group::{groups_isomorphic, FiniteGroup};
pub use measure::{CylinderSet, MeasureValue};
pub use nary::{AssocStrategy, CheckConfig, FiniteNaryGroup, VerificationStatus};
pub use presentation::{recover, HGPresentation, RecoverConfig};
pub use report::{Status, VerificationReport, Witness};
pub use set::ElementSet;
pub use system::{DirectedIndex, InverseSystem, Thread};

/// A carrier element: a dense, zero-based index.
pub type Element = usize;

#[cfg(feature = "parallel")]
pub(crate) fn par_map<T, F>(range: std::ops::Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T, F>(range: std::ops::Range<usize>, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    range.map(f).collect()
}
