//! Factorization invariants of numerical and affine semigroups: Betti
//! elements, isolated factorizations, arrangement constants and the
//! classification predicates built on them (free, complete intersection,
//! rectangular Apery sets, Betti sorted / divisible).

pub mod betti;
pub mod classify;
pub mod constants;
pub mod construct;
pub mod error;
pub mod explore;
pub mod factor;
pub mod intlin;
pub mod isolated;
pub mod natvec;
pub mod par;
pub mod semigroup;

pub use error::{Error, ErrorCategory, Result};
pub use natvec::{Element, Factorization, NatVec};
pub use par::Exec;
pub use semigroup::{Kind, Semigroup};
