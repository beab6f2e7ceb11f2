//! Hurwitz orbits of factorizations in finite groups.
//!
//! A factorization is a tuple of group elements; the braid group acts on
//! such tuples by Hurwitz moves, and this crate enumerates the resulting
//! orbits. Groups come from finite presentations (realized by coset
//! enumeration), from permutations, or from small hand-written tables.
//!
//! ```
//! use std::sync::Arc;
//! use hurwitz_orbits::groups::Group;
//! use hurwitz_orbits::hurwitz::{orbit_size, Factorization, OrbitSize};
//! use hurwitz_orbits::presentations::Builtin;
//!
//! let g4 = Arc::new(Group::from_builtin(&Builtin::G4, 10_000).unwrap());
//! let (a, b) = (g4.generator("a").unwrap(), g4.generator("b").unwrap());
//! let f = Factorization::new(g4, vec![a, a, b, b]).unwrap();
//! assert_eq!(orbit_size(&f, 1_000).unwrap(), OrbitSize::Finite(36));
//! ```

pub mod equalities;
pub mod groups;
pub mod hurwitz;
pub mod presentations;
pub mod suites;
pub mod toddcoxeter;
pub mod words;

pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(
    value: &T,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/words.md")]
    struct Words;
    #[doc = include_str!("../../../book/src/presentations.md")]
    struct Presentations;
    #[doc = include_str!("../../../book/src/coset-enumeration.md")]
    struct CosetEnumeration;
    #[doc = include_str!("../../../book/src/groups.md")]
    struct Groups;
    #[doc = include_str!("../../../book/src/hurwitz.md")]
    struct Hurwitz;
    #[doc = include_str!("../../../book/src/equalities.md")]
    struct Equalities;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
    #[doc = include_str!("../../../README.md")]
    struct Readme;
}
