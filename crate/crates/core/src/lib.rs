//! Factorization invariants of atomic monoids given by finite presentations.
//!
//! Every monoid handled here is a reduced submonoid `H` of a free abelian
//! monoid `F(P)` over a finite prime list `P`, written additively as
//! exponent vectors. Four presentation kinds are supported (numerical
//! semigroups, explicit generators, block monoids over finite abelian groups
//! and periodic membership patterns); see [`monoid::MonoidSpec`].
//!
//! The crate is organised by task:
//!
//! * [`monoid`]: presentations, membership, atom enumeration, JSON schema;
//! * [`hilbert`]: Hilbert bases of homogeneous linear Diophantine systems;
//! * [`factor`]: factorizations, sets of lengths, distances, elasticity of sets;
//! * [`invariants`]: monoid elasticity, unions of sets of lengths, AAP structure;
//! * [`classes`]: class semigroups, essential supports, prime merging.

pub mod classes;
pub mod error;
pub mod factor;
pub mod hilbert;
pub mod invariants;
mod lp;
pub mod monoid;
pub mod rational;

pub use error::{Error, Result, SpecError};
pub use factor::{delta_of, factorizations, rho_of, set_of_lengths, Factorization, LengthSet};
pub use monoid::{enumerate_atoms, membership, AtomList, ExponentVector, MonoidSpec, SearchBox};
pub use rational::Rational;
