//! Finite group rings and witness-producing checks for ring properties
//! (reduced, reversible, symmetric, SI, duo, 2-primal), with central
//! idempotent decompositions for the semisimple case.

pub mod cli;
pub mod decompose;
pub mod error;
pub mod groupring;
pub mod groups;
pub mod linalg;
pub mod properties;
pub mod rings;

pub use error::{Error, Result};
pub use groupring::{GroupRing, GroupRingElement};
pub use groups::{parse_group, FiniteGroup};
pub use properties::{Budget, Mode, Property, PropertyVerdict, Status, Witness};
pub use rings::{parse_ring, Elem, FiniteRing, Ring};
