//! Exact symbolic calculus for modules over small Gorenstein rings.
//!
//! The rings are `Z`, `k[x]` and their proper quotients. Modules are
//! finite direct sums of a fixed family of atoms (free, fraction field,
//! primary cyclic, Prüfer, and the all-primes Prüfer wildcard), which is
//! closed under every operation provided here.

pub mod error;
pub mod gorenstein;
pub mod ring;

pub use error::{Error, Result};
pub mod module;
pub mod oracle;
pub mod tor;

pub use module::{Atom, TameModule};
pub use ring::{parse_ring, PrimeSpec, Ring, RingElement, RingSpec};
