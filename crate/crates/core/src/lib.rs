//! Computations with Pin(2)-equivariant Seiberg-Witten Floer homotopy types
//! presented through their Borel cohomology over `F2[q, v]/(q^3)`.
//!
//! The layers, bottom to top:
//!
//! - [`f2`]: bit-packed linear algebra over the two-element field.
//! - [`rmodule`]: the ring `R`, its v-saturated ideals and finite R-modules.
//! - [`swfclass`]: spaces of type SWF, their `(a, b, c)` correction terms,
//!   suspension, duality and the Tate-periodic localization.
//! - [`floer`]: the Floer-theoretic invariants derived from a space class.
//! - [`selfcheck`]: random instances and independent oracles.

pub mod error;
pub mod f2;
pub mod floer;
pub mod rational;
pub mod rmodule;
pub mod selfcheck;
pub mod swfclass;

pub use error::{Error, Result};
