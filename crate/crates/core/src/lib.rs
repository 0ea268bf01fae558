//! Exact and numeric algebraic geometry for complete-intersection
//! Calabi-Yau threefolds in P^5 that contain a sextic del Pezzo surface,
//! their cyclic symmetries, and the quotient singularities of the
//! associated product quotients.
//!
//! Exact arithmetic lives in Q(zeta_12) ([`exactfield`]); polynomials,
//! Groebner bases and elimination are in [`multipoly`] and [`groebner`];
//! [`numsolve`] turns zero-dimensional ideals into certified complex points.
//! The geometric layers are [`varieties`], [`symmetry`] and [`hodge`], and
//! [`claims`] ties everything to a registry of checkable statements.

pub mod claims;
pub mod error;
pub mod exactfield;
pub mod groebner;
pub mod hodge;
pub mod linalg;
pub mod multipoly;
pub mod numsolve;
pub mod symmetry;
pub mod varieties;

pub use error::{Error, Result};
pub use exactfield::{CycElem, Rational};
pub use multipoly::{MPoly, MonOrder, Monomial, Ring, RingRef};
