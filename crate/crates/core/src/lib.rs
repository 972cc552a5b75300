//! Exact symbolic computation for the Ramond Lie superalgebra.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: generators `L_m`, `G_m`, `c`, their super-bracket and the
//!   named subalgebras (`b`, `m^(t)`, `p^(t)`, `R^(m,n)`, ...).
//! - [`pbw`]: PBW-normal monomials of the enveloping algebra and the
//!   normal-ordering rewriter that implements multiplication.
//! - [`base`]: concrete inducing modules (Verma tops, Whittaker tops, the
//!   `b^(0)`/`b^(1)` families) and the super-module axiom validator.
//! - [`induced`]: induced modules `Ind(V)`, the principal order on PBW index
//!   data, the reduction-to-base procedure, simplicity certificates and the
//!   Verma singular-vector search.
//! - [`linalg`]: exact rational nullspaces.
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod algebra;
pub mod base;
pub mod error;
pub mod induced;
pub mod linalg;
pub mod pbw;
pub mod rational;

pub use algebra::{Generator, LieElement, Parity, Subalgebra};
pub use error::{Error, Result};
pub use pbw::{AlgebraElement, MonomialOrder, PbwMonomial};
pub use rational::Q;
