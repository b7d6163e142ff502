//! Graded commutative algebra over prime fields: Gröbner bases of graded
//! submodules, minimal resolutions and Ext, local cohomology tables through
//! graded local duality, E-depth, partial generic initial submodules, cone
//! decompositions of local cohomology tables and socle lemma checks.

pub mod cohomology;
pub mod cone;
pub mod corpus;
pub mod error;
pub mod field;
pub mod gb;
pub mod gin;
pub mod hilbert;
pub mod lp;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod socle;
pub mod submodule;

pub use error::{Error, Result};
pub use field::Field;
pub use monomial::Monomial;
pub use order::TermOrder;
pub use poly::{PolyVector, Term};
pub use ring::{FreeModule, Ring};
