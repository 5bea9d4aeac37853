//! Exact construction and verification of Lie pseudoalgebras over presented
//! polynomial algebras, their restrictions, psi-sums, morphisms and
//! comorphisms, and of finite groupoids with their (co)morphisms.

pub mod catalog;
pub mod error;
pub mod exactpoly;
pub mod exec;
pub mod groupoid;
pub mod morphisms;
pub mod pseudoalg;
pub mod psisum;
pub mod restrict;
pub mod report;

pub use error::{Error, Result};
pub use exec::Execution;
pub use report::{Check, Report};
