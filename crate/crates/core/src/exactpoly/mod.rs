//! Exact polynomial arithmetic over the rationals, ideals with Groebner-basis
//! normal forms, algebra presentations, algebra maps and derivations.

mod algebra;
mod groebner;
pub mod linalg;
mod maps;
mod parse;
mod poly;

pub use algebra::{ideal_membership, normal_form, AlgebraPres, IdealPres};
pub use groebner::{buchberger, is_groebner, reduce, s_polynomial, DEFAULT_STEP_CAP};
pub use maps::{apply_derivation, apply_morphism, check_derivation, check_morphism, AlgMorphism, Derivation};
pub use parse::parse_poly;
pub use poly::{rat, ratio, MPoly, Monomial, MonomialOrder, Rational};
