//! Exact root counting for structured polynomial systems.
//!
//! A square system whose equations are general linear combinations of fixed
//! polynomial families can be counted in two independent ways:
//!
//! * polyhedrally, by certifying that the homogenized families form a
//!   Khovanskii basis ([`khovanskii`]) and then taking a mixed volume of the
//!   leading-term polytopes ([`polytope`], [`counting`]);
//! * algebraically, by drawing random rational coefficients and counting the
//!   standard monomials of a Gröbner basis ([`groebner`]).
//!
//! The [`resonator`] module produces the harmonic-balance systems of driven
//! nonlinear resonators, which are the main worked application, and
//! [`fixtures`] collects named reference inputs with their expected counts.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! polytope geometry uses integer determinants. The only floating point code
//! is the quadrature check in [`resonator::fourier_quadrature_check`].

pub mod cli;
pub mod counting;
pub mod error;
pub mod fixtures;
pub mod groebner;
pub mod khovanskii;
pub mod polyring;
pub mod polytope;
pub mod resonator;
pub mod toric;

pub use error::{Error, Result};
pub use polyring::{Monomial, MonomialOrder, PolySystem, Polynomial, Rational, Ring};
