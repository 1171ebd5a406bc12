//! Nakayama automorphisms of PBW deformations of Artin-Schelter regular
//! algebras, computed through homogenization, with noncommutative Gröbner
//! bases for the PBW check and a classification of finite-dimensional Hopf
//! actions from the eigen-structure of the automorphism.

pub mod cli;
pub mod cpoly;
pub mod freealg;
pub mod groebner;
pub mod homog;
pub mod hopf;
pub mod linalg;
pub mod nakayama;
pub mod parser;
pub mod presentation;
pub mod upoly;

pub use freealg::{AffineMap, Alphabet, NCPoly, Scalar, Word};
pub use presentation::Presentation;
