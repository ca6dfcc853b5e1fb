//! Permutation weights and string functions for the affine algebras `A_N^(1)`.
//!
//! The affine Weyl orbit of a dominant weight `Λ` is sliced by depth `d`; at
//! each depth the slice is a finite union of finite Weyl orbits, labelled by
//! the dominant weights in [`pweights::PermutationWeightSet`]. Signed versions
//! of these sets for `ρ̃` and `ρ̃ + Λ` give both sides of the Weyl–Kac
//! character formula, which [`weylkac`] solves order by order for the string
//! function coefficients.
//!
//! [`oracle`] recomputes orbits by brute force over translations and is used
//! only to cross-check the main path.

pub mod oracle;
pub mod polyalg;
pub mod pweights;
pub mod signatures;
pub mod verify;
pub mod weightlattice;
pub mod weylkac;

pub use polyalg::{LaurentPoly, QSeries, SchurContext, Specialization};
pub use pweights::{MaximalClass, PermutationWeightSet, WeightCache};
pub use oracle::{orbit_bruteforce, string_by_counting};
pub use signatures::{SignatureConvention, SignedWeight};
pub use weylkac::{solve_strings, SolveOptions, StringFunctionTable};
pub use weightlattice::{AffineDominant, AffineWeight, AlgebraContext, FiniteWeight};

