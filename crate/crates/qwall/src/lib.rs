//! Exact computational toolkit for quantum (projective) symmetries of the
//! seventeen wallpaper groups.
//!
//! The crate has three pillars:
//!
//! * [`factorsys`] classifies Z2-valued factor systems of a wallpaper group
//!   by reducing the cocycle identity to a linear system over F2, solving it
//!   exactly, and quotienting by coboundaries.
//! * [`homology`] computes integral group homology through equivariant cell
//!   complexes, periodic/bar resolutions, a Borel-construction total complex,
//!   and Smith normal form over arbitrary-precision integers; cohomology with
//!   Z2 or U(1) coefficients follows by universal coefficients.
//! * [`clifford`] derives band-structure consequences: Clifford algebra
//!   signatures of the projective symmetry operators, minimal degeneracies,
//!   explicit momentum-space representations, winding numbers, and randomized
//!   degeneracy checks.
//!
//! Everything upstream of the final eigenvalue computations is exact: integer
//! matrices, rationals for fractional translations, and bit-packed F2 linear
//! algebra. All seventeen groups ship as data files compiled into the binary.

pub mod clifford;
pub mod factorsys;
pub mod gf2;
pub mod group;
pub mod homology;
pub mod intmat;
