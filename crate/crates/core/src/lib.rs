//! Exact Pieri calculus for Schubert-type classes on Grassmannians.
//!
//! The crate computes, over exact rational arithmetic, the expansion of
//! `c_r(V^dual) * [class]` for eight families of classes (Schubert,
//! ideal/structure sheaves, Chern-Schwartz-MacPherson, Segre-MacPherson,
//! motivic Chern, Segre motivic, dualizing sheaf) via ribbon operators on
//! partitions, and verifies the operator calculus against an independent
//! affine-Hecke-algebra model by brute force at small rank.
//!
//! Modules:
//! - [`exactalg`]: exact rationals and sparse multivariate polynomials;
//! - [`shapes`]: partitions, permutations, ribbons;
//! - [`hecke`]: the affine Hecke algebra, normal ordering, symmetrizers;
//! - [`schurep`]: the abstract Schubert representation (the oracle);
//! - [`ribbonops`]: the eight ribbon operators and the Pieri engine;
//! - [`symfunc`]: truncated symmetric functions, set-valued tableaux,
//!   stable Grothendieck polynomials, and the dualizing-sheaf model;
//! - [`verify`]: the named verification suites behind `verify` on the CLI.

pub mod error;
pub mod exactalg;
pub mod hecke;
pub mod par;
pub mod ribbonops;
pub mod schurep;
pub mod shapes;
pub mod symfunc;
pub mod verify;

pub use error::Error;
