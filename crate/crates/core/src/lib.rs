//! Generalized greatest common divisors and the statistics of lattice-point
//! visibility they induce.
//!
//! For a fixed exponent `b`, `gcd_b(r, s)` is the largest `k` with `k | r` and
//! `k^b | s`. A point of `ℕ × ℕ` is *b-visible* when its `gcd_b` equals one.
//! This crate provides:
//!
//! - [`arith`]: exact `gcd_b`, multiplicative-function sieves, Dirichlet
//!   convolution and zeta evaluation with rigorous error bounds.
//! - [`lattice`]: window statistics over `T_N`, densities of fixed `gcd_b`
//!   values, the `d_b` metric and the average order of `gcd_b`.
//! - [`patterns`]: realizability of b-patterns of visible and invisible points,
//!   with an explicit Chinese-remainder construction and an independent verifier.
//! - [`graph`]: the unit-distance graph on b-visible points, its connectivity
//!   and components in finite windows.

pub mod arith;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod patterns;

pub use arith::{gcd_b, is_b_visible, ArithTable, Exponent, LatticePoint};
pub use error::{Error, Result};
