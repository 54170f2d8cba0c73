//! Exact computations in the Radford Hopf algebras `H_n`.
//!
//! `H_n` is generated by `g`, `x`, `y` subject to
//! `g^n = 1`, `x^n = y^n = 0`, `xg = ωgx`, `gy = ωyg`, `xy = ωyx`,
//! where `ω` is a primitive `n`-th root of unity. Coefficients live in a
//! cyclotomic field `ℚ(ζ_m)` so that complex conjugation, and with it every
//! Hopf *-structure axiom, can be checked with exact equality.
//!
//! Module map:
//!
//! * [`scalars`]: the coefficient field `ℚ(ζ_m)` with conjugation.
//! * [`algebra`]: canonical monomials `y^r x^s g^l`, elements, products and
//!   an independent word-rewriting oracle.
//! * [`coalgebra`]: `Δ`, `ε`, `S`, the tensor square and Gaussian binomials.
//! * [`star`]: *-structures and the axiom verifiers.
//! * [`solver`]: exact nullspaces, skew-primitives, group-likes, and
//!   linearization of conjugate-linear systems.
//! * [`classify`]: automorphisms, equivalence witnesses and candidate scans.
//! * [`expr`] and [`json`]: the text and JSON surfaces used by the CLI.

pub mod algebra;
pub mod classify;
pub mod coalgebra;
pub mod expr;
pub mod json;
pub mod scalars;
pub mod solver;
pub mod star;

pub use algebra::{Element, FreeWord, Letter, Monomial};
pub use coalgebra::{Hopf, TensorElement};
pub use scalars::{make_context, Context, FieldContext, Scalar, ScalarError};
