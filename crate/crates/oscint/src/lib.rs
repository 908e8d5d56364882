//! Analysis of oscillatory integral operators `T_λ f(x) = ∫ e^{iλS(x,z)} a(x,z) f(z) dz`
//! whose phase `S` is a homogeneous polynomial with no pure-`x` or pure-`z` monomials.
//!
//! The crate is organized around the pipeline
//!
//! * [`poly`] — exact sparse arithmetic for homogeneous polynomials in split variables;
//! * [`hessmap`] — the mixed-Hessian isomorphism, its compatibility test and explicit inverse;
//! * [`binres`] — Sylvester resultants, gcds and real-linear-factor multiplicities of binary forms;
//! * [`cubic22`] — the quadratic form `Φ = det S″_xz` of cubic phases in (2+2)-dimensions,
//!   the nondegeneracy/resultant hypothesis checker and the conic geometry of the critical variety;
//! * [`newton`] — Newton polytope, Newton distance (exact rational LP) and the modified
//!   Newton distance search over separate linear changes of `x` and `z`;
//! * [`pencil`] — phases `x₁φ₁(z) + x₂φ₂(z)` built from pencils of binary forms;
//! * [`predict`] — hypothesis verification and the decay-rate decision tree;
//! * [`normest`] — matrix-free power-iteration estimates of `‖T_λ‖`, λ-sweeps with
//!   log–log slope fits, and scaled-bump lower-bound witnesses;
//! * [`cli`] — the `oscint` command-line front end.
//!
//! Run `cargo run --example <name>` for guided tours of each capability; the
//! acceptance suite lives in `tests/acceptance.rs`.

pub mod binres;
pub mod cli;
pub mod corpus;
pub mod cubic22;
pub mod hessmap;
pub mod newton;
pub mod normest;
pub mod pencil;
pub mod poly;
pub mod predict;
pub mod ratmat;
