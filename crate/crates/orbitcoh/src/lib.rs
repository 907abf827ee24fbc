//! Symbolic engine for minimal real-form orbits in complex flag manifolds.
//!
//! From a Dynkin diagram, a real form (named, Satake data, or an explicit
//! conjugation matrix), and a set of crossed nodes defining a parabolic
//! subalgebra, the engine:
//!
//! * classifies the minimal orbit as totally real, Levi-flat, or generic;
//! * computes the Levi-foliation reduction to a Stein base and extracts the
//!   compact fiber flag manifold;
//! * evaluates fiber cohomology (Hodge numbers, homogeneous line bundles);
//! * assembles rank tables for the tangential Cauchy-Riemann cohomology of
//!   the minimal orbit and the Dolbeault cohomology of its dual open orbit,
//!   together with the restriction identities relating them.
//!
//! All arithmetic is exact (integers and rationals); outputs are
//! deterministic.

pub mod bbw;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod parabolic;
pub mod realform;
pub mod rootsys;

pub use error::{Error, Result};
