//! Irreducibility certificates for multivariate polynomials from their Newton
//! polytopes.
//!
//! [`poly`] parses and splits polynomials, [`geometry`] is an exact
//! lattice-polytope kernel, [`decomp`] decides integral Minkowski
//! decomposability, and [`criteria`] combines them into one-sided
//! irreducibility tests with re-checkable certificates.

pub mod cli;
pub mod criteria;
pub mod decomp;
pub mod geometry;
pub mod lp;
pub mod poly;
pub mod random;
