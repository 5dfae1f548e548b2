//! Exact computations behind index-three log del Pezzo surfaces obtained as
//! quotients of K3 surfaces by non-symplectic automorphisms of order three.
//!
//! The modules build on each other roughly bottom-up:
//!
//! * [`lattice`]: integer lattices, Smith normal form, reflections, dual solves.
//! * [`singularity`]: Hirzebruch–Jung fractions, resolution graphs, the index-three
//!   catalog and right resolutions.
//! * [`nefify`]: walking an invariant isotropic class into the nef chamber.
//! * [`fiber`]: decorated Kodaira fibers, section classes and the del Pezzo catalog.
//! * [`toric`]: weighted projective planes, their cyclic quotients and hypersurfaces.
//! * [`tables`]: the shipped reference tables and their TSV rendering.
//!
//! No floating point is used anywhere; rationals are [`num_rational::BigRational`].

pub mod error;
pub mod fiber;
pub mod lattice;
pub mod linalg;
pub mod nefify;
pub mod singularity;
pub mod tables;
pub mod toric;

pub use error::{Error, Result};

/// Exact rational used throughout.
pub type Q = num_rational::BigRational;

/// Shorthand for building a small rational.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}
