//! Exact classification of points of `R^n` under the affine group
//! `GL(n, Z) ⋉ Z^n`.
//!
//! A point is classified by the pair `(G_x, c)`: the subgroup of `R`
//! generated by `1` and the coordinates of `x`, together with a small integer
//! read off the smallest rational affine space containing `x`. Two points lie
//! in the same orbit exactly when these pairs agree, and every routine that
//! decides equivalence can also produce an explicit integer affine map
//! sending one point to the other.
//!
//! Coordinates are exact: rational points use arbitrary-precision rationals,
//! and irrational points are written as rational combinations of declared
//! symbols (see [`orbit::SymBasis`]) that are trusted to be linearly
//! independent over `Q` together with `1`.

pub mod arith;
pub mod error;
pub mod farey;
pub mod lattice;
pub mod orbit;
pub mod oracle;
pub mod space;

pub use arith::{Int, Rational};
pub use error::{Error, Result};
pub use farey::{AffinePoint, AffineWitness, HomVector, RatPoint, RatSimplex};
pub use lattice::{IntMatrix, LatticeBasis};
pub use orbit::{GroupInvariant, OrbitInvariant, SymBasis, SymPoint};
pub use space::{RatAffineSpace, SpaceInvariants};
