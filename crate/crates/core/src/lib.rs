//! Crystal structures on fully-commutative 0-Hecke decreasing factorizations
//! and on skew set-valued tableaux, with the residue map, Hecke and ⋆-insertion,
//! uncrowding, stable Grothendieck polynomials and an exhaustive checker.

pub mod crystal;
pub mod error;
pub mod factorization;
pub mod grothendieck;
pub mod hecke;
pub mod insertion;
pub mod local_crystal_n3;
pub mod mutation;
pub mod partition;
pub mod residue;
pub mod star_crystal;
pub mod svt_crystal;
pub mod tableau;
pub mod uncrowding;
pub mod verification;

pub use error::{Error, Result};
pub use factorization::{DecreasingFactorization, HeckeBiword};
pub use hecke::{HeckeElement, HeckeWord, Letter};
pub use partition::{Partition, SkewShape};
pub use tableau::{MultisetTableau, SetValuedTableau, Tableau, TableauKind};
