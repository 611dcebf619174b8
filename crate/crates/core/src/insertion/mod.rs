//! Hecke insertion, ⋆-insertion with its inverse, and micro-move equivalence.

mod hecke;
mod micro;
mod star;

pub use hecke::{hecke_insert, hecke_insert_traced, HeckeInsertion};
pub use micro::{micro_class, micro_equivalent, micro_neighbours};
pub(crate) use star::insert_rows;
pub use star::{
    reverse_bump, star_insert, star_insert_mutated, star_insert_one, star_insert_traced, star_insert_word,
    star_inverse, StarInsertion,
};

/// Cells `(row, col)` visited by one insertion, bottom row first.
pub type Path = Vec<(usize, usize)>;
