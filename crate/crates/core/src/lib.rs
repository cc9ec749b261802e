//! Conductors of generalised characters, generalised decomposition numbers
//! and block data for small finite groups, in exact arithmetic.

// Index loops mirror the matrix formulas.
#![allow(clippy::needless_range_loop)]

pub mod blocks;
pub mod cyclo;
pub mod dataset;
pub mod error;
pub mod gendec;
pub mod isometry;
pub mod linalg;
pub mod numtheory;
pub mod residue;
pub mod tables;
pub mod verify;

pub use cyclo::{conductor, conductor_p, parse_cyclo, CycloNum};
pub use dataset::{load_dataset, parse_dataset, Corpus, GroupDataset};
pub use error::{Error, Result};
