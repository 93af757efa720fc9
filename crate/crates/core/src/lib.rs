//! Ternary self-dual codes from symmetric designs with a cyclic automorphism.
//!
//! This crate holds the algebraic and combinatorial engine: packed GF(3)
//! linear algebra, symmetric 2-designs and their cyclic actions, orbit
//! matrices, expansion of orbit matrices into designs, codes spanned by
//! augmented incidence matrices, low-weight enumeration and classification,
//! and canonical forms for designs and codes.
//!
//! It is `no_std` and only needs an allocator. IO, file formats, parallel
//! orchestration and the command line live in the `tern48` crate.
#![no_std]

extern crate alloc;

mod error;

pub mod canon;
pub mod code;
pub mod design;
pub mod equivalence;
pub mod exec;
pub mod gf3;
pub mod indexer;
pub mod orbit_matrix;
pub mod perm;
pub mod weight;

pub use error::{Error, Result};
