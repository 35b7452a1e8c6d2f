//! Weighted fusion category algebras and q-Schur algebras of GL2(q) in
//! characteristic 2, built from explicit groups and checked against each other.

pub mod algkit;
pub mod check;
pub mod error;
pub mod ffield;
pub mod fusion;
pub mod linalg;
pub mod matgrp;
pub mod qschur;
pub mod smallgroup;
pub mod verify;
pub mod wfca;

pub use error::{Error, Result};
pub use ffield::{make_field, Fe, FiniteField};
