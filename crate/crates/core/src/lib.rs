//! Linear algebra over F2, quadratic forms, symplectic groups and the
//! arithmetic checks used to study symmetric determinantal representations.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod f2core;
pub mod gf2k;
pub mod localglobal;
pub mod matgroups;
pub mod quadforms;
pub mod reproduce;

pub use error::{Error, Result};
