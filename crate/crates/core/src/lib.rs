//! Exact toolkit for action accessibility, external weak actors and bracket
//! families of varieties of non-associative algebras.

pub mod error;
pub mod exact_linalg;

pub use error::{Error, Result};
pub mod free_magma;
mod text;
pub mod variety;
pub mod bracket_family;
pub mod algebra;
pub mod weak_actor;
pub mod actions;
pub mod report;
pub mod suite;
