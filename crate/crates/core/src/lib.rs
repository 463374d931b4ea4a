//! Holomorphs, regular subgroups, skew braces and solvable realizations of
//! finite groups as permutation groups.

pub mod brace;
pub mod cert;
pub mod error;
pub mod holomorph;
pub mod matgrp;
pub mod named;
pub mod perm_core;
pub mod realize;
pub mod record;
pub mod search;

pub use error::{Error, Result};
pub use perm_core::{FinGroup, GroupHom, Perm};
