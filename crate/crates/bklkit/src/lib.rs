// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact canonical and dual canonical bases in windowed mixed Fock spaces.
pub mod bar;
pub mod cache;
pub mod canonical;
pub mod characters;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod fock;
pub mod oracle;
pub mod scalars;
pub mod verify;

pub use error::{BklError, Result};
