//! Monotone read-`k` formulas, their sum-of-products forms, and the chain
//! graphs whose readability they measure.
//!
//! The crate is organised around five areas: [`formula`] (parse trees and
//! rewrites), [`sop`] (CSOP/SOP normal forms and extension checks),
//! [`graph`] (constructions and structural predicates), [`cover`] and
//! [`cover_search`] (local biclique covers), and [`search`] (bounded exact
//! readability search and the proof-step operations).

pub mod cover;
pub mod cover_search;
pub mod error;
pub mod exec;
pub mod formula;
pub mod graph;
pub mod names;
pub mod sample;
pub mod search;
pub mod sop;
pub mod truth_table;
pub mod varset;

pub use cover::{Biclique, BicliqueCover};
pub use error::{Error, ParseError, Result};
pub use exec::Exec;
pub use formula::{parse_formula, Formula, Handle};
pub use graph::Graph;
pub use search::{Decision, SearchBudget};
pub use sop::{SopForm, Term};
