//! A model checker for generalized symbolic trajectory evaluation built on
//! closure functions over the four-valued lattice.

pub mod agraph;
pub mod diag;
pub mod error;
pub mod exec;
pub mod gste;
pub mod lattice;
pub mod netlist;
pub mod oracle;
pub mod ste;
pub mod tel;

pub use agraph::{AssertionGraph, EdgeId, Path, SeqGraph, Shape};
pub use diag::{Code, ParseError};
pub use error::CheckError;
pub use exec::Exec;
pub use gste::{check_gste, GsteOptions, GsteSemantics, Verdict};
pub use lattice::{InfoOrder, Quad};
pub use netlist::{Netlist, NodeId, State};
pub use ste::{Sequence, SteAssertion, SteSemantics};
pub use tel::{Gtel, Tel, Valuation};
