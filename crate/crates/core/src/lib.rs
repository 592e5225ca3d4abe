//! Rational Khovanov homology of oriented link diagrams, and the lower bounds
//! on minimal positive crossing numbers that follow from its extreme
//! homological degrees.
//!
//! The crate is `no_std` (with `alloc`). File formats and the command-line
//! front end live in the `khbound` crate.

#![no_std]
extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod diagram;
pub mod certify;
pub mod cube;
pub mod error;
pub mod factory;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod reduction;

pub use diagram::{parse_pd, Crossing, Diagram, DiagramStats, EdgeLabel, Sign};
pub use error::{CertifyError, ComputeError, DiagramError, LinalgError};
pub use invariants::{kh_table, Backend, ComputeConfig, KhTable};
pub use certify::{Certificate, Statement, Verdict};
