//! Coupled thin-dipole arrays: impedance matrices, far-field patterns,
//! realized gain with mismatch and conductor loss, and a differential
//! evolution search for super-directive layouts.
//!
//! ```
//! use superdir::designs::table_one;
//! use superdir::em::PatternModel;
//! use superdir::metrics::evaluate;
//!
//! let d = table_one();
//! let r = evaluate(&d.array, &d.excitation, 50.0, d.direction, PatternModel::default())?;
//! assert!(r.realized_gain_dbi.unwrap() > 8.5);
//! # Ok::<(), superdir::Error>(())
//! ```
//!
//! The guide in `book/` walks through each layer.

pub mod cli;
pub mod compare;
pub mod designs;
pub mod em;
pub mod error;
pub mod metrics;
pub mod network;
pub mod numerics;
pub mod optimizer;
pub mod subarray;

pub use error::{Error, Result};

// Runs the book's snippets as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/impedance.md")]
    mod impedance {}
    #[doc = include_str!("../../../book/src/patterns.md")]
    mod patterns {}
    #[doc = include_str!("../../../book/src/realized-gain.md")]
    mod realized_gain {}
    #[doc = include_str!("../../../book/src/optimizer.md")]
    mod optimizer {}
    #[doc = include_str!("../../../book/src/subarrays.md")]
    mod subarrays {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
