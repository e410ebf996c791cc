//! Generating-family homology of Legendrian submanifolds, computed two ways:
//! numerically from sublevel sets of difference functions on sampled grids,
//! and combinatorially from front diagrams through the Chekanov-Eliashberg
//! algebra. On top sit the structural consequences: fiber-dimension lower
//! bounds, fillability obstructions, duality audits, a numeric check of the
//! Seidel decomposition for fillings, and a finite-spectrum surrogate with a
//! Steenrod-based suspension detector.
//!
//! Entry points:
//! - [`genfam`]: symbolic descriptors, difference fields, windows, `gfh`.
//! - [`legfront`]: fronts, DGAs, augmentations, linearized homology.
//! - [`cubegrid`]: sampled fields and cubical sublevel-pair homology.
//! - [`spectop`]: cell-complex spectrum surrogates, stable stems, Sq checks.
//! - [`obstruct`]: decision procedures on homology profiles.
//! - [`homlin`]: the exact linear-algebra core all of the above share.
//!
//! The `gfh` binary wraps these as subcommands; `examples/` holds one
//! runnable walkthrough per capability.

pub mod cubegrid;
pub mod error;
pub mod genfam;
pub mod homlin;
pub mod legfront;
pub mod manifest;
pub mod obstruct;
pub mod spectop;

pub use error::{GfhError, Result};
