//! Executable combinatorics of augmentation categories.
//!
//! Finite truncated shape categories (simplex, cyclic, planar and symmetric
//! trees, and their amalgamation), presheaves over them, boundaries, horns,
//! (co)skeleta, normal monomorphisms, Kan and hypergroupoid checks, homotopy
//! classes, nerves, and the i_! ⊣ i^* adjunctions — all at desk scale, with
//! every structural axiom machine-checked rather than assumed.

pub mod cat;
pub mod constructions;
pub mod dot;
pub mod error;
pub mod homotopy;
pub mod io;
pub mod presheaf;
pub mod report;
pub mod shapes;

pub use error::{Error, Result};
