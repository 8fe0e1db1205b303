//! Diagram monoids of bipartitions: products, membership, enumeration,
//! Green's relations, closed-form counts and presentations.

pub mod bipartition;
pub mod cli;
pub mod counting;
pub mod enumerate;
mod error;
pub mod families;
pub mod generators;
pub mod greens;
pub mod pattern;
pub mod unionfind;
pub mod words;

pub use bipartition::{Bipartition, BlockType, Side, Vertex};
pub use error::{Error, Result};
pub use families::{Family, FamilyKind};
pub use generators::Generator;
pub use pattern::Pattern;
