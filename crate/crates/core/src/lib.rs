//! Ultrametric analysis of syntactic phrase trees.
//!
//! Trees are parsed from labeled bracketings ([`tree`]), given minimum
//! branching heights, and turned into leaf distance matrices whose distance is
//! the height of the lowest common ancestor ([`ultrametric`]). On top of that
//! sit c-command and cu-command ([`command`]), corpus-level category distances
//! ([`lexdist`]), the ±N/±V feature matrix ([`features`]) and hierarchy
//! constraint checks ([`hierarchy`]). [`verify`] bundles the exhaustive and
//! randomized property suites used by the CLI.

pub mod cli;
pub mod command;
pub mod error;
pub mod features;
pub mod fixtures;
pub mod generate;
pub mod hierarchy;
pub mod lexdist;
pub mod matrix;
pub mod tree;
pub mod ultrametric;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{DistanceMatrix, LabeledMatrix, RelationMatrix};
pub use tree::{assign_heights, parse_tree, HeightAssignment, NodeId, PhraseTree};
