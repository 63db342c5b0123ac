//! Antimagic orientations of paths and lobsters.
//!
//! The crate builds an orientation and a bijective arc labeling for any
//! lobster such that every vertex receives a distinct vertex-sum (labels of
//! entering arcs minus labels of leaving arcs). Around the constructors sit
//! an independent [`verify`] module, a brute-force [`oracle`] for small
//! trees, a seeded instance [`generator`] and the file formats in [`io`].
//!
//! ```
//! use antimagic::{graph::Tree, lobster::orient_lobster, verify::verify_antimagic};
//!
//! // K_{1,3} with one leg extended: a small caterpillar.
//! let tree = Tree::new(5, vec![(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
//! let labeling = orient_lobster(&tree).unwrap();
//! assert!(verify_antimagic(&labeling).is_antimagic());
//! ```

pub mod error;
pub mod generator;
pub mod graph;
pub mod io;
pub mod lobster;
pub mod oracle;
pub mod path;
pub mod taxonomy;
pub mod verify;

pub use error::Error;
pub use graph::{Arc, OrientedLabeling, Tree, VertexSums};
