//! Oriented braid words, the boundary permutation map, and closures.

mod diagram;
mod orientation;
mod permutation;
mod word;

pub use diagram::{close, Crossing, LinkDiagram};
pub(crate) use diagram::UnionFind;
pub use orientation::Orientation;
pub use permutation::{is_knot_closure, permutation_of, Permutation};
pub use word::{BraidLetter, BraidWord, LetterKind};
