//! The free integer module on singular braid words: expansion of double
//! crossings, the key cancellation relation, truncation and
//! desingularization.

mod desingularize;
mod expand;
mod normal;
mod sum;

pub use desingularize::desingularize;
pub use expand::{expand_letter, expand_word, key_reduce, rhs_symbolic, so_sign, split_double_blocks};
pub use normal::bl_normal_form;
pub use sum::{multiply, truncate, FormalSum, Term};

pub use crate::moves::SignConvention;
