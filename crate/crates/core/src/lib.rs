//! Procedurally generated text puzzles with exact-feedback graders, reference
//! solvers, and prompt rendering.

pub mod generators;
pub mod graders;
pub mod lexicon;
pub mod model;
pub mod prompting;
pub mod solvers;

pub use graders::{grade, normalize_answer};
pub use lexicon::{Lexicon, Resources};
pub use model::*;
