mod indexset;
mod sequence;

pub use indexset::{IndexSet, Query, MAX_CORRECTION, MAX_MODULUS};
pub use sequence::{Block, NIdeal, PiecewiseSeq, DEFAULT_BLOCK_BOUND};
