//! Semi-transition maps on computable commutative rings: axiom verification,
//! localization, φ-filter/ideal duality, ideal-convergent sequence rings and
//! the ultrafilter compactification, all checked exactly at desk scale.

pub mod error;
pub mod rat;
pub mod ring;

pub use error::{Error, Result};
pub use rat::{FpElem, Rat};
pub mod poly;
pub mod seq;
pub mod lambda;
pub mod semitransition;
pub mod localization;
pub mod filters;
pub mod omega;
pub mod descriptor;
pub mod report;
pub mod suite;
pub mod cli;
