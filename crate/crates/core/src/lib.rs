//! Exact symbolic algebra for Lie–Butcher series on planar forests.

pub mod bell;
pub mod error;
pub mod forest;
pub mod grafting;
pub mod hn;
pub mod lbseries;
pub mod lincomb;
pub mod word;
pub mod wordhopf;

pub use error::{Error, Result};
pub use forest::{ColorSet, Forest, Tree};
pub use lincomb::{GradedEndo, GradedSeries, LinComb, Rational, Tensor};
pub use word::{Alphabet, LetterAlphabet, Word};
