//! The free m-ary algebra: canonical words, rational linear combinations,
//! the multilinear bracket, substitution and word enumeration.
//!
//! Words are kept in canonical reduced form. For symmetric signatures the
//! children of every node are sorted non-increasingly in the word order, and
//! for unital binary signatures products with the unit are collapsed.

mod element;
mod enumerate;
mod word;

pub(crate) use element::fmt_coeff_term;
pub use element::{bracket, substitute, substitute_word, Element};
pub use enumerate::{
    enumerate_reduced, enumerate_with, multidegrees_of_total, sub_multidegrees, Multidegree,
    WordCache,
};
pub use word::{compare_words, normalize, RawWord, Signature, Word};
