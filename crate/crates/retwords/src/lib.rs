//! Return words of infinite words: classic, semi-abelian and abelian.
//!
//! This crate generates prefixes of well-known infinite words (morphic fixed
//! points, mechanical words, standard words, periodic and block-concatenated
//! words), computes the return words of their factors and abelian classes,
//! builds lexicographic arrays of balanced cyclic words, and turns the
//! return-count characterizations of Sturmian words into runnable,
//! finite-evidence verdicts.
//!
//! A quick tour:
//!
//! ```
//! use retwords::factors::AbelianClassKey;
//! use retwords::returns::{semi_abelian_returns, Side};
//! use retwords::words::{generate_prefix, FiniteWord, WordSpec};
//!
//! let w = generate_prefix(&WordSpec::thue_morse(), 4096)?;
//! let class = AbelianClassKey::of(&FiniteWord::binary("01")?);
//! let report = semi_abelian_returns(&w, &class, Side::Left)?;
//! let returns: Vec<String> =
//!     report.returns.words().unwrap().iter().map(|r| r.to_string()).collect();
//! assert_eq!(returns, ["0", "01", "1", "10"]);
//! # Ok::<(), retwords::error::Error>(())
//! ```
//!
//! The companion guide in `book/` walks through the concepts; its code
//! snippets are compiled as doc-tests of this crate, so the book and the
//! library cannot drift apart.

pub mod classify;
pub mod error;
pub mod factors;
pub mod lexarray;
pub mod returns;
pub mod speclang;
pub mod structure;
pub mod words;

pub use error::{Error, Result};
pub use factors::{AbelianClassKey, ParikhVector};
pub use returns::{ReturnMode, ReturnReport, Side, StabilizationPolicy, Subject};
pub use words::{FiniteWord, WordSpec};

/// Every fenced Rust block in the book is compiled and run as a doc-test.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(generators, "../../../book/src/generators.md");
    chapter!(factors_and_classes, "../../../book/src/factors-and-classes.md");
    chapter!(return_words, "../../../book/src/return-words.md");
    chapter!(lexicographic_array, "../../../book/src/lexicographic-array.md");
    chapter!(structure, "../../../book/src/structure.md");
    chapter!(verdicts, "../../../book/src/verdicts.md");
}
