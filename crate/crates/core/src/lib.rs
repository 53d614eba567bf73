//! Document array construction for string collections.
//!
//! Given the concatenation `T = T_1 $ T_2 $ ... T_d $ #` of a collection and its
//! suffix array, the document array `DA[i]` names the document in which the
//! suffix `SA[i]` starts. Three constructions are provided:
//!
//! * [`da::da_inplace`] overwrites the suffix array with the BWT, then with a
//!   counting-pass LF array, and walks the text right to left filling `DA` while
//!   writing the suffix array back into the same cells. Its only workspace is a
//!   copy of the 256-entry count table.
//! * [`da::da_via_isa`] materializes the inverse suffix array.
//! * [`da::da_via_rank`] ranks suffix positions against a separator bitvector
//!   ([`rank::RankBitvector`], plain or Elias-Fano).
//!
//! Positions are 0-based throughout the API. Document identifiers are 1-based,
//! with `d + 1` reserved for the suffix that starts at the final `#`.

pub mod bwt;
pub mod da;
pub mod error;
pub mod exec;
pub mod index;
pub mod io;
pub mod meter;
pub mod rank;
pub mod sa;
pub mod synth;
pub mod text;

pub use error::{Error, Result};
pub use index::{Index, Width};
