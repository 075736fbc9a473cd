//! One-sided subshifts of finite type as covering maps: points, cylinders,
//! preimage trees, equalizers and invariant sets.

mod dynamics;
mod freeness;
mod invariant;
mod point;
mod system;

pub use dynamics::Cylinder;
pub use freeness::{FreenessCertificate, FreenessVerdict};
pub use invariant::InvariantSearch;
pub use point::Point;
pub use system::{parse_word, symbol_char, word_to_string, ShiftSystem, Symbol, Word, MAX_ALPHABET};
