//! Finite sums of monomials `f s^k (s*)^l g` in the crossed product.

mod cyclotomic;
mod element;

pub use cyclotomic::{cyclotomic_polynomial, root_of_unity_average};
pub use element::{Element, Monomial};
