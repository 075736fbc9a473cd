//! Locally constant functions on the shift space with exact rational values,
//! together with `α`, the transfer operator and the cocycles built from them.

mod cocycle;
mod coefficient;
mod function;
mod scalar;

pub use cocycle::{cocycle, cocycle_at, ind_e, multi_index_u, partition_of_unity, SqrtFunction};
pub use coefficient::Coefficient;
pub use function::{FloatFunction, Function, LocallyConstantFunction};
pub use scalar::{
    is_real_nonnegative, qcomplex, qcomplex_from_c64, qint, qone, qreal, rat, rational_from_f64,
    rational_sqrt, QComplex, Rational, Scalar,
};
