//! `ind(E)`, the cocycles `I_k`, square-root functions and the partition of unity.

use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::function::{FloatFunction, LocallyConstantFunction as Lcf};
use super::scalar::{is_real_nonnegative, qreal, rational_sqrt, QComplex};
use crate::error::{Error, Result};
use crate::symbolic::{Point, ShiftSystem, Symbol};

/// `α(𝒮(1))`, at depth 2: the fiber count at `T x`.
pub fn ind_e(sys: &Arc<ShiftSystem>) -> Lcf {
    Lcf::one(sys.clone()).fiber_sum().alpha()
}

/// `I_k = ind(E) · α(ind(E)) ⋯ α^{k-1}(ind(E))`, at depth `k + 1`; `I_0 = 1`.
pub fn cocycle(sys: &Arc<ShiftSystem>, k: usize) -> Lcf {
    let ind = ind_e(sys);
    (0..k).fold(Lcf::one(sys.clone()), |acc, _| &ind * &acc.alpha())
}

/// `I_k(x)` evaluated directly: the product of column counts of `x_1 … x_k`.
pub fn cocycle_at(sys: &ShiftSystem, x: &Point, k: usize) -> u64 {
    (1..=k).map(|j| sys.in_degree(x.symbol(j)) as u64).product()
}

/// The pointwise square root of a nonnegative rational function.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtFunction {
    radicand: Lcf,
}

impl SqrtFunction {
    pub fn new(radicand: Lcf) -> Result<Self> {
        if !radicand.table().values().all(is_real_nonnegative) {
            return Err(Error::input("radicand must be real and nonnegative"));
        }
        Ok(SqrtFunction { radicand })
    }

    pub fn radicand(&self) -> &Lcf {
        &self.radicand
    }

    pub fn depth(&self) -> usize {
        self.radicand.depth()
    }

    pub fn system(&self) -> &Arc<ShiftSystem> {
        self.radicand.system()
    }

    pub fn mul(&self, other: &SqrtFunction) -> SqrtFunction {
        SqrtFunction {
            radicand: &self.radicand * &other.radicand,
        }
    }

    pub fn alpha(&self) -> SqrtFunction {
        SqrtFunction {
            radicand: self.radicand.alpha(),
        }
    }

    /// Pointwise inverse on the support, zero elsewhere.
    pub fn pseudo_inverse(&self) -> SqrtFunction {
        SqrtFunction {
            radicand: self.radicand.map(|v| {
                if v.is_zero() {
                    QComplex::zero()
                } else {
                    QComplex::one() / v.clone()
                }
            }),
        }
    }

    /// The square root as an exact function, when every value is a perfect square.
    pub fn exact(&self) -> Option<Lcf> {
        let mut ok = true;
        let f = self.radicand.map(|v| match rational_sqrt(&v.re) {
            Some(r) => qreal(r),
            None => {
                ok = false;
                QComplex::zero()
            }
        });
        ok.then_some(f)
    }

    pub fn to_float(&self) -> FloatFunction {
        self.radicand.to_float().map(|v| Complex64::new(v.re.max(0.0).sqrt(), 0.0))
    }

    pub fn at(&self, x: &Point) -> f64 {
        use super::scalar::Scalar;
        self.radicand.at(x).to_c64().re.max(0.0).sqrt()
    }
}

/// `v_i = 1_{[i]}` and `u_i = (ind(E) v_i)^{1/2}` for every symbol `i`. The
/// shift is injective on each length-one cylinder, so these cylinders form
/// the cover.
pub fn partition_of_unity(sys: &Arc<ShiftSystem>) -> Vec<(Lcf, SqrtFunction)> {
    let ind = ind_e(sys);
    sys.symbols()
        .map(|i| {
            let v = Lcf::indicator(sys.clone(), &[i]).expect("single symbols are admissible");
            let u = SqrtFunction::new(&ind * &v).expect("ind(E) is positive");
            (v, u)
        })
        .collect()
}

/// `u_j = u_{j_0} α(u_{j_1}) ⋯ α^{l-1}(u_{j_{l-1}})`, kept as a square root.
pub fn multi_index_u(sys: &Arc<ShiftSystem>, j: &[Symbol]) -> Result<SqrtFunction> {
    sys.check_symbols(j)?;
    let parts = partition_of_unity(sys);
    let mut acc = SqrtFunction::new(Lcf::one(sys.clone()))?;
    for (n, &i) in j.iter().enumerate() {
        let mut factor = parts[i as usize].1.clone();
        for _ in 0..n {
            factor = factor.alpha();
        }
        acc = acc.mul(&factor);
    }
    Ok(acc)
}
