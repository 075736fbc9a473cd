use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::cocycle::SqrtFunction;
use super::function::{FloatFunction, LocallyConstantFunction as Lcf};
use super::scalar::{QComplex, Scalar};
use crate::symbolic::{Point, ShiftSystem, Symbol};

/// A coefficient function of a crossed-product monomial.
///
/// Exact rational values are kept as long as the operations allow: products
/// and `α` preserve a square-root factor, and `ℒ` preserves it only when the
/// radicand turns out to be a perfect square. Otherwise the values are
/// converted to floating point and the coefficient is marked [`Coefficient::Float`].
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Exact(Lcf),
    /// `scale · √radicand`.
    Radical { scale: Lcf, root: SqrtFunction },
    Float(FloatFunction),
}

impl From<Lcf> for Coefficient {
    fn from(f: Lcf) -> Self {
        Coefficient::Exact(f)
    }
}

impl From<SqrtFunction> for Coefficient {
    fn from(root: SqrtFunction) -> Self {
        let scale = Lcf::one(root.system().clone());
        Coefficient::Radical { scale, root }.normalized()
    }
}

impl From<FloatFunction> for Coefficient {
    fn from(f: FloatFunction) -> Self {
        Coefficient::Float(f)
    }
}

impl Coefficient {
    pub fn one(sys: Arc<ShiftSystem>) -> Self {
        Coefficient::Exact(Lcf::one(sys))
    }

    pub fn zero(sys: Arc<ShiftSystem>) -> Self {
        Coefficient::Exact(Lcf::zero(sys))
    }

    pub fn system(&self) -> &Arc<ShiftSystem> {
        match self {
            Coefficient::Exact(f) => f.system(),
            Coefficient::Radical { scale, .. } => scale.system(),
            Coefficient::Float(f) => f.system(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Coefficient::Exact(f) => f.depth(),
            Coefficient::Radical { scale, root } => scale.depth().max(root.depth()),
            Coefficient::Float(f) => f.depth(),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Coefficient::Float(_))
    }

    pub fn as_exact(&self) -> Option<&Lcf> {
        match self {
            Coefficient::Exact(f) => Some(f),
            _ => None,
        }
    }

    /// Folds a perfect-square radicand into the scale.
    pub fn normalized(self) -> Self {
        match self {
            Coefficient::Radical { scale, root } => match root.exact() {
                Some(r) => Coefficient::Exact(&scale * &r),
                None => Coefficient::Radical { scale, root },
            },
            other => other,
        }
    }

    pub fn to_float(&self) -> FloatFunction {
        match self {
            Coefficient::Exact(f) => f.to_float(),
            Coefficient::Radical { scale, root } => &scale.to_float() * &root.to_float(),
            Coefficient::Float(f) => f.clone(),
        }
    }

    pub fn at(&self, x: &Point) -> Complex64 {
        match self {
            Coefficient::Exact(f) => f.at(x).to_c64(),
            Coefficient::Radical { scale, root } => scale.at(x).to_c64() * root.at(x),
            Coefficient::Float(f) => *f.at(x),
        }
    }

    pub fn value(&self, w: &[Symbol]) -> Complex64 {
        match self {
            Coefficient::Exact(f) => f.value(w).to_c64(),
            Coefficient::Radical { scale, root } => {
                scale.value(w).to_c64() * root.radicand().value(w).to_c64().re.max(0.0).sqrt()
            }
            Coefficient::Float(f) => *f.value(w),
        }
    }

    pub fn mul(&self, other: &Coefficient) -> Coefficient {
        use Coefficient::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Exact(a * b),
            (Exact(a), Radical { scale, root }) | (Radical { scale, root }, Exact(a)) => Radical {
                scale: a * scale,
                root: root.clone(),
            },
            (Radical { scale: s1, root: r1 }, Radical { scale: s2, root: r2 }) => Radical {
                scale: s1 * s2,
                root: r1.mul(r2),
            }
            .normalized(),
            (a, b) => Float(&a.to_float() * &b.to_float()),
        }
    }

    pub fn add(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => Coefficient::Exact(a + b),
            (a, b) => Coefficient::Float(&a.to_float() + &b.to_float()),
        }
    }

    pub fn scale(&self, c: &QComplex) -> Coefficient {
        match self {
            Coefficient::Exact(f) => Coefficient::Exact(f.scale(c)),
            Coefficient::Radical { scale, root } => Coefficient::Radical {
                scale: scale.scale(c),
                root: root.clone(),
            },
            Coefficient::Float(f) => Coefficient::Float(f.scale(&c.to_c64())),
        }
    }

    pub fn scale_float(&self, c: Complex64) -> Coefficient {
        Coefficient::Float(self.to_float().scale(&c))
    }

    pub fn neg(&self) -> Coefficient {
        self.scale(&-QComplex::one())
    }

    pub fn conj(&self) -> Coefficient {
        match self {
            Coefficient::Exact(f) => Coefficient::Exact(f.conj()),
            Coefficient::Radical { scale, root } => Coefficient::Radical {
                scale: scale.conj(),
                root: root.clone(),
            },
            Coefficient::Float(f) => Coefficient::Float(f.conj()),
        }
    }

    pub fn alpha(&self) -> Coefficient {
        match self {
            Coefficient::Exact(f) => Coefficient::Exact(f.alpha()),
            Coefficient::Radical { scale, root } => Coefficient::Radical {
                scale: scale.alpha(),
                root: root.alpha(),
            },
            Coefficient::Float(f) => Coefficient::Float(f.alpha()),
        }
    }

    pub fn alpha_power(&self, n: usize) -> Coefficient {
        (0..n).fold(self.clone(), |c, _| c.alpha())
    }

    /// `ℒ`; a surviving square-root factor degrades to floating point.
    pub fn transfer(&self) -> Coefficient {
        match self.clone().normalized() {
            Coefficient::Exact(f) => Coefficient::Exact(f.transfer()),
            Coefficient::Float(f) => Coefficient::Float(f.transfer()),
            radical => Coefficient::Float(radical.to_float().transfer()),
        }
    }

    pub fn transfer_power(&self, n: usize) -> Coefficient {
        (0..n).fold(self.clone(), |c, _| c.transfer())
    }

    /// Exact test for rational coefficients; floating ones must be exactly zero.
    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Exact(f) => f.is_zero(),
            Coefficient::Radical { scale, root } => {
                let words = scale.system().words(scale.depth().max(root.depth()));
                words
                    .iter()
                    .all(|w| scale.value(w).is_zero() || root.radicand().value(w).is_zero())
            }
            Coefficient::Float(f) => f.table().values().all(|v| v.is_zero()),
        }
    }
}
