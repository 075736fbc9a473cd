use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;
/// Complex numbers with exact rational parts.
pub type QComplex = Complex<BigRational>;

/// Values a locally constant function may take.
pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> + Send + Sync {
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    fn from_count(n: usize) -> Self;
}

impl Scalar for QComplex {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn from_count(n: usize) -> Self {
        qreal(rat(n as i64, 1))
    }
}

impl Scalar for Complex64 {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn from_count(n: usize) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qreal(r: Rational) -> QComplex {
    Complex::new(r, Rational::zero())
}

pub fn qint(n: i64) -> QComplex {
    qreal(rat(n, 1))
}

pub fn qcomplex(re: Rational, im: Rational) -> QComplex {
    Complex::new(re, im)
}

/// Exact dyadic value of a float.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

pub fn qcomplex_from_c64(z: Complex64) -> Option<QComplex> {
    Some(Complex::new(rational_from_f64(z.re)?, rational_from_f64(z.im)?))
}

/// Exact square root of a nonnegative rational, when it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

pub fn is_real_nonnegative(z: &QComplex) -> bool {
    z.im.is_zero() && !z.re.is_negative()
}

pub fn qone() -> QComplex {
    QComplex::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-4, 1)), None);
        assert_eq!(rational_sqrt(&rat(0, 1)), Some(rat(0, 1)));
    }

    #[test]
    fn dyadic_conversion() {
        let z = qcomplex_from_c64(Complex64::new(0.5, -0.25)).unwrap();
        assert_eq!(z, qcomplex(rat(1, 2), rat(-1, 4)));
        assert_eq!(z.to_c64(), Complex64::new(0.5, -0.25));
    }
}
