use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::cyclotomic::root_of_unity_average;
use crate::error::{Error, Result};
use crate::functions::{
    cocycle, qcomplex_from_c64, qreal, Coefficient, LocallyConstantFunction as Lcf, QComplex,
};
use crate::symbolic::ShiftSystem;

/// `f · s^k · (s*)^l · g`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub f: Coefficient,
    pub k: usize,
    pub l: usize,
    pub g: Coefficient,
}

impl Monomial {
    pub fn new(f: impl Into<Coefficient>, k: usize, l: usize, g: impl Into<Coefficient>) -> Self {
        Monomial {
            f: f.into(),
            k,
            l,
            g: g.into(),
        }
    }

    pub fn degree(&self) -> i64 {
        self.k as i64 - self.l as i64
    }

    pub fn adjoint(&self) -> Monomial {
        Monomial {
            f: self.g.conj(),
            k: self.l,
            l: self.k,
            g: self.f.conj(),
        }
    }

    /// Whether the monomial is the zero element: no `x, y` with
    /// `T^k y = T^l x`, `f(y) ≠ 0` and `g(x) ≠ 0`. Every admissible word
    /// extends to a point, so it suffices to enumerate the common tail
    /// `T^l x` to the coefficient depth together with its preimage words.
    pub fn vanishes(&self) -> bool {
        let sys = self.f.system();
        let depth = self.f.depth().max(self.g.depth());
        let zero = Complex64::new(0.0, 0.0);
        !sys.words(depth).iter().any(|z| {
            let ys = sys.preimage_words(z[0], self.k);
            let xs = sys.preimage_words(z[0], self.l);
            let nonzero = |c: &Coefficient, head: &[u8]| {
                let mut w = head.to_vec();
                w.extend_from_slice(z);
                c.value(&w) != zero
            };
            xs.iter().any(|a| nonzero(&self.g, a)) && ys.iter().any(|b| nonzero(&self.f, b))
        })
    }

    /// Reduces `(f₁ s^{k₁} (s*)^{l₁} g₁)(f₂ s^{k₂} (s*)^{l₂} g₂)` to standard
    /// form using `s f = α(f) s`, `s* f s = ℒ(f)` and `f s* = s* α(f)`.
    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let h = self.g.mul(&rhs.f);
        if self.l <= rhs.k {
            let middle = h.transfer_power(self.l).alpha_power(self.k);
            Monomial {
                f: self.f.mul(&middle),
                k: self.k + rhs.k - self.l,
                l: rhs.l,
                g: rhs.g.clone(),
            }
        } else {
            let middle = h.transfer_power(rhs.k).alpha_power(rhs.l);
            Monomial {
                f: self.f.clone(),
                k: self.k,
                l: self.l - rhs.k + rhs.l,
                g: middle.mul(&rhs.g),
            }
        }
    }
}

/// A formal finite sum of standard-form monomials. The standard form is not
/// unique, so there is no syntactic equality; compare elements through a
/// faithful representation instead.
#[derive(Clone, Debug)]
pub struct Element {
    sys: Arc<ShiftSystem>,
    terms: Vec<Monomial>,
}

impl Element {
    pub fn new(sys: Arc<ShiftSystem>, terms: Vec<Monomial>) -> Self {
        Element { sys, terms }
    }

    pub fn zero(sys: Arc<ShiftSystem>) -> Self {
        Element { sys, terms: Vec::new() }
    }

    pub fn one(sys: Arc<ShiftSystem>) -> Self {
        Self::monomial(sys.clone(), Monomial::new(Coefficient::one(sys.clone()), 0, 0, Coefficient::one(sys)))
    }

    pub fn monomial(sys: Arc<ShiftSystem>, m: Monomial) -> Self {
        Element { sys, terms: vec![m] }
    }

    /// The isometry `s`.
    pub fn s(sys: Arc<ShiftSystem>) -> Self {
        Self::monomial(sys.clone(), Monomial::new(Coefficient::one(sys.clone()), 1, 0, Coefficient::one(sys)))
    }

    pub fn s_star(sys: Arc<ShiftSystem>) -> Self {
        Self::monomial(sys.clone(), Monomial::new(Coefficient::one(sys.clone()), 0, 1, Coefficient::one(sys)))
    }

    pub fn function(f: impl Into<Coefficient>) -> Self {
        let f = f.into();
        let sys = f.system().clone();
        Self::monomial(sys.clone(), Monomial::new(f, 0, 0, Coefficient::one(sys)))
    }

    pub fn system(&self) -> &Arc<ShiftSystem> {
        &self.sys
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Monomial> {
        self.terms
    }

    pub fn is_exact(&self) -> bool {
        self.terms.iter().all(|t| t.f.is_exact() && t.g.is_exact())
    }

    pub fn max_degree_gap(&self) -> usize {
        self.terms.iter().map(|t| t.k.abs_diff(t.l)).max().unwrap_or(0)
    }

    pub fn max_power(&self) -> usize {
        self.terms.iter().map(|t| t.k.max(t.l)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Element { sys: self.sys.clone(), terms }
    }

    pub fn neg(&self) -> Element {
        self.scale(&-QComplex::one())
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    /// Scalars are absorbed into the left coefficient.
    pub fn scale(&self, c: &QComplex) -> Element {
        self.map_terms(|t| Monomial {
            f: t.f.scale(c),
            ..t.clone()
        })
    }

    pub fn adjoint(&self) -> Element {
        self.map_terms(Monomial::adjoint)
    }

    pub fn mul(&self, rhs: &Element) -> Element {
        let terms = self
            .terms
            .iter()
            .flat_map(|a| rhs.terms.iter().map(move |b| a.mul(b)))
            .collect();
        Element { sys: self.sys.clone(), terms }
    }

    /// `G`: keeps the terms with `k = l`, each contributing `f · I_k^{-1} · g`.
    /// The result is exact unless some coefficient already was floating or an
    /// unpaired square root survives.
    pub fn conditional_expectation(&self) -> Coefficient {
        self.terms
            .iter()
            .filter(|t| t.k == t.l)
            .fold(Coefficient::zero(self.sys.clone()), |acc, t| {
                let inv = cocycle(&self.sys, t.k).map(|v| QComplex::one() / v.clone());
                acc.add(&t.f.mul(&Coefficient::Exact(inv)).mul(&t.g))
            })
    }

    /// The gauge action `s ↦ z s`: each term picks up `z^{k - l}`, with
    /// `z^{-1} = z̄`. The float `z` is used through its exact dyadic value, so
    /// rational coefficients stay exact.
    pub fn gauge_rotate(&self, z: Complex64) -> Result<Element> {
        if (z.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::input(format!("gauge parameter {z} is not of unit modulus")));
        }
        let zq = qcomplex_from_c64(z).ok_or_else(|| Error::input("gauge parameter is not finite"))?;
        Ok(self.map_terms(|t| {
            let n = t.degree();
            let base = if n >= 0 { zq.clone() } else { zq.conj() };
            let factor = (0..n.unsigned_abs()).fold(QComplex::one(), |acc, _| acc * base.clone());
            Monomial {
                f: t.f.scale(&factor),
                ..t.clone()
            }
        }))
    }

    pub fn fourier_component(&self, n: i64) -> Element {
        Element {
            sys: self.sys.clone(),
            terms: self.terms.iter().filter(|t| t.degree() == n).cloned().collect(),
        }
    }

    /// `(1/N) Σ_{ω^N = 1} gauge_rotate(e, ω)`, with the root-of-unity sums
    /// evaluated exactly. Equals the degree-zero component when `N` exceeds
    /// every `|k - l|`.
    pub fn gauge_average(&self, big_n: usize) -> Result<Element> {
        let gap = self.max_degree_gap();
        if big_n <= gap {
            return Err(Error::input(format!(
                "gauge average over {big_n} roots of unity cannot separate degree {gap}"
            )));
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let c = root_of_unity_average(big_n, t.degree());
                (!c.is_zero()).then(|| Monomial {
                    f: t.f.scale(&qreal(c)),
                    ..t.clone()
                })
            })
            .collect();
        Ok(Element { sys: self.sys.clone(), terms })
    }

    fn map_terms(&self, f: impl Fn(&Monomial) -> Monomial) -> Element {
        Element {
            sys: self.sys.clone(),
            terms: self.terms.iter().map(f).collect(),
        }
    }
}

impl From<Lcf> for Element {
    fn from(f: Lcf) -> Self {
        Element::function(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{qint, rat};

    fn full2() -> Arc<ShiftSystem> {
        Arc::new(ShiftSystem::full_shift(2).unwrap())
    }

    fn exact(c: &Coefficient) -> &Lcf {
        c.as_exact().expect("exact coefficient")
    }

    #[test]
    fn adjoint_examples() {
        let sys = full2();
        let s_adj = Element::s(sys.clone()).adjoint();
        let t = &s_adj.terms()[0];
        assert_eq!((t.k, t.l), (0, 1));
        let f = Lcf::indicator(sys.clone(), &[0]).unwrap().scale(&qint(3));
        let w = Element::monomial(sys.clone(), Monomial::new(f.clone(), 1, 1, f.clone()));
        assert_eq!(w.adjoint().terms(), w.terms());
        let z = Element::monomial(
            sys.clone(),
            Monomial::new(f.scale(&crate::functions::qcomplex(rat(0, 1), rat(1, 1))), 2, 1, f),
        );
        assert_eq!(z.adjoint().adjoint().terms(), z.terms());
    }

    #[test]
    fn multiply_examples() {
        let sys = full2();
        let f = Lcf::indicator(sys.clone(), &[0]).unwrap();
        let sf = Element::s(sys.clone()).mul(&Element::function(f.clone()));
        let t = &sf.terms()[0];
        assert_eq!((t.k, t.l), (1, 0));
        assert_eq!(exact(&t.f), &f.alpha());
        assert_eq!(exact(&t.g), &Lcf::one(sys.clone()));

        let iso = Element::s_star(sys.clone()).mul(&Element::s(sys.clone()));
        let t = &iso.terms()[0];
        assert_eq!((t.k, t.l), (0, 0));
        assert_eq!(exact(&t.f), &Lcf::one(sys.clone()));
        assert_eq!(exact(&t.g), &Lcf::one(sys.clone()));

        let a = Element::monomial(sys.clone(), Monomial::new(Lcf::one(sys.clone()), 1, 0, f.clone()));
        let b = Element::monomial(sys.clone(), Monomial::new(f.clone(), 0, 1, Lcf::one(sys.clone())));
        let ab = a.mul(&b);
        let t = &ab.terms()[0];
        assert_eq!((t.k, t.l), (1, 1));
        assert_eq!(exact(&t.f), &f.alpha());
    }

    #[test]
    fn expectation_examples() {
        let sys = full2();
        let ss = Element::s(sys.clone()).mul(&Element::s_star(sys.clone()));
        assert_eq!(
            exact(&ss.conditional_expectation()),
            &Lcf::constant(sys.clone(), qreal(rat(1, 2)))
        );
        let f = Lcf::indicator(sys.clone(), &[1]).unwrap();
        let off = Element::monomial(sys.clone(), Monomial::new(f.clone(), 2, 1, f.clone()));
        assert!(off.conditional_expectation().is_zero());
        assert_eq!(exact(&Element::function(f.clone()).conditional_expectation()), &f);
    }

    #[test]
    fn gauge_examples() {
        let sys = full2();
        let s = Element::s(sys.clone());
        let ss = s.mul(&Element::s_star(sys.clone()));
        let e = s.add(&ss);
        let same = e.gauge_rotate(Complex64::new(1.0, 0.0)).unwrap();
        assert_eq!(same.terms(), e.terms());
        let rotated = s.gauge_rotate(Complex64::new(0.0, 1.0)).unwrap();
        assert_eq!(
            exact(&rotated.terms()[0].f),
            &Lcf::constant(sys.clone(), crate::functions::qcomplex(rat(0, 1), rat(1, 1)))
        );
        let r = Complex64::from_polar(1.0, 0.7);
        assert_eq!(ss.gauge_rotate(r).unwrap().terms(), ss.terms());
        assert!(s.gauge_rotate(Complex64::new(2.0, 0.0)).is_err());

        assert_eq!(e.fourier_component(0).terms(), ss.terms());
        assert_eq!(e.gauge_average(3).unwrap().terms(), ss.terms());
        assert!(e.gauge_average(1).is_err());
        let f = Element::function(Lcf::one(sys));
        assert!(f.fourier_component(1).terms().is_empty());
    }

    #[test]
    fn vanishing_monomials() {
        let sys = full2();
        let f = Lcf::indicator(sys.clone(), &[0, 1]).unwrap();
        // x ∈ [01] forces T x ∈ [1], which misses [01]
        assert!(Monomial::new(f.clone(), 0, 1, f.clone()).vanishes());
        assert!(Monomial::new(f.clone(), 1, 0, f.clone()).vanishes());
        let zz = Lcf::indicator(sys.clone(), &[0, 0]).unwrap();
        assert!(!Monomial::new(zz.clone(), 1, 0, zz.clone()).vanishes());
        let g = Lcf::indicator(sys.clone(), &[1]).unwrap();
        let h = Lcf::indicator(sys.clone(), &[0]).unwrap();
        assert!(!Monomial::new(h.clone(), 1, 0, g.clone()).vanishes());
        assert!(Monomial::new(h, 0, 0, g).vanishes());
    }
}
