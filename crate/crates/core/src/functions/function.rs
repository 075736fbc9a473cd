use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use super::scalar::{QComplex, Scalar};
use crate::error::{Error, Result};
use crate::symbolic::{word_to_string, Point, ShiftSystem, Symbol, Word};

/// A function on `X` that is constant on every cylinder of length `depth`,
/// stored as one value per admissible word of that length.
#[derive(Clone)]
pub struct Function<T> {
    sys: Arc<ShiftSystem>,
    depth: usize,
    table: BTreeMap<Word, T>,
}

/// Locally constant functions with exact rational complex values.
pub type LocallyConstantFunction = Function<QComplex>;
pub type FloatFunction = Function<Complex64>;

impl<T: Scalar> Function<T> {
    pub fn from_table(sys: Arc<ShiftSystem>, depth: usize, table: BTreeMap<Word, T>) -> Result<Self> {
        if depth == 0 {
            return Err(Error::input("function depth must be at least 1"));
        }
        let words = sys.words(depth);
        if table.len() != words.len() || words.iter().any(|w| !table.contains_key(w)) {
            return Err(Error::input(format!(
                "function table must have exactly one entry per admissible word of length {depth}"
            )));
        }
        Ok(Function { sys, depth, table })
    }

    pub fn from_fn(sys: Arc<ShiftSystem>, depth: usize, mut value: impl FnMut(&[Symbol]) -> T) -> Self {
        let depth = depth.max(1);
        let table = sys.words(depth).into_iter().map(|w| {
            let v = value(&w);
            (w, v)
        });
        let table = table.collect();
        Function { sys, depth, table }
    }

    pub fn constant(sys: Arc<ShiftSystem>, c: T) -> Self {
        Self::from_fn(sys, 1, |_| c.clone())
    }

    pub fn one(sys: Arc<ShiftSystem>) -> Self {
        Self::constant(sys, T::one())
    }

    pub fn zero(sys: Arc<ShiftSystem>) -> Self {
        Self::constant(sys, T::zero())
    }

    /// `1_{[w]}` at depth `|w|`.
    pub fn indicator(sys: Arc<ShiftSystem>, w: &[Symbol]) -> Result<Self> {
        if w.is_empty() || !sys.is_admissible(w)? {
            return Err(Error::input(format!(
                "indicator needs a nonempty admissible word, got \"{}\"",
                word_to_string(w)
            )));
        }
        Ok(Self::from_fn(sys, w.len(), |u| if u == w { T::one() } else { T::zero() }))
    }

    pub fn system(&self) -> &Arc<ShiftSystem> {
        &self.sys
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn table(&self) -> &BTreeMap<Word, T> {
        &self.table
    }

    /// Value on `[w]` for any admissible `w` at least `depth` long.
    pub fn value(&self, w: &[Symbol]) -> &T {
        &self.table[&w[..self.depth]]
    }

    pub fn at(&self, x: &Point) -> &T {
        &self.table[&x.prefix(self.depth)]
    }

    pub fn refine(&self, depth: usize) -> Self {
        if depth <= self.depth {
            return self.clone();
        }
        Self::from_fn(self.sys.clone(), depth, |w| self.value(w).clone())
    }

    /// Coarser representation when the table is constant on refinement classes.
    pub fn coarsen(&self, depth: usize) -> Option<Self> {
        let depth = depth.max(1);
        if depth >= self.depth {
            return Some(self.refine(depth));
        }
        let mut table: BTreeMap<Word, T> = BTreeMap::new();
        for (w, v) in &self.table {
            match table.get(&w[..depth]) {
                Some(prev) if prev != v => return None,
                Some(_) => {}
                None => {
                    table.insert(w[..depth].to_vec(), v.clone());
                }
            }
        }
        Some(Function {
            sys: self.sys.clone(),
            depth,
            table,
        })
    }

    /// The smallest depth representing the same function.
    pub fn coarsest(&self) -> Self {
        (1..self.depth)
            .find_map(|m| self.coarsen(m))
            .unwrap_or_else(|| self.clone())
    }

    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> Function<U> {
        Function {
            sys: self.sys.clone(),
            depth: self.depth,
            table: self.table.iter().map(|(w, v)| (w.clone(), f(v))).collect(),
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert!(
            Arc::ptr_eq(&self.sys, &other.sys) || self.sys == other.sys,
            "functions over different systems"
        );
        let depth = self.depth.max(other.depth);
        Self::from_fn(self.sys.clone(), depth, |w| f(self.value(w), other.value(w)))
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| c.clone() * v.clone())
    }

    pub fn conj(&self) -> Self {
        self.map(T::conj)
    }

    pub fn is_zero(&self) -> bool {
        self.table.values().all(T::is_zero)
    }

    /// `f ∘ T`, one level deeper.
    pub fn alpha(&self) -> Self {
        Self::from_fn(self.sys.clone(), self.depth + 1, |w| self.value(&w[1..]).clone())
    }

    pub fn alpha_power(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |f, _| f.alpha())
    }

    /// Un-normalized transfer sum: `x ↦ Σ_{Ty = x} f(y)`.
    pub fn fiber_sum(&self) -> Self {
        let depth = self.depth.saturating_sub(1).max(1);
        Self::from_fn(self.sys.clone(), depth, |w| {
            let mut aw = Vec::with_capacity(w.len() + 1);
            aw.push(0);
            aw.extend_from_slice(w);
            self.sys.predecessors(w[0]).fold(T::zero(), |acc, a| {
                aw[0] = a;
                acc + self.value(&aw).clone()
            })
        })
    }

    /// Normalized transfer operator: the fiber average `𝒮(f) / 𝒮(1)`.
    pub fn transfer(&self) -> Self {
        let sum = self.fiber_sum();
        let sys = self.sys.clone();
        Self::from_fn(self.sys.clone(), sum.depth, |w| {
            sum.value(w).clone() / T::from_count(sys.in_degree(w[0]))
        })
    }

    pub fn transfer_power(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |f, _| f.transfer())
    }

    pub fn to_float(&self) -> FloatFunction {
        self.map(T::to_c64)
    }
}

impl<T: Scalar> PartialEq for Function<T> {
    /// Equality as functions on `X`, comparing at the common depth.
    fn eq(&self, other: &Self) -> bool {
        if self.sys != other.sys {
            return false;
        }
        let depth = self.depth.max(other.depth);
        self.sys
            .words(depth)
            .iter()
            .all(|w| self.value(w) == other.value(w))
    }
}

impl<T: Scalar> fmt::Debug for Function<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (w, v) in &self.table {
            m.entry(&word_to_string(w), v);
        }
        m.finish()
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl<T: Scalar> $tr<&Function<T>> for &Function<T> {
            type Output = Function<T>;
            fn $method(self, rhs: &Function<T>) -> Function<T> {
                self.zip_with(rhs, |a, b| a.clone() $op b.clone())
            }
        }

        impl<T: Scalar> $tr for Function<T> {
            type Output = Function<T>;
            fn $method(self, rhs: Function<T>) -> Function<T> {
                &self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl<T: Scalar> Neg for &Function<T> {
    type Output = Function<T>;
    fn neg(self) -> Function<T> {
        self.map(|v| -v.clone())
    }
}

impl FloatFunction {
    pub fn max_abs_diff(&self, other: &FloatFunction) -> f64 {
        let depth = self.depth.max(other.depth);
        self.sys
            .words(depth)
            .iter()
            .map(|w| (self.value(w) - other.value(w)).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::super::scalar::{qint, rat, qreal};
    use super::*;

    type Lcf = LocallyConstantFunction;

    fn full2() -> Arc<ShiftSystem> {
        Arc::new(ShiftSystem::full_shift(2).unwrap())
    }

    fn trap() -> Arc<ShiftSystem> {
        Arc::new(ShiftSystem::trap())
    }

    #[test]
    fn alpha_examples() {
        let sys = full2();
        let f = Lcf::indicator(sys.clone(), &[0]).unwrap().alpha();
        assert_eq!(f.depth(), 2);
        assert_eq!(f.value(&[0, 0]), &qint(1));
        assert_eq!(f.value(&[1, 0]), &qint(1));
        assert_eq!(f.value(&[0, 1]), &qint(0));
        assert_eq!(f.value(&[1, 1]), &qint(0));
        let c = Lcf::constant(sys.clone(), qint(5));
        assert_eq!(c.alpha(), c);

        let t = Lcf::indicator(trap(), &[1]).unwrap().alpha();
        let ones: Vec<_> = t.table().iter().filter(|(_, v)| **v == qint(1)).map(|(w, _)| w.clone()).collect();
        assert_eq!(ones, vec![vec![1, 1]]);
        assert_eq!(t.table().len(), 3);
    }

    #[test]
    fn fiber_sum_examples() {
        let sys = full2();
        assert_eq!(Lcf::indicator(sys.clone(), &[0]).unwrap().fiber_sum(), Lcf::one(sys.clone()));
        assert_eq!(Lcf::one(sys.clone()).fiber_sum(), Lcf::constant(sys.clone(), qint(2)));
        let t = Lcf::one(trap()).fiber_sum();
        assert_eq!(t.depth(), 1);
        assert_eq!(t.value(&[0]), &qint(2));
        assert_eq!(t.value(&[1]), &qint(1));
    }

    #[test]
    fn transfer_examples() {
        let sys = full2();
        assert_eq!(
            Lcf::indicator(sys.clone(), &[0]).unwrap().transfer(),
            Lcf::constant(sys.clone(), qreal(rat(1, 2)))
        );
        for s in [full2(), trap()] {
            assert_eq!(Lcf::one(s.clone()).transfer(), Lcf::one(s));
        }
        let t = Lcf::indicator(trap(), &[1]).unwrap().transfer();
        assert_eq!(t.value(&[0]), &qreal(rat(1, 2)));
        assert_eq!(t.value(&[1]), &qint(1));
    }

    #[test]
    fn refine_and_coarsen() {
        let f = Lcf::indicator(trap(), &[1, 0]).unwrap();
        let g = f.refine(4);
        assert_eq!(g.depth(), 4);
        assert_eq!(g.coarsen(2).unwrap().table(), f.table());
        assert!(g.coarsen(1).is_none());
        assert_eq!(Lcf::one(trap()).refine(3).coarsest().depth(), 1);
        assert!(Lcf::from_table(trap(), 1, BTreeMap::new()).is_err());
    }
}
