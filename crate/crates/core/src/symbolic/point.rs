use std::cmp::Ordering;
use std::fmt;

use super::system::{word_to_string, ShiftSystem, Symbol, Word};
use crate::error::{Error, Result};

/// An eventually periodic sequence `pre · per^∞`, always held in canonical form:
/// the period is primitive and the preperiod is as short as possible. Two
/// points are equal exactly when their representations are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pre: Word,
    per: Word,
}

fn primitive_root(per: &[Symbol]) -> &[Symbol] {
    let n = per.len();
    for p in 1..n {
        if n.is_multiple_of(p) && (p..n).all(|i| per[i] == per[i - p]) {
            return &per[..p];
        }
    }
    per
}

impl Point {
    /// Builds and canonicalizes `pre · per^∞`. No system is consulted.
    pub fn new(pre: Word, per: Word) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::input("period must be nonempty"));
        }
        let mut per = primitive_root(&per).to_vec();
        let mut pre = pre;
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        Ok(Point { pre, per })
    }

    /// Builds a point and checks it is a point of `sys`.
    pub fn in_system(sys: &ShiftSystem, pre: Word, per: Word) -> Result<Self> {
        sys.check_symbols(&pre)?;
        sys.check_symbols(&per)?;
        let p = Self::new(pre, per)?;
        if !p.is_admissible_in(sys) {
            return Err(Error::input(format!("point {p} is not admissible")));
        }
        Ok(p)
    }

    pub fn periodic(per: Word) -> Result<Self> {
        Self::new(Vec::new(), per)
    }

    pub fn fixed(a: Symbol) -> Self {
        Point {
            pre: Vec::new(),
            per: vec![a],
        }
    }

    pub fn preperiod(&self) -> &[Symbol] {
        &self.pre
    }

    pub fn period(&self) -> &[Symbol] {
        &self.per
    }

    pub fn symbol(&self, i: usize) -> Symbol {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    pub fn head(&self) -> Symbol {
        self.symbol(0)
    }

    pub fn prefix(&self, n: usize) -> Word {
        (0..n).map(|i| self.symbol(i)).collect()
    }

    pub fn starts_with(&self, w: &[Symbol]) -> bool {
        w.iter().enumerate().all(|(i, &s)| self.symbol(i) == s)
    }

    /// The shifted sequence.
    pub fn tail(&self) -> Point {
        if self.pre.is_empty() {
            let mut per = self.per.clone();
            per.rotate_left(1);
            Point {
                pre: Vec::new(),
                per,
            }
        } else {
            // dropping the first symbol keeps the preperiod minimal
            Point {
                pre: self.pre[1..].to_vec(),
                per: self.per.clone(),
            }
        }
    }

    pub fn shifted(&self, k: usize) -> Point {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.tail();
        }
        p
    }

    /// `a · self`.
    pub fn prepend(&self, a: Symbol) -> Point {
        let mut pre = Vec::with_capacity(self.pre.len() + 1);
        pre.push(a);
        pre.extend_from_slice(&self.pre);
        Point::new(pre, self.per.clone()).expect("period is nonempty")
    }

    pub fn prepend_word(&self, w: &[Symbol]) -> Point {
        let mut pre = w.to_vec();
        pre.extend_from_slice(&self.pre);
        Point::new(pre, self.per.clone()).expect("period is nonempty")
    }

    pub fn is_admissible_in(&self, sys: &ShiftSystem) -> bool {
        if sys.check_symbols(&self.pre).is_err() || sys.check_symbols(&self.per).is_err() {
            return false;
        }
        let n = self.pre.len() + self.per.len() + 1;
        sys.admits(&self.prefix(n))
    }

    /// Lexicographic comparison of the infinite sequences.
    pub fn cmp_sequence(&self, other: &Point) -> Ordering {
        let horizon = self.pre.len().max(other.pre.len()) + self.per.len() * other.per.len();
        (0..horizon)
            .map(|i| self.symbol(i).cmp(&other.symbol(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// `"11(0)"` for `11·0^∞`.
    pub fn label(&self) -> String {
        format!("{}({})", word_to_string(&self.pre), word_to_string(&self.per))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point({})", self.label())
    }
}
