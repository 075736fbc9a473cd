use std::collections::BTreeSet;
use std::fmt;

use super::point::Point;
use super::system::{word_to_string, ShiftSystem, Symbol, Word};
use crate::error::{Error, Result};

/// The clopen set `[w]` of points starting with a nonempty admissible word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cylinder {
    word: Word,
}

impl Cylinder {
    pub fn new(sys: &ShiftSystem, word: Word) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::input("cylinder word must be nonempty"));
        }
        if !sys.is_admissible(&word)? {
            return Err(Error::input(format!(
                "cylinder word \"{}\" is not admissible",
                word_to_string(&word)
            )));
        }
        Ok(Cylinder { word })
    }

    pub fn word(&self) -> &[Symbol] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.starts_with(&self.word)
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", word_to_string(&self.word))
    }
}

impl fmt::Debug for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cylinder{self}")
    }
}

impl ShiftSystem {
    pub fn shift(&self, x: &Point) -> Point {
        x.tail()
    }

    pub fn iterate(&self, x: &Point, k: usize) -> Point {
        x.shifted(k)
    }

    /// The fiber `T^{-1}(x)`, ordered by the prepended symbol.
    pub fn preimages(&self, x: &Point) -> Vec<Point> {
        self.predecessors(x.head()).map(|a| x.prepend(a)).collect()
    }

    /// `(T^k)^{-1}(x)`: all admissible `u·x` with `|u| = k`.
    pub fn preimages_depth(&self, x: &Point, k: usize) -> BTreeSet<Point> {
        self.preimage_words(x.head(), k)
            .into_iter()
            .map(|u| x.prepend_word(&u))
            .collect()
    }

    /// Words `u` of length `k` with `u·b` admissible.
    pub(crate) fn preimage_words(&self, b: Symbol, k: usize) -> Vec<Word> {
        let mut out: Vec<Word> = vec![Vec::new()];
        for _ in 0..k {
            out = out
                .iter()
                .flat_map(|u| {
                    let next = u.first().copied().unwrap_or(b);
                    self.predecessors(next).map(move |a| {
                        let mut v = Vec::with_capacity(u.len() + 1);
                        v.push(a);
                        v.extend_from_slice(u);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Least `(n + m, n)` with `T^n x = T^m y` and both at most `bound`.
    pub fn trajectory_equivalent(&self, x: &Point, y: &Point, bound: usize) -> Option<(usize, usize)> {
        let xs: Vec<Point> = (0..=bound).scan(x.clone(), step).collect();
        let ys: Vec<Point> = (0..=bound).scan(y.clone(), step).collect();
        (0..=2 * bound).find_map(|s| {
            let lo = s.saturating_sub(bound);
            (lo..=s.min(bound)).find_map(|n| (xs[n] == ys[s - n]).then_some((n, s - n)))
        })
    }

    /// The unique point of `[u]` when the cylinder is a singleton, i.e. when
    /// every vertex on the forward path from the last symbol has out-degree one.
    pub fn singleton_point(&self, u: &[Symbol]) -> Option<Point> {
        let last = *u.last()?;
        let mut seq = u.to_vec();
        let mut seen = vec![None; self.alphabet_size()];
        seen[last as usize] = Some(u.len() - 1);
        let mut cur = last;
        loop {
            let mut succ = self.successors(cur);
            let next = succ.next()?;
            if succ.next().is_some() {
                return None;
            }
            if let Some(p) = seen[next as usize] {
                let per = seq[p..].to_vec();
                seq.truncate(p);
                return Some(Point::new(seq, per).expect("period is nonempty"));
            }
            seen[next as usize] = Some(seq.len());
            seq.push(next);
            cur = next;
        }
    }

    /// Lexicographically least point of `[w]`: follow the least successor
    /// until a symbol repeats.
    pub fn least_point(&self, w: &[Symbol]) -> Result<Point> {
        if w.is_empty() || !self.is_admissible(w)? {
            return Err(Error::input("least_point needs a nonempty admissible word"));
        }
        let mut seq = w.to_vec();
        let mut seen = vec![None; self.alphabet_size()];
        let mut cur = *w.last().unwrap();
        seen[cur as usize] = Some(w.len() - 1);
        loop {
            let next = self.successors(cur).next().expect("rows are nonempty");
            if let Some(p) = seen[next as usize] {
                let per = seq[p..].to_vec();
                seq.truncate(p);
                return Point::new(seq, per);
            }
            seen[next as usize] = Some(seq.len());
            seq.push(next);
            cur = next;
        }
    }

    /// Lexicographically least point of the whole space.
    pub fn least_point_overall(&self) -> Point {
        self.least_point(&[0]).expect("symbol 0 is a valid word")
    }
}

fn step(p: &mut Point, _: usize) -> Option<Point> {
    let out = p.clone();
    *p = p.tail();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(pre: &[u8], per: &[u8]) -> Point {
        Point::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    #[test]
    fn preimage_examples() {
        let full = ShiftSystem::full_shift(2).unwrap();
        let trap = ShiftSystem::trap();
        assert_eq!(full.preimages(&pt(&[], &[0])), vec![pt(&[], &[0]), pt(&[1], &[0])]);
        assert_eq!(trap.preimages(&pt(&[], &[0])).len(), 2);
        assert_eq!(trap.preimages(&pt(&[], &[1])), vec![pt(&[], &[1])]);
    }

    #[test]
    fn preimage_depth_examples() {
        let full = ShiftSystem::full_shift(2).unwrap();
        let trap = ShiftSystem::trap();
        let zero = pt(&[], &[0]);
        assert_eq!(full.preimages_depth(&zero, 2).len(), 4);
        let one = pt(&[], &[1]);
        let tree = trap.preimages_depth(&one, 3);
        assert_eq!(tree.into_iter().collect::<Vec<_>>(), vec![one.clone()]);
        assert_eq!(full.iterate(&zero, 0), zero);
        assert_eq!(full.preimages_depth(&zero, 0).len(), 1);
    }

    #[test]
    fn preimages_shift_back() {
        for sys in [ShiftSystem::full_shift(3).unwrap(), ShiftSystem::trap()] {
            for x in [pt(&[1, 0], &[0]), pt(&[], &[1]), pt(&[0], &[0, 1])] {
                if !x.is_admissible_in(&sys) {
                    continue;
                }
                let pre = sys.preimages(&x);
                assert_eq!(pre.len(), sys.in_degree(x.head()));
                assert!(pre.iter().all(|y| sys.shift(y) == x));
                for k in 0..4 {
                    assert!(sys.preimages_depth(&x, k).iter().all(|y| sys.iterate(y, k) == x));
                }
            }
        }
        let full3 = ShiftSystem::full_shift(3).unwrap();
        assert_eq!(full3.preimages_depth(&pt(&[], &[2]), 4).len(), 81);
    }

    #[test]
    fn trajectory_examples() {
        let full = ShiftSystem::full_shift(2).unwrap();
        let zero = pt(&[], &[0]);
        assert_eq!(full.trajectory_equivalent(&zero, &pt(&[1], &[0]), 2), Some((0, 1)));
        assert_eq!(full.trajectory_equivalent(&zero, &pt(&[], &[1]), 10), None);
        assert_eq!(full.trajectory_equivalent(&zero, &zero, 0), Some((0, 0)));
        let x = pt(&[1, 1], &[0, 1]);
        let y = pt(&[0], &[1, 0]);
        assert_eq!(full.trajectory_equivalent(&x, &y, 4), Some((1, 1)));
    }

    #[test]
    fn singletons() {
        let trap = ShiftSystem::trap();
        assert_eq!(trap.singleton_point(&[0]), Some(pt(&[], &[0])));
        assert_eq!(trap.singleton_point(&[1]), None);
        assert_eq!(trap.singleton_point(&[1, 0]), Some(pt(&[1], &[0])));
        let swap = ShiftSystem::from_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(swap.singleton_point(&[1]), Some(pt(&[], &[1, 0])));
    }

    #[test]
    fn least_points() {
        let golden = ShiftSystem::from_rows(&[&[0, 1], &[1, 1]]).unwrap();
        assert_eq!(golden.least_point_overall(), pt(&[], &[0, 1]));
        assert_eq!(golden.least_point(&[1, 1]).unwrap(), pt(&[1], &[1, 0]));
        assert!(Cylinder::new(&ShiftSystem::trap(), vec![0, 1]).is_err());
    }
}
