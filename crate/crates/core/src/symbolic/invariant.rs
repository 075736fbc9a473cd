use std::collections::BTreeMap;

use super::dynamics::Cylinder;
use super::system::{ShiftSystem, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSearch {
    pub depth: usize,
    /// A proper nonempty union of depth-`depth` cylinders with `T^{-1}(Y) = Y`.
    pub union: Option<Vec<Cylinder>>,
    /// Always false: the search is exact at every depth.
    pub truncated: bool,
}

struct DisjointSets(Vec<usize>);

impl DisjointSets {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl ShiftSystem {
    /// Comparing both sides at depth `m + 1`, a union `Y` of depth-`m`
    /// cylinders satisfies `T^{-1}(Y) = Y` iff for every admissible `v` of
    /// length `m + 1`, `v[..m] ∈ Y ⟺ v[1..] ∈ Y`. So the invariant unions are
    /// exactly the unions of classes of the relation `v[..m] ~ v[1..]`; a
    /// proper one exists iff there are at least two classes. The class of the
    /// lexicographically least word is returned.
    pub fn find_invariant_cylinder_union(&self, depth: usize) -> Result<InvariantSearch> {
        if depth == 0 {
            return Err(Error::input("invariant search depth must be at least 1"));
        }
        let words = self.words(depth);
        let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut sets = DisjointSets((0..words.len()).collect());
        for v in self.words(depth + 1) {
            let head = index[&v[..depth].to_vec()];
            let tail = index[&v[1..].to_vec()];
            sets.union(head, tail);
        }
        let root = sets.find(0);
        let class: Vec<usize> = (0..words.len()).filter(|&i| sets.find(i) == root).collect();
        let union = (class.len() < words.len()).then(|| {
            class
                .into_iter()
                .map(|i| Cylinder::new(self, words[i].clone()).expect("admissible"))
                .collect()
        });
        Ok(InvariantSearch {
            depth,
            union,
            truncated: false,
        })
    }

    /// Whether the union of the given depth-`m` cylinders is fixed by `T^{-1}`,
    /// compared on depth-`m + 1` cylinders.
    pub fn is_invariant_union(&self, cylinders: &[Cylinder]) -> bool {
        let Some(m) = cylinders.first().map(Cylinder::len) else {
            return true;
        };
        if cylinders.iter().any(|c| c.len() != m) {
            return false;
        }
        let member = |w: &[u8]| cylinders.iter().any(|c| c.word() == w);
        self.words(m + 1)
            .iter()
            .all(|v| member(&v[..m]) == member(&v[1..]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let trap = ShiftSystem::trap();
        assert_eq!(trap.find_invariant_cylinder_union(1).unwrap().union, None);
        let full = ShiftSystem::full_shift(2).unwrap();
        assert_eq!(full.find_invariant_cylinder_union(1).unwrap().union, None);
        assert_eq!(full.find_invariant_cylinder_union(2).unwrap().union, None);

        let split = ShiftSystem::from_rows(&[&[1, 0], &[0, 1]]).unwrap();
        let found = split.find_invariant_cylinder_union(1).unwrap().union.unwrap();
        assert_eq!(found, vec![Cylinder::new(&split, vec![0]).unwrap()]);
        assert!(split.is_invariant_union(&found));
        assert!(split.find_invariant_cylinder_union(0).is_err());
    }
}
