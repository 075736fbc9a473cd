//! Equalizer sets `{x : T^k x = T^l x}` and the topological-freeness decision.

use serde::Serialize;

use super::dynamics::Cylinder;
use super::system::{word_to_string, ShiftSystem, Symbol};
use crate::error::{Error, Result};

/// A cylinder contained in the equalizer of `T^k` and `T^l`, with `k > l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessCertificate {
    pub k: usize,
    pub l: usize,
    pub cylinder: Cylinder,
}

impl Serialize for FreenessCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FreenessCertificate", 3)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("w", &word_to_string(self.cylinder.word()))?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessVerdict {
    pub free: bool,
    pub certificate: Option<FreenessCertificate>,
}

impl ShiftSystem {
    /// Whether every point of `[w]` satisfies `T^k x = T^l x`.
    ///
    /// With `p = |k - l|`, the equation says the sequence is `p`-periodic from
    /// position `min(k, l)` on, so it is fixed by its first `max(k, l)` symbols.
    /// Extending `w` to length `max(k, l) + p`: if some extension leaves a
    /// branching choice, two points of `[w]` differ beyond that length and at
    /// most one of them can be periodic there. Otherwise every extension is a
    /// singleton and the finitely many points are checked directly.
    pub fn equalizer_cylinder_test(&self, k: usize, l: usize, w: &Cylinder) -> Result<bool> {
        if k == l {
            return Err(Error::input("equalizer test needs k != l"));
        }
        let len = w.len().max(k.max(l) + k.abs_diff(l));
        for u in self.extensions(w.word(), len) {
            match self.singleton_point(&u) {
                Some(x) if x.shifted(k) == x.shifted(l) => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Symbols lying on a cycle all of whose vertices have out-degree one.
    pub fn deterministic_cycle_symbols(&self) -> Vec<Symbol> {
        let unique_succ = |a: Symbol| {
            let mut it = self.successors(a);
            match (it.next(), it.next()) {
                (Some(b), None) => Some(b),
                _ => None,
            }
        };
        let mut on_cycle = vec![false; self.alphabet_size()];
        for start in self.symbols() {
            let mut cur = start;
            let mut steps = 0;
            while let Some(next) = unique_succ(cur) {
                cur = next;
                steps += 1;
                if cur == start {
                    on_cycle[start as usize] = true;
                    break;
                }
                if steps > self.alphabet_size() {
                    break;
                }
            }
        }
        self.symbols().filter(|&a| on_cycle[a as usize]).collect()
    }

    /// The system fails to be topologically free exactly when some cylinder is
    /// a singleton sitting on a deterministic cycle, which happens iff the
    /// out-degree-one vertices contain a cycle. When that happens a certificate
    /// is searched by increasing `k + l`, then `k` (with `k > l`), then word
    /// length (at least `max(k, 1)`), then lexicographic order.
    pub fn is_topologically_free(&self) -> FreenessVerdict {
        let cycle = self.deterministic_cycle_symbols();
        if cycle.is_empty() {
            return FreenessVerdict {
                free: true,
                certificate: None,
            };
        }
        let d = self.alphabet_size();
        // a cycle of length c gives the certificate (c, 0, cycle word), c <= d
        for s in 1..=2 * d + 1 {
            for k in (s + 1).div_ceil(2)..=s {
                let l = s - k;
                if k == l {
                    continue;
                }
                let min_len = k.max(1);
                for len in min_len..=min_len + d {
                    for word in self.words(len) {
                        let cyl = Cylinder::new(self, word).expect("listed words are admissible");
                        if self.equalizer_cylinder_test(k, l, &cyl).expect("k != l") {
                            return FreenessVerdict {
                                free: false,
                                certificate: Some(FreenessCertificate { k, l, cylinder: cyl }),
                            };
                        }
                    }
                }
            }
        }
        unreachable!("deterministic cycle {cycle:?} without an equalizer certificate")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyl(sys: &ShiftSystem, w: &[u8]) -> Cylinder {
        Cylinder::new(sys, w.to_vec()).unwrap()
    }

    #[test]
    fn equalizer_examples() {
        let trap = ShiftSystem::trap();
        let full = ShiftSystem::full_shift(2).unwrap();
        assert!(trap.equalizer_cylinder_test(1, 0, &cyl(&trap, &[0])).unwrap());
        assert!(!full.equalizer_cylinder_test(1, 0, &cyl(&full, &[0])).unwrap());
        for len in 1..=4 {
            for w in full.words(len) {
                assert!(!full.equalizer_cylinder_test(2, 1, &cyl(&full, &w)).unwrap());
            }
        }
        assert!(trap.equalizer_cylinder_test(0, 0, &cyl(&trap, &[0])).is_err());
        // [10] = {1·0^∞}: T^2 = T on it, but T ≠ id
        assert!(trap.equalizer_cylinder_test(2, 1, &cyl(&trap, &[1, 0])).unwrap());
        assert!(!trap.equalizer_cylinder_test(1, 0, &cyl(&trap, &[1, 0])).unwrap());
    }

    #[test]
    fn freeness_examples() {
        let full = ShiftSystem::full_shift(2).unwrap().is_topologically_free();
        assert!(full.free && full.certificate.is_none());

        let trap = ShiftSystem::trap().is_topologically_free();
        assert!(!trap.free);
        let c = trap.certificate.unwrap();
        assert_eq!((c.k, c.l, c.cylinder.word()), (1, 0, &[0u8][..]));

        let one = ShiftSystem::full_shift(1).unwrap().is_topologically_free();
        let c = one.certificate.unwrap();
        assert_eq!((c.k, c.l, c.cylinder.word()), (1, 0, &[0u8][..]));

        let swap = ShiftSystem::from_rows(&[&[0, 1], &[1, 0]]).unwrap();
        let c = swap.is_topologically_free().certificate.unwrap();
        assert_eq!((c.k, c.l, c.cylinder.word()), (2, 0, &[0u8, 1][..]));

        let golden = ShiftSystem::from_rows(&[&[1, 1], &[1, 0]]).unwrap();
        assert!(golden.is_topologically_free().free);
    }

    #[test]
    fn cycle_symbols() {
        let sys = ShiftSystem::from_rows(&[&[0, 1, 0], &[1, 0, 0], &[1, 1, 1]]).unwrap();
        assert_eq!(sys.deterministic_cycle_symbols(), vec![0, 1]);
        assert!(ShiftSystem::full_shift(3).unwrap().deterministic_cycle_symbols().is_empty());
    }
}
