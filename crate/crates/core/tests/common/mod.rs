//! Brute-force oracles shared by the integration tests. They work from the raw
//! adjacency matrix and plain enumeration, not from the library's own
//! word and fiber machinery.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use xprod::symbolic::{Point, ShiftSystem, Symbol, Word};

pub fn full(d: usize) -> Arc<ShiftSystem> {
    Arc::new(ShiftSystem::full_shift(d).unwrap())
}

pub fn trap() -> Arc<ShiftSystem> {
    Arc::new(ShiftSystem::trap())
}

/// The three standing test systems with their names.
pub fn standard_systems() -> Vec<(&'static str, Arc<ShiftSystem>)> {
    vec![("full2", full(2)), ("full3", full(3)), ("trap", trap())]
}

/// Every `d × d` 0/1 matrix, in row-major binary order.
pub fn all_matrices(d: usize) -> Vec<Vec<Vec<bool>>> {
    (0u32..1 << (d * d))
        .map(|bits| {
            (0..d)
                .map(|i| (0..d).map(|j| bits >> (i * d + j) & 1 == 1).collect())
                .collect()
        })
        .collect()
}

/// The matrices the library accepts as covering maps.
pub fn valid_systems(d: usize) -> Vec<Arc<ShiftSystem>> {
    all_matrices(d)
        .into_iter()
        .filter_map(|m| ShiftSystem::new(m).ok())
        .map(Arc::new)
        .collect()
}

/// All words of length `n` over `d` symbols, admissible or not.
pub fn raw_words(d: usize, n: usize) -> Vec<Word> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|w| {
                (0..d as Symbol).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect()
    })
}

pub fn admissible(sys: &ShiftSystem, w: &[Symbol]) -> bool {
    w.windows(2).all(|p| sys.adjacency()[p[0] as usize][p[1] as usize])
}

/// Admissible words of length `n`, by filtering the raw words.
pub fn admissible_words(sys: &ShiftSystem, n: usize) -> Vec<Word> {
    raw_words(sys.alphabet_size(), n)
        .into_iter()
        .filter(|w| admissible(sys, w))
        .collect()
}

/// Whether `pre · per^∞` is a point: `pre · per · per` admissible.
pub fn sequence_admissible(sys: &ShiftSystem, pre: &[Symbol], per: &[Symbol]) -> bool {
    let mut w = pre.to_vec();
    w.extend_from_slice(per);
    w.extend_from_slice(per);
    admissible(sys, &w)
}

/// Every point `u · v^∞` with `|u| ≤ max_pre` and `1 ≤ |v| ≤ max_per`.
pub fn eventually_periodic_points(sys: &ShiftSystem, max_pre: usize, max_per: usize) -> BTreeSet<Point> {
    let d = sys.alphabet_size();
    let mut out = BTreeSet::new();
    for pl in 0..=max_pre {
        for u in raw_words(d, pl) {
            for ql in 1..=max_per {
                for v in raw_words(d, ql) {
                    if sequence_admissible(sys, &u, &v) {
                        out.insert(Point::new(u.clone(), v).unwrap());
                    }
                }
            }
        }
    }
    out
}

/// `T^n x` computed symbol by symbol from the first `n + 2·period + pre` entries.
pub fn shift_by_symbols(x: &Point, n: usize) -> Point {
    let len = x.preperiod().len() + n;
    let pre: Word = (n..len).map(|i| x.symbol(i)).collect();
    let per: Word = (len..len + x.period().len()).map(|i| x.symbol(i)).collect();
    Point::new(pre, per).unwrap()
}

#[derive(Clone, Copy, Debug)]
pub struct OracleBounds {
    pub max_power: usize,
    pub max_word: usize,
    pub max_pre: usize,
    pub max_per: usize,
}

impl OracleBounds {
    pub const FULL: OracleBounds = OracleBounds {
        max_power: 4,
        max_word: 8,
        max_pre: 6,
        max_per: 4,
    };
}

/// Whether every sampled point of `[w]` lies in `{T^k x = T^l x}`.
pub fn oracle_cylinder_in_equalizer(
    sys: &ShiftSystem,
    k: usize,
    l: usize,
    w: &[Symbol],
    tails: &BTreeSet<Point>,
) -> bool {
    let mut any = false;
    for p in tails {
        let mut pre = w.to_vec();
        pre.extend_from_slice(p.preperiod());
        if !sequence_admissible(sys, &pre, p.period()) {
            continue;
        }
        any = true;
        let x = Point::new(pre, p.period().to_vec()).unwrap();
        if shift_by_symbols(&x, k) != shift_by_symbols(&x, l) {
            return false;
        }
    }
    any
}

/// The first `(k, l, w)` with `k > l` whose cylinder the oracle finds inside
/// the equalizer, or `None` if there is none within the bounds.
pub fn oracle_nonfree_witness(sys: &ShiftSystem, bounds: OracleBounds) -> Option<(usize, usize, Word)> {
    let tails = eventually_periodic_points(sys, bounds.max_pre, bounds.max_per);
    for n in 1..=bounds.max_word {
        for w in admissible_words(sys, n) {
            for k in 1..=bounds.max_power {
                for l in 0..k {
                    if oracle_cylinder_in_equalizer(sys, k, l, &w, &tails) {
                        return Some((k, l, w));
                    }
                }
            }
        }
    }
    None
}

/// `I_k(x) = Π_{j=1..k} in_degree(x_j)`, from the adjacency columns.
pub fn cocycle_oracle(sys: &ShiftSystem, x: &Point, k: usize) -> u64 {
    (1..=k)
        .map(|j| {
            let b = x.symbol(j) as usize;
            sys.adjacency().iter().filter(|row| row[b]).count() as u64
        })
        .product()
}

/// `(T^k)^{-1}(x)` by filtering all `u · x` with `|u| = k`.
pub fn preimages_oracle(sys: &ShiftSystem, x: &Point, k: usize) -> BTreeSet<Point> {
    raw_words(sys.alphabet_size(), k)
        .into_iter()
        .filter_map(|u| {
            let mut pre = u;
            pre.extend_from_slice(x.preperiod());
            sequence_admissible(sys, &pre, x.period()).then(|| Point::new(pre, x.period().to_vec()).unwrap())
        })
        .collect()
}
