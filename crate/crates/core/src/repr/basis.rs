use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbolic::{Point, ShiftSystem};

/// Which Hilbert space the truncation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    /// `ℓ²(X)` with basis `e_x`.
    Psi,
    /// `ℓ²(X × ℤ)` with basis `e_(x,n)`, `|n| ≤ window`.
    PsiTilde { window: usize },
}

pub const DEFAULT_BASIS_CAP: usize = 200_000;

/// Marks a point whose whole preimage tree lies in the basis.
pub const UNBOUNDED: usize = usize::MAX;

/// A finite, forward-closed set of points, crossed with a window of levels
/// in the `ψ̃` mode. Basis vectors are ordered point-major, level-minor.
#[derive(Clone, Debug)]
pub struct BasisSpec {
    sys: Arc<ShiftSystem>,
    mode: Mode,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    image: Vec<usize>,
    fibers: Vec<Vec<usize>>,
    complete: Vec<bool>,
    validity: Vec<usize>,
}

impl BasisSpec {
    /// Closes `points` under the shift and computes, for each point, how many
    /// preimage levels are present.
    pub fn from_points(
        sys: Arc<ShiftSystem>,
        points: impl IntoIterator<Item = Point>,
        mode: Mode,
        cap: usize,
    ) -> Result<Self> {
        let levels = match mode {
            Mode::Psi => 1,
            Mode::PsiTilde { window } => 2 * window + 1,
        };
        let mut set = BTreeSet::new();
        for p in points {
            if !p.is_admissible_in(&sys) {
                return Err(Error::input(format!("basis point {p} is not admissible")));
            }
            let mut q = p;
            while set.insert(q.clone()) {
                if set.len() * levels > cap {
                    return Err(Error::Resource {
                        what: "basis vectors",
                        requested: set.len() * levels,
                        cap,
                    });
                }
                q = q.tail();
            }
        }
        let points: Vec<Point> = set.into_iter().collect();
        let index: HashMap<Point, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let image = points.iter().map(|p| index[&p.tail()]).collect();
        let mut fibers = Vec::with_capacity(points.len());
        let mut complete = Vec::with_capacity(points.len());
        for p in &points {
            let pre = sys.preimages(p);
            let found: Vec<usize> = pre.iter().filter_map(|y| index.get(y).copied()).collect();
            complete.push(found.len() == pre.len());
            fibers.push(found);
        }
        let validity = greatest_validity(&fibers, &complete);
        Ok(BasisSpec {
            sys,
            mode,
            points,
            index,
            image,
            fibers,
            complete,
            validity,
        })
    }

    pub fn system(&self) -> &Arc<ShiftSystem> {
        &self.sys
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point_index(&self, x: &Point) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn window(&self) -> usize {
        match self.mode {
            Mode::Psi => 0,
            Mode::PsiTilde { window } => window,
        }
    }

    pub fn levels(&self) -> usize {
        2 * self.window() + 1
    }

    pub fn dim(&self) -> usize {
        self.points.len() * self.levels()
    }

    /// Index of `e_x` (mode `ψ`, `n` ignored) or `e_(x,n)`.
    pub fn vector(&self, point: usize, n: i64) -> Option<usize> {
        let w = self.window() as i64;
        match self.mode {
            Mode::Psi => Some(point),
            Mode::PsiTilde { .. } => (-w..=w)
                .contains(&n)
                .then(|| point * self.levels() + (n + w) as usize),
        }
    }

    /// `(point index, level)` of a basis vector; the level is 0 in mode `ψ`.
    pub fn decode(&self, i: usize) -> (usize, i64) {
        let levels = self.levels();
        (i / levels, (i % levels) as i64 - self.window() as i64)
    }

    /// The level reached by moving `delta` steps, if it stays in the window.
    pub(crate) fn shift_level(&self, n: i64, delta: i64) -> Option<i64> {
        match self.mode {
            Mode::Psi => Some(0),
            Mode::PsiTilde { window } => {
                let m = n + delta;
                (m.abs() <= window as i64).then_some(m)
            }
        }
    }

    /// Point index of `T^k x`.
    pub fn image(&self, point: usize, k: usize) -> usize {
        (0..k).fold(point, |p, _| self.image[p])
    }

    /// Basis indices of `(T^k)^{-1}(x)` when all of it lies in the basis.
    pub fn preimages(&self, point: usize, k: usize) -> Option<Vec<usize>> {
        if self.validity[point] < k {
            return None;
        }
        let mut level = vec![point];
        for _ in 0..k {
            level = level.iter().flat_map(|&p| self.fibers[p].iter().copied()).collect();
        }
        Some(level)
    }

    pub fn has_full_fiber(&self, point: usize) -> bool {
        self.complete[point]
    }

    /// Largest `r` such that `(T^j)^{-1}(x)` lies in the basis for every
    /// `j ≤ r`; [`UNBOUNDED`] when the whole tree is present.
    pub fn validity(&self, point: usize) -> usize {
        self.validity[point]
    }
}

/// Greatest solution of `v(x) = 1 + min_{Ty = x} v(y)` when the fiber of `x`
/// is complete and `v(x) = 0` otherwise. Iterating downward from the top
/// element reaches it because finite values are bounded by the basis size.
fn greatest_validity(fibers: &[Vec<usize>], complete: &[bool]) -> Vec<usize> {
    let mut v: Vec<usize> = complete.iter().map(|&c| if c { UNBOUNDED } else { 0 }).collect();
    loop {
        let mut changed = false;
        for x in 0..v.len() {
            if !complete[x] {
                continue;
            }
            let m = fibers[x].iter().map(|&y| v[y]).min().unwrap_or(UNBOUNDED);
            let next = m.saturating_add(1);
            if next < v[x] {
                v[x] = next;
                changed = true;
            }
        }
        if !changed {
            return v;
        }
    }
}

/// `T^j(seed)` for `j ≤ forward_depth` together with their preimage trees to
/// depth `preimage_depth`, closed under the shift.
pub fn build_orbit_basis(
    sys: &Arc<ShiftSystem>,
    seed: &Point,
    preimage_depth: usize,
    forward_depth: usize,
    mode: Mode,
    cap: usize,
) -> Result<BasisSpec> {
    if !seed.is_admissible_in(sys) {
        return Err(Error::input(format!("seed {seed} is not a point of the system")));
    }
    let per_point = match mode {
        Mode::Psi => 1,
        Mode::PsiTilde { window } => 2 * window + 1,
    };
    let mut all = BTreeSet::new();
    let mut root = seed.clone();
    for _ in 0..=forward_depth {
        let mut level = vec![root.clone()];
        all.insert(root.clone());
        for _ in 0..preimage_depth {
            level = level.iter().flat_map(|p| sys.preimages(p)).collect();
            level.sort();
            level.dedup();
            all.extend(level.iter().cloned());
            if all.len() * per_point > cap {
                return Err(Error::Resource {
                    what: "basis vectors",
                    requested: all.len() * per_point,
                    cap,
                });
            }
        }
        root = root.tail();
    }
    BasisSpec::from_points(sys.clone(), all, mode, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(pre: &[u8], per: &[u8]) -> Point {
        Point::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    #[test]
    fn orbit_basis_sizes() {
        let full = Arc::new(ShiftSystem::full_shift(2).unwrap());
        let b = build_orbit_basis(&full, &pt(&[], &[0]), 2, 0, Mode::Psi, DEFAULT_BASIS_CAP).unwrap();
        let expected = [pt(&[], &[0]), pt(&[1], &[0]), pt(&[0, 1], &[0]), pt(&[1, 1], &[0])];
        assert_eq!(b.points().len(), 4);
        assert!(expected.iter().all(|p| b.point_index(p).is_some()));
        assert_eq!(b.validity(b.point_index(&pt(&[], &[0])).unwrap()), 2);
        assert_eq!(b.validity(b.point_index(&pt(&[1], &[0])).unwrap()), 1);
        assert_eq!(b.validity(b.point_index(&pt(&[1, 1], &[0])).unwrap()), 0);

        let trap = Arc::new(ShiftSystem::trap());
        let b = build_orbit_basis(&trap, &pt(&[], &[1]), 3, 0, Mode::Psi, DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(b.points(), &[pt(&[], &[1])]);
        assert_eq!(b.validity(0), UNBOUNDED);

        let seed = pt(&[1, 0], &[1]);
        let b = build_orbit_basis(&full, &seed, 0, 0, Mode::Psi, DEFAULT_BASIS_CAP).unwrap();
        // forward closure adds the orbit of the seed
        assert_eq!(b.points().len(), 3);
    }

    #[test]
    fn window_indexing() {
        let full = Arc::new(ShiftSystem::full_shift(2).unwrap());
        let b = build_orbit_basis(&full, &pt(&[], &[0]), 1, 0, Mode::PsiTilde { window: 2 }, 100).unwrap();
        assert_eq!(b.dim(), 10);
        for i in 0..b.dim() {
            let (p, n) = b.decode(i);
            assert_eq!(b.vector(p, n), Some(i));
        }
        assert_eq!(b.vector(0, 3), None);
        assert!(matches!(
            build_orbit_basis(&full, &pt(&[], &[0]), 6, 0, Mode::PsiTilde { window: 2 }, 100),
            Err(Error::Resource { .. })
        ));
    }
}
