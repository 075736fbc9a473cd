use num_complex::Complex64;

use super::basis::{BasisSpec, Mode};
use super::operator::Operator;
use crate::algebra::{Element, Monomial};
use crate::error::{Error, Result};
use crate::functions::{cocycle_at, Coefficient};

fn values(c: &Coefficient, basis: &BasisSpec) -> Vec<Complex64> {
    basis.points().iter().map(|x| c.at(x)).collect()
}

/// `ψ(f s^k (s*)^l g)` or its `ψ̃` counterpart, from the closed formula
/// `⟨e_(y, n-l+k), ·e_(x,n)⟩ = f(y) (I_k(y) I_l(x))^{-1/2} g(x)` for
/// `T^k y = T^l x`. A column is valid when `(T^k)^{-1}(T^l x)` lies in the
/// basis and both intermediate levels stay in the window.
pub fn represent_monomial(m: &Monomial, basis: &BasisSpec) -> Operator {
    let sys = basis.system();
    let f = values(&m.f, basis);
    let g = values(&m.g, basis);
    let dim = basis.dim();
    let mut cols = Vec::with_capacity(dim);
    let mut valid = Vec::with_capacity(dim);
    for j in 0..dim {
        let (x, n) = basis.decode(j);
        let z = basis.image(x, m.l);
        let target = basis
            .shift_level(n, -(m.l as i64))
            .and_then(|mid| basis.shift_level(mid, m.k as i64));
        match (target, basis.preimages(z, m.k)) {
            (Some(level), Some(ys)) => {
                let il = cocycle_at(sys, &basis.points()[x], m.l) as f64;
                let col = ys
                    .into_iter()
                    .map(|y| {
                        let ik = cocycle_at(sys, &basis.points()[y], m.k) as f64;
                        let row = basis.vector(y, level).expect("level checked");
                        (row, f[y] * g[x] / (ik * il).sqrt())
                    })
                    .collect();
                cols.push(col);
                valid.push(true);
            }
            _ => {
                cols.push(Vec::new());
                valid.push(false);
            }
        }
    }
    Operator::from_columns(dim, cols, valid)
}

/// Sum of the term representations; valid where every term is.
pub fn represent(e: &Element, basis: &BasisSpec) -> Operator {
    e.terms()
        .iter()
        .map(|t| represent_monomial(t, basis))
        .fold(Operator::zero(basis.dim()), |acc, op| acc.add(&op))
}

/// `M_f`: multiplication by `f`, diagonal and valid everywhere.
pub fn build_m(f: impl Into<Coefficient>, basis: &BasisSpec) -> Operator {
    let f = f.into();
    let sys = f.system().clone();
    represent_monomial(&Monomial::new(f, 0, 0, Coefficient::one(sys)), basis)
}

pub fn build_s(basis: &BasisSpec) -> Operator {
    build_s_power(basis, 1)
}

/// `S^k e_x = Σ_{T^k y = x} I_k(y)^{-1/2} e_y`.
pub fn build_s_power(basis: &BasisSpec, k: usize) -> Operator {
    let one = Coefficient::one(basis.system().clone());
    represent_monomial(&Monomial::new(one.clone(), k, 0, one), basis)
}

/// `(S*)^k e_x = I_k(x)^{-1/2} e_{T^k x}`.
pub fn build_s_star_power(basis: &BasisSpec, k: usize) -> Operator {
    let one = Coefficient::one(basis.system().clone());
    represent_monomial(&Monomial::new(one.clone(), 0, k, one), basis)
}

/// The gauge unitary `U_z e_(x,n) = z^n e_(x,n)`.
pub fn build_u(basis: &BasisSpec, z: Complex64) -> Result<Operator> {
    if basis.mode() == Mode::Psi {
        return Err(Error::UnsupportedMode { required: "psi_tilde" });
    }
    if (z.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::input(format!("gauge parameter {z} is not of unit modulus")));
    }
    let diag = (0..basis.dim())
        .map(|j| z.powi(basis.decode(j).1 as i32))
        .collect();
    Ok(Operator::diagonal(diag))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::basis::{build_orbit_basis, DEFAULT_BASIS_CAP};
    use super::*;
    use crate::functions::LocallyConstantFunction as Lcf;
    use crate::symbolic::{Point, ShiftSystem};

    fn basis(sys: &Arc<ShiftSystem>, seed: Point, n: usize, mode: Mode) -> BasisSpec {
        build_orbit_basis(sys, &seed, n, 1, mode, DEFAULT_BASIS_CAP).unwrap()
    }

    #[test]
    fn s_columns() {
        let full = Arc::new(ShiftSystem::full_shift(2).unwrap());
        let b = basis(&full, Point::fixed(0), 2, Mode::Psi);
        let s = build_s(&b);
        let x = b.point_index(&Point::fixed(0)).unwrap();
        let y = b.point_index(&Point::new(vec![1], vec![0]).unwrap()).unwrap();
        let h = 0.5f64.sqrt();
        assert!((s.entry(x, x).re - h).abs() < 1e-15);
        assert!((s.entry(y, x).re - h).abs() < 1e-15);
        assert_eq!(s.column(x).len(), 2);

        let trap = Arc::new(ShiftSystem::trap());
        let b = basis(&trap, Point::fixed(1), 2, Mode::Psi);
        let s = build_s(&b);
        assert_eq!(s.column(0), &[(0, Complex64::new(1.0, 0.0))]);
    }

    #[test]
    fn powers_match_products() {
        let trap = Arc::new(ShiftSystem::trap());
        for mode in [Mode::Psi, Mode::PsiTilde { window: 3 }] {
            let b = basis(&trap, Point::fixed(0), 4, mode);
            let s = build_s(&b);
            let st = build_s_star_power(&b, 1);
            let mut pow = s.clone();
            let mut spow = st.clone();
            for k in 2..=3 {
                pow = s.mul(&pow);
                spow = spow.mul(&st);
                let direct = build_s_power(&b, k);
                let d = direct.sub(&pow).with_mask(pow.valid_mask());
                assert!(d.frobenius_norm_valid() < 1e-12);
                assert!(d.valid_count() > 0);
                let ds = build_s_star_power(&b, k).sub(&spow).with_mask(spow.valid_mask());
                assert!(ds.frobenius_norm_valid() < 1e-12);
            }
        }
    }

    #[test]
    fn multiplication_operators_and_gauge() {
        let full = Arc::new(ShiftSystem::full_shift(2).unwrap());
        let b = basis(&full, Point::fixed(0), 2, Mode::PsiTilde { window: 2 });
        let one = build_m(Lcf::one(full.clone()), &b);
        assert_eq!(one, Operator::identity(b.dim()));
        let f = Lcf::indicator(full.clone(), &[0]).unwrap();
        let g = Lcf::indicator(full.clone(), &[1, 0]).unwrap();
        let prod = build_m(f.clone(), &b).mul(&build_m(g.clone(), &b));
        assert_eq!(prod, build_m(&f * &g, &b));

        let z = Complex64::from_polar(1.0, 0.3);
        let u = build_u(&b, z).unwrap();
        let ustar = build_u(&b, z.conj()).unwrap();
        let s = build_s(&b);
        let lhs = u.mul(&s).mul(&ustar);
        assert!(lhs.sub(&s.scale(z)).frobenius_norm_valid() < 1e-12);
        assert_eq!(build_u(&b, Complex64::new(1.0, 0.0)).unwrap(), Operator::identity(b.dim()));
        let psi = basis(&full, Point::fixed(0), 2, Mode::Psi);
        assert!(matches!(build_u(&psi, z), Err(Error::UnsupportedMode { .. })));
    }
}
