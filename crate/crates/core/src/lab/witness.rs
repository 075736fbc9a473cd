use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Element, Monomial};
use crate::error::{Error, Result};
use crate::functions::{
    cocycle, cocycle_at, Coefficient, LocallyConstantFunction as Lcf, QComplex, SqrtFunction,
};
use crate::io::point_to_json;
use crate::repr::{represent, BasisSpec, Mode};
use crate::symbolic::{word_to_string, Cylinder, Point, ShiftSystem, Word};

/// `b = f s^k (s*)^l f` with `f = 1_[w]` and `[w]` inside the equalizer of
/// `T^k` and `T^l`, together with the reference point `x₀ ∈ [w]`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub k: usize,
    pub l: usize,
    pub cylinder: Cylinder,
    pub f: Lcf,
    pub x0: Point,
    pub element: Element,
}

/// Requires `k ≠ l`, `|w| ≥ max(k, l)` so that `T^k` and `T^l` are
/// injective on `[w]`, and `[w]` contained in the equalizer.
pub fn build_witness(sys: &Arc<ShiftSystem>, k: usize, l: usize, w: &[u8]) -> Result<Witness> {
    let cylinder = Cylinder::new(sys, w.to_vec())?;
    if k == l {
        return Err(Error::Witness("k and l must differ".into()));
    }
    if w.len() < k.max(l) {
        return Err(Error::Witness(format!(
            "cylinder length {} is below max(k, l) = {}",
            w.len(),
            k.max(l)
        )));
    }
    if !sys.equalizer_cylinder_test(k, l, &cylinder)? {
        return Err(Error::Witness(format!(
            "cylinder not inside equalizer: [{}] has points with T^{k} x != T^{l} x",
            word_to_string(w)
        )));
    }
    let f = Lcf::indicator(sys.clone(), w)?;
    let x0 = sys.least_point(w)?;
    let element = Element::monomial(sys.clone(), Monomial::new(f.clone(), k, l, f.clone()));
    Ok(Witness {
        k,
        l,
        cylinder,
        f,
        x0,
        element,
    })
}

impl Witness {
    /// `c = f (I_k I_l)^{-1/2} f`, the element of `C(X)` that `ψ` cannot
    /// tell apart from `b`.
    pub fn kernel_partner(&self) -> Coefficient {
        let sys = self.f.system();
        let product = &cocycle(sys, self.k) * &cocycle(sys, self.l);
        let inverse = product.map(|v| QComplex::one() / v.clone());
        let root = SqrtFunction::new(inverse).expect("cocycles are positive");
        Coefficient::Radical {
            scale: &self.f * &self.f,
            root,
        }
        .normalized()
    }

    /// `f(x₀)² (I_k(x₀) I_l(x₀))^{-1/2}`.
    pub fn formula_entry(&self) -> f64 {
        let sys = self.f.system();
        let fx = self.f.at(&self.x0);
        let f2 = (fx * fx).re.clone();
        let ik = cocycle_at(sys, &self.x0, self.k) as f64;
        let il = cocycle_at(sys, &self.x0, self.l) as f64;
        num_traits::ToPrimitive::to_f64(&f2).unwrap_or(f64::NAN) / (ik * il).sqrt()
    }
}

fn prefix_classes(basis: &BasisSpec, depth: usize) -> Vec<Word> {
    basis.points().iter().map(|p| p.prefix(depth)).collect()
}

/// `max_h ‖ψ̃(b h − h b)‖_F` over the indicators `h` of cylinders of length
/// `depth`, restricted to the valid domain.
///
/// The commutator with a multiplication operator has entries
/// `B_{yx} (h(x) − h(y))`, so each indicator collects `|B_{yx}|²` from the
/// entries whose endpoints fall on different sides of it. One pass over the
/// nonzero entries gives all the norms at once.
pub fn commutant_residual(b: &Element, depth: usize, basis: &BasisSpec) -> Result<f64> {
    if basis.mode() == Mode::Psi {
        return Err(Error::UnsupportedMode { required: "psi_tilde" });
    }
    let op = represent(b, basis);
    let prefixes = prefix_classes(basis, depth.max(1));
    let mut mass: BTreeMap<&[u8], f64> = BTreeMap::new();
    for j in 0..op.dim() {
        if !op.is_valid(j) {
            continue;
        }
        let px = &prefixes[basis.decode(j).0];
        for &(r, v) in op.column(j) {
            let py = &prefixes[basis.decode(r).0];
            if px != py {
                *mass.entry(px).or_default() += v.norm_sqr();
                *mass.entry(py).or_default() += v.norm_sqr();
            }
        }
    }
    Ok(mass.values().copied().fold(0.0, f64::max).sqrt())
}

/// A basis vector `e_x` or `e_(x,n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisVector {
    pub point: Point,
    pub level: i64,
}

impl Serialize for BasisVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({"point": point_to_json(&self.point), "level": self.level}).serialize(s)
    }
}

/// A matrix entry `⟨A e_column, e_row⟩`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatrixEntry {
    pub column: BasisVector,
    pub row: BasisVector,
    pub value: [f64; 2],
    pub modulus: f64,
}

fn basis_vector(basis: &BasisSpec, i: usize) -> BasisVector {
    let (p, level) = basis.decode(i);
    BasisVector {
        point: basis.points()[p].clone(),
        level,
    }
}

/// The first valid off-diagonal entry of `ψ̃(b)` exceeding `tol` in modulus,
/// scanning columns then rows in basis order. Its presence shows `b ∉ C(X)`,
/// since the elements of `C(X)` act diagonally.
pub fn not_in_cx_certificate(b: &Element, basis: &BasisSpec, tol: f64) -> Result<Option<MatrixEntry>> {
    if basis.mode() == Mode::Psi {
        return Err(Error::UnsupportedMode { required: "psi_tilde" });
    }
    let op = represent(b, basis);
    for j in (0..op.dim()).filter(|&j| op.is_valid(j)) {
        if let Some(&(r, v)) = op.column(j).iter().find(|&&(r, v)| r != j && v.norm() > tol) {
            return Ok(Some(MatrixEntry {
                column: basis_vector(basis, j),
                row: basis_vector(basis, r),
                value: [v.re, v.im],
                modulus: v.norm(),
            }));
        }
    }
    Ok(None)
}

/// The entry `⟨ψ̃(b) e_(x₀,0), e_(x₀,k−l)⟩` next to its closed form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormulaEntryCheck {
    pub entry: Option<MatrixEntry>,
    pub formula: f64,
    pub difference: Option<f64>,
    pub pass: bool,
}

pub fn witness_entry_check(w: &Witness, basis: &BasisSpec, tol: f64) -> Result<FormulaEntryCheck> {
    if basis.mode() == Mode::Psi {
        return Err(Error::UnsupportedMode { required: "psi_tilde" });
    }
    let formula = w.formula_entry();
    let op = represent(&w.element, basis);
    let located = basis.point_index(&w.x0).and_then(|p| {
        let col = basis.vector(p, 0)?;
        let row = basis.vector(p, w.k as i64 - w.l as i64)?;
        op.is_valid(col).then_some((col, row))
    });
    Ok(match located {
        Some((col, row)) => {
            let v = op.entry(row, col);
            let diff = (v - num_complex::Complex64::new(formula, 0.0)).norm();
            FormulaEntryCheck {
                entry: Some(MatrixEntry {
                    column: basis_vector(basis, col),
                    row: basis_vector(basis, row),
                    value: [v.re, v.im],
                    modulus: v.norm(),
                }),
                formula,
                difference: Some(diff),
                pass: diff <= tol && v.norm() > tol,
            }
        }
        None => FormulaEntryCheck {
            entry: None,
            formula,
            difference: None,
            pass: false,
        },
    })
}

/// Evidence that `b − c` is a nonzero element of `ker ψ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelReport {
    /// `c` on each cylinder of `f`'s support, in floating point.
    pub partner_values: BTreeMap<String, f64>,
    pub residual: f64,
    pub valid_columns: usize,
    pub off_diagonal: Option<MatrixEntry>,
    pub tolerance: f64,
    pub pass: bool,
}

/// Compares `ψ(b)` with `ψ(c)` on a `ψ` basis and certifies `b ≠ c` through
/// an off-diagonal `ψ̃` entry.
pub fn psi_kernel_witness(
    w: &Witness,
    psi_basis: &BasisSpec,
    tilde_basis: &BasisSpec,
    tol: f64,
) -> Result<KernelReport> {
    if psi_basis.mode() != Mode::Psi {
        return Err(Error::UnsupportedMode { required: "psi" });
    }
    let c = w.kernel_partner();
    let diff = represent(&w.element, psi_basis).sub(&represent(&Element::function(c.clone()), psi_basis));
    let residual = diff.frobenius_norm_valid();
    let valid_columns = diff.valid_count();
    let off_diagonal = not_in_cx_certificate(&w.element, tilde_basis, tol)?;
    let depth = c.depth();
    let partner_values = w
        .f
        .system()
        .words(depth)
        .into_iter()
        .filter(|u| !w.f.value(u).is_zero())
        .map(|u| (word_to_string(&u), c.value(&u).re))
        .collect();
    Ok(KernelReport {
        partner_values,
        residual,
        valid_columns,
        off_diagonal: off_diagonal.clone(),
        tolerance: tol,
        pass: residual <= tol && valid_columns > 0 && off_diagonal.is_some(),
    })
}

/// Residual of the commutant check at one function depth.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutantCheck {
    pub depth: usize,
    pub residual: f64,
    pub pass: bool,
}

/// The three witness checks for a non-free system.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessReport {
    pub k: usize,
    pub l: usize,
    pub w: String,
    pub x0: Value,
    pub element: Value,
    pub tilde_basis_size: usize,
    pub psi_basis_size: usize,
    pub tolerance: f64,
    pub commutant: Vec<CommutantCheck>,
    pub not_in_cx: FormulaEntryCheck,
    pub not_in_cx_first_entry: Option<MatrixEntry>,
    pub psi_kernel: KernelReport,
    pub pass: bool,
}

pub fn witness_report(w: &Witness, psi_basis: &BasisSpec, tilde_basis: &BasisSpec, tol: f64) -> Result<WitnessReport> {
    let commutant = (1..=w.cylinder.len() + 2)
        .map(|m| {
            let residual = commutant_residual(&w.element, m, tilde_basis)?;
            Ok(CommutantCheck {
                depth: m,
                residual,
                pass: residual <= tol,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let not_in_cx = witness_entry_check(w, tilde_basis, tol)?;
    let first = not_in_cx_certificate(&w.element, tilde_basis, tol)?;
    let psi_kernel = psi_kernel_witness(w, psi_basis, tilde_basis, tol)?;
    let pass = commutant.iter().all(|c| c.pass) && not_in_cx.pass && psi_kernel.pass;
    Ok(WitnessReport {
        k: w.k,
        l: w.l,
        w: word_to_string(w.cylinder.word()),
        x0: point_to_json(&w.x0),
        element: crate::io::element_to_json(&w.element)?,
        tilde_basis_size: tilde_basis.dim(),
        psi_basis_size: psi_basis.dim(),
        tolerance: tol,
        commutant,
        not_in_cx,
        not_in_cx_first_entry: first,
        psi_kernel,
        pass,
    })
}
