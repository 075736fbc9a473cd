use serde::Serialize;

use super::basis::{BasisSpec, Mode};
use super::build::{build_m, build_s, build_s_power, build_s_star_power};
use super::operator::Operator;
use crate::error::Result;
use crate::functions::{multi_index_u, partition_of_unity, Coefficient, LocallyConstantFunction as Lcf};
use crate::symbolic::Word;

/// One Frobenius residual restricted to the valid domain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualEntry {
    pub relation: String,
    pub residual: f64,
    pub valid_columns: usize,
    /// The valid domain was empty, so the relation was not exercised.
    pub vacuous: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    #[serde(flatten)]
    pub mode: Mode,
    pub basis_size: usize,
    pub dimension: usize,
    pub function_depth: usize,
    pub tolerance: f64,
    pub entries: Vec<ResidualEntry>,
    pub pass: bool,
}

fn entry(relation: impl Into<String>, op: &Operator, tol: f64) -> ResidualEntry {
    let residual = op.frobenius_norm_valid();
    let valid_columns = op.valid_count();
    ResidualEntry {
        relation: relation.into(),
        residual,
        valid_columns,
        vacuous: valid_columns == 0,
        pass: residual <= tol,
    }
}

/// The worst residual over a family; the reported column count is the smallest.
fn worst(relation: &str, ops: impl IntoIterator<Item = Operator>, tol: f64) -> ResidualEntry {
    let entries: Vec<ResidualEntry> = ops.into_iter().map(|op| entry(relation, &op, tol)).collect();
    let residual = entries.iter().map(|e| e.residual).fold(0.0, f64::max);
    let valid_columns = entries.iter().map(|e| e.valid_columns).min().unwrap_or(0);
    ResidualEntry {
        relation: relation.to_string(),
        residual,
        valid_columns,
        vacuous: valid_columns == 0,
        pass: residual <= tol,
    }
}

/// All words of length `l` over the alphabet, admissible or not.
fn all_words(d: usize, l: usize) -> Vec<Word> {
    (0..l).fold(vec![Vec::new()], |acc, _| {
        acc.iter()
            .flat_map(|w| {
                (0..d as u8).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect()
    })
}

/// Checks the defining relations on a truncated basis:
/// `S*S = 1`, `S M_f = M_{α(f)} S` and `S* M_f S = M_{ℒ(f)}` for every
/// indicator of a cylinder of length `function_depth`,
/// `Σ_i M_{u_i} S S* M_{u_i} = 1`, and for each `l` in `multi_index_lengths`
/// `Σ_{|j| = l} M_{u_j} S^l (S*)^l M_{u_j}* = 1`.
pub fn relation_residuals(
    basis: &BasisSpec,
    function_depth: usize,
    multi_index_lengths: &[usize],
    tol: f64,
) -> Result<ResidualReport> {
    let sys = basis.system();
    let dim = basis.dim();
    let id = Operator::identity(dim);
    let s = build_s(basis);
    let s_star = build_s_star_power(basis, 1);

    let mut entries = vec![entry("isometry S*S = 1", &s_star.mul(&s).sub(&id), tol)];

    let indicators: Vec<Lcf> = sys
        .words(function_depth.max(1))
        .iter()
        .map(|w| Lcf::indicator(sys.clone(), w))
        .collect::<Result<_>>()?;
    entries.push(worst(
        "covariance S M_f = M_alpha(f) S",
        indicators.iter().map(|f| {
            s.mul(&build_m(f.clone(), basis))
                .sub(&build_m(f.alpha(), basis).mul(&s))
        }),
        tol,
    ));
    entries.push(worst(
        "transfer S* M_f S = M_L(f)",
        indicators.iter().map(|f| {
            s_star
                .mul(&build_m(f.clone(), basis))
                .mul(&s)
                .sub(&build_m(f.transfer(), basis))
        }),
        tol,
    ));

    let ss = s.mul(&s_star);
    let partition = partition_of_unity(sys)
        .into_iter()
        .map(|(_, u)| {
            let mu = build_m(Coefficient::from(u), basis);
            mu.mul(&ss).mul(&mu)
        })
        .fold(Operator::zero(dim), |acc, op| acc.add(&op));
    entries.push(entry("partition sum_i u_i S S* u_i = 1", &partition.sub(&id), tol));

    for &l in multi_index_lengths {
        let proj = build_s_power(basis, l).mul(&build_s_star_power(basis, l));
        let mut total = Operator::zero(dim);
        for j in all_words(sys.alphabet_size(), l) {
            // u_j is real, so M_{u_j}* = M_{u_j}
            let mu = build_m(Coefficient::from(multi_index_u(sys, &j)?), basis);
            total = total.add(&mu.mul(&proj).mul(&mu));
        }
        entries.push(entry(format!("multi-index sum_j u_j S^{l} S*^{l} u_j* = 1"), &total.sub(&id), tol));
    }

    let pass = entries.iter().all(|e| e.pass);
    Ok(ResidualReport {
        mode: basis.mode(),
        basis_size: basis.points().len(),
        dimension: dim,
        function_depth,
        tolerance: tol,
        entries,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::basis::{build_orbit_basis, DEFAULT_BASIS_CAP};
    use super::*;
    use crate::symbolic::{Point, ShiftSystem};

    #[test]
    fn residuals_small_on_standard_systems() {
        for sys in [ShiftSystem::full_shift(2).unwrap(), ShiftSystem::trap()] {
            let sys = Arc::new(sys);
            for mode in [Mode::Psi, Mode::PsiTilde { window: 3 }] {
                let b = build_orbit_basis(&sys, &sys.least_point_overall(), 3, 1, mode, DEFAULT_BASIS_CAP).unwrap();
                let r = relation_residuals(&b, 2, &[1, 2], 1e-9).unwrap();
                assert!(r.pass, "{r:?}");
                assert!(r.entries.iter().all(|e| !e.vacuous), "{r:?}");
            }
        }
    }

    #[test]
    fn degenerate_basis_is_vacuous() {
        let sys = Arc::new(ShiftSystem::full_shift(2).unwrap());
        let b = build_orbit_basis(&sys, &Point::fixed(0), 0, 0, Mode::Psi, DEFAULT_BASIS_CAP).unwrap();
        let r = relation_residuals(&b, 1, &[1], 1e-9).unwrap();
        let iso = &r.entries[0];
        assert!(iso.vacuous && iso.pass);
        assert!(r.entries.iter().any(|e| e.vacuous));
    }
}
