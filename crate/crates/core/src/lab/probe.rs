use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::random::random_function;
use super::witness::commutant_residual;
use crate::algebra::{Element, Monomial};
use crate::error::{Error, Result};
use crate::repr::BasisSpec;
use crate::symbolic::ShiftSystem;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProbeSettings {
    pub trials: usize,
    pub seed: u64,
    /// Residuals at or below this count as commuting.
    pub tolerance: f64,
    /// Residuals at or above this count as not commuting.
    pub delta: f64,
    pub max_power: usize,
    pub max_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeTrial {
    pub k: usize,
    pub l: usize,
    pub f_depth: usize,
    pub g_depth: usize,
    pub commutant_depth: usize,
    pub residual: f64,
    pub pass: bool,
}

/// Evidence, not proof, that `C(X)` is maximal abelian: random monomials of
/// nonzero degree all fail to commute with some cylinder indicator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub kind: &'static str,
    pub settings: ProbeSettings,
    pub basis_dimension: usize,
    pub trials: Vec<ProbeTrial>,
    pub min_residual: Option<f64>,
    pub pass: bool,
}

/// Draws `f s^k (s*)^l g` with `k ≠ l`, `f g ≠ 0` and the monomial itself
/// nonzero, then measures its commutator with the indicators of cylinders
/// long enough to separate `x` from `y` whenever `T^k y = T^l x`:
/// the coefficient depth plus `max(k, l) + 1`.
pub fn maximal_abelian_probe(
    sys: &Arc<ShiftSystem>,
    settings: ProbeSettings,
    basis: &BasisSpec,
) -> Result<ProbeReport> {
    if !sys.is_topologically_free().free {
        return Err(Error::input("the maximal-abelian probe needs a topologically free system"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut trials = Vec::with_capacity(settings.trials);
    for _ in 0..settings.trials {
        let m = loop {
            let f = random_function(sys, &mut rng, settings.max_depth);
            let g = random_function(sys, &mut rng, settings.max_depth);
            let k = rng.gen_range(0..=settings.max_power);
            let mut l = rng.gen_range(0..settings.max_power.max(1));
            if l >= k {
                l += 1;
            }
            let m = Monomial::new(f.clone(), k, l, g.clone());
            if !(&f * &g).is_zero() && !m.vanishes() {
                break m;
            }
        };
        let depth = m.f.depth().max(m.g.depth()) + m.k.max(m.l) + 1;
        let b = Element::monomial(sys.clone(), m.clone());
        let residual = commutant_residual(&b, depth, basis)?;
        if residual > settings.tolerance && residual < settings.delta {
            return Err(Error::Ambiguous {
                residual,
                low: settings.tolerance,
                high: settings.delta,
            });
        }
        trials.push(ProbeTrial {
            k: m.k,
            l: m.l,
            f_depth: m.f.depth(),
            g_depth: m.g.depth(),
            commutant_depth: depth,
            residual,
            pass: residual >= settings.delta,
        });
    }
    let min_residual = trials.iter().map(|t| t.residual).reduce(f64::min);
    let pass = trials.iter().all(|t| t.pass);
    Ok(ProbeReport {
        kind: "probe",
        settings,
        basis_dimension: basis.dim(),
        trials,
        min_residual,
        pass,
    })
}
