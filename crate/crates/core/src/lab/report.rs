use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::probe::{maximal_abelian_probe, ProbeReport, ProbeSettings};
use super::witness::{build_witness, witness_report, WitnessReport};
use crate::error::Result;
use crate::io::SystemSpec;
use crate::repr::{build_orbit_basis, relation_residuals, BasisSpec, Mode, ResidualReport, DEFAULT_BASIS_CAP};
use crate::symbolic::{word_to_string, FreenessCertificate, Point, ShiftSystem};

pub const SCHEMA_VERSION: u32 = 1;

/// Missing fields take their defaults when deserialized.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LabConfig {
    /// Length of the cylinders whose indicators test the relations.
    pub depth: usize,
    /// Preimage depth of the orbit bases.
    pub orbit_depth: usize,
    pub forward_depth: usize,
    pub window: usize,
    pub tol: f64,
    pub seed: u64,
    pub probe_trials: usize,
    pub probe_delta: f64,
    /// Extra preimage levels for the probe basis, so that columns hit by
    /// `s^k (s*)^l` with `k, l ≤ 3` stay valid.
    pub probe_extra_depth: usize,
    pub multi_index_lengths: Vec<usize>,
    pub basis_cap: usize,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig {
            depth: 3,
            orbit_depth: 3,
            forward_depth: 1,
            window: 3,
            tol: 1e-9,
            seed: 0,
            probe_trials: 50,
            probe_delta: 1e-3,
            probe_extra_depth: 4,
            multi_index_lengths: vec![1, 2],
            basis_cap: DEFAULT_BASIS_CAP,
        }
    }
}

impl LabConfig {
    pub fn orbit_basis(&self, sys: &Arc<ShiftSystem>, seed: &Point, mode: Mode) -> Result<BasisSpec> {
        build_orbit_basis(sys, seed, self.orbit_depth, self.forward_depth, mode, self.basis_cap)
    }

    /// Residuals of the defining relations on `ψ` and `ψ̃` bases grown from
    /// the least point of the space.
    pub fn residuals(&self, sys: &Arc<ShiftSystem>) -> Result<Vec<ResidualReport>> {
        let seed = sys.least_point_overall();
        [Mode::Psi, Mode::PsiTilde { window: self.window }]
            .into_iter()
            .map(|mode| {
                let basis = self.orbit_basis(sys, &seed, mode)?;
                relation_residuals(&basis, self.depth, &self.multi_index_lengths, self.tol)
            })
            .collect()
    }

    pub fn witness(&self, sys: &Arc<ShiftSystem>, k: usize, l: usize, w: &[u8]) -> Result<WitnessReport> {
        let witness = build_witness(sys, k, l, w)?;
        let depth = self.orbit_depth.max(k);
        let window = self.window.max(k.max(l));
        let psi = build_orbit_basis(sys, &witness.x0, depth, self.forward_depth, Mode::Psi, self.basis_cap)?;
        let tilde = build_orbit_basis(
            sys,
            &witness.x0,
            depth,
            self.forward_depth,
            Mode::PsiTilde { window },
            self.basis_cap,
        )?;
        witness_report(&witness, &psi, &tilde, self.tol)
    }

    pub fn probe(&self, sys: &Arc<ShiftSystem>) -> Result<ProbeReport> {
        let settings = ProbeSettings {
            trials: self.probe_trials,
            seed: self.seed,
            tolerance: self.tol,
            delta: self.probe_delta,
            max_power: 3,
            max_depth: 3,
        };
        let basis = build_orbit_basis(
            sys,
            &sys.least_point_overall(),
            self.orbit_depth + self.probe_extra_depth,
            self.forward_depth,
            Mode::PsiTilde {
                window: self.window.max(settings.max_power),
            },
            self.basis_cap,
        )?;
        maximal_abelian_probe(sys, settings, &basis)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub system: SystemSpec,
    #[serde(flatten)]
    pub lab: LabConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantSummary {
    pub depth: usize,
    /// Words of a proper invariant union of cylinders, if one exists.
    pub union: Option<Vec<String>>,
}

/// Everything `analyze` found, with the inputs echoed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub config: ConfigEcho,
    pub verdict: &'static str,
    pub certificate: Option<FreenessCertificate>,
    pub invariant_union: InvariantSummary,
    pub residuals: Vec<ResidualReport>,
    pub witness: Option<WitnessReport>,
    pub probe: Option<ProbeReport>,
    pub pass: bool,
}

/// Decides topological freeness, then checks the relations and either
/// certifies the witness (non-free case) or runs the commutant probe.
pub fn analyze(sys: &Arc<ShiftSystem>, config: &LabConfig) -> Result<AnalysisReport> {
    let verdict = sys.is_topologically_free();
    let invariant = sys.find_invariant_cylinder_union(config.depth.max(1))?;
    let residuals = config.residuals(sys)?;
    let (witness, probe) = match &verdict.certificate {
        Some(cert) => (Some(config.witness(sys, cert.k, cert.l, cert.cylinder.word())?), None),
        None => (None, Some(config.probe(sys)?)),
    };
    let pass = residuals.iter().all(|r| r.pass)
        && witness.as_ref().is_none_or(|w| w.pass)
        && probe.as_ref().is_none_or(|p| p.pass);
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        config: ConfigEcho {
            system: SystemSpec::from_system(sys),
            lab: config.clone(),
        },
        verdict: if verdict.free { "FREE" } else { "NOT_FREE" },
        certificate: verdict.certificate,
        invariant_union: InvariantSummary {
            depth: invariant.depth,
            union: invariant
                .union
                .map(|u| u.iter().map(|c| word_to_string(c.word())).collect()),
        },
        residuals,
        witness,
        probe,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trap_and_degenerate_reports() {
        let config = LabConfig {
            probe_trials: 5,
            ..LabConfig::default()
        };
        let trap = Arc::new(ShiftSystem::trap());
        let r = analyze(&trap, &config).unwrap();
        assert_eq!(r.verdict, "NOT_FREE");
        assert!(r.pass, "{r:#?}");
        assert!(r.witness.is_some() && r.probe.is_none());

        let one = Arc::new(ShiftSystem::full_shift(1).unwrap());
        let r = analyze(&one, &config).unwrap();
        assert_eq!(r.verdict, "NOT_FREE");
        assert!(r.pass, "{r:#?}");
    }

    #[test]
    fn free_report() {
        let config = LabConfig {
            probe_trials: 5,
            seed: 42,
            ..LabConfig::default()
        };
        let full = Arc::new(ShiftSystem::full_shift(2).unwrap());
        let r = analyze(&full, &config).unwrap();
        assert_eq!(r.verdict, "FREE");
        assert!(r.pass, "{r:#?}");
        assert_eq!(r.probe.as_ref().unwrap().trials.len(), 5);
    }
}
