//! Checks of the equivalent characterizations of topological freeness:
//! witnesses in the non-free case and commutant probes in the free case.

mod probe;
pub mod random;
mod report;
mod witness;

pub use probe::{maximal_abelian_probe, ProbeReport, ProbeSettings, ProbeTrial};
pub use report::{analyze, ConfigEcho, InvariantSummary, LabConfig, AnalysisReport, SCHEMA_VERSION};
pub use witness::{
    build_witness, commutant_residual, not_in_cx_certificate, psi_kernel_witness, witness_entry_check,
    witness_report, BasisVector, CommutantCheck, FormulaEntryCheck, KernelReport, MatrixEntry, Witness,
    WitnessReport,
};
