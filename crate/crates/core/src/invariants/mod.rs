//! Arithmetic invariants of the whole monoid.

mod aap;
mod elasticity;
mod report;
mod unions;

pub use aap::{aap_decompose, AapDecomposition};
pub use elasticity::{
    elasticity_via_h0, elasticity_via_h0_with, phi_project, relation_system, ElasticityCertificate, ElasticityOptions,
    ElasticityRoute,
};
pub use report::{structure_theorem_report, Regime, ReportRow, StructureReport};
pub use unions::{delta_h_lower, factoriality, unions_profile, DistanceReport, Factoriality, UnionsProfile};
