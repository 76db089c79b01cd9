//! Frobenius complexes, multigraded Betti numbers and Poincaré series of
//! affine monoids, with a checker for the gluing formula
//! `P_Λ = P_Λ1 · P_Λ2 / (1 - t² z^ρ)`.

pub mod cli;
pub mod composition;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod gluing;
pub mod homology;
pub mod io;
pub mod monoid;
pub mod poset;
pub mod resolution;
pub mod verify;

pub use composition::{
    composition_poset, phi, phi_inverse, Composition, CompositionLimits, CompositionRoute, Compositions,
};
pub use error::{Error, Result};
pub use field::FieldChoice;
pub use frobenius::{
    betti_record, betti_vector, dirsum_predicted_table, frobenius_complex, poincare_records, poincare_table,
    BettiConfig, BettiRecord, FrobeniusComplex, Method, PoincareTable, Route,
};
pub use gluing::{
    enumerate_decompositions, predicted_betti, predicted_poincare_table, predicted_table_pointwise, verify_gluing,
    Decomposition, GluingPredictor,
};
pub use homology::{BettiVector, HomologyReport, SimplicialComplex};
pub use monoid::{Element, Monoid, MonoidDescriptor};
pub use poset::{beat_point_core, FinitePoset, HasseDiagram, PosetExport};
pub use verify::{verify_compositions, verify_dirsum, Summary, VerificationEntry, VerificationReport};
