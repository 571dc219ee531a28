//! The divided power algebra and its finitely presented graded modules.

pub mod connection;
pub mod element;
pub mod finite;
pub mod invariants;
pub mod presentation;

pub use connection::{connection_decompose, ConnectionData, ConnectionDecomposition};
pub use element::{y, DPElement};
pub use finite::{FinModule, GradedMap, GradedSubspace, Quotient};
pub use presentation::{DPPresentation, Generator, Relation};
pub use invariants::{
    freeness_certificate, map_operation, periodicity_certificate, FreeMap, FreenessCertificate, MapOp,
    MapResult, PeriodicityCertificate,
};
