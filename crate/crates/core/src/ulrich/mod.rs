mod certificate;
mod chain;
mod dispatch;
mod enumerate;
mod minmult;
mod theorems;
mod transport;
mod twogen;

pub use certificate::{is_ulrich, Failure, UlrichCertificate, Verdict};
pub use chain::{
    adjacent_structure, chain_build, chain_factorize, hasse_edges, maximal_chains,
    AdjacentStructure, ChainReport,
};
pub use dispatch::{choose_strategy, enumerate_ulrich, enumerate_with, Enumeration, Strategy};
pub use enumerate::{enumerate_fallback, sort_certificates, SearchOptions, Walk, DEFAULT_BUDGET};
pub use minmult::{enumerate_minmult, minmult_report, MinMultReport};
pub use theorems::{property_suite, PropertyCheck, SuiteLimits};
pub use transport::{blowup_invariants, transport, BlowupComparison, Transport};
pub use twogen::enumerate_two_generated;

pub(crate) use enumerate::projective_points;
