//! Exhaustive certification: minors, intertwines, transversality,
//! connectivity and bounded obtainability.

pub mod closure;
pub mod connectivity;
pub mod intertwine;
pub mod minor;
pub mod report;
pub mod transversal;

pub use closure::{obtainability_closure, ObtainabilityClosure};
pub use connectivity::{connectivity, Connectivity};
pub use intertwine::{verify_intertwine, verify_intertwine_exhaustive};
pub use minor::{has_minor, MinorWitness};
pub use report::{Check, VerificationReport};
pub use transversal::{is_cotransversal, is_transversal_mi, transversal_presentation_oracle, MiVerdict};
