//! Sylvester-Gallai configuration layer: definitions, validation, pairwise
//! verification with witnesses, the robust linear machinery, and the
//! combinatorial sets and potential of the top-degree analysis.

mod config;
mod robust;
mod sets;
mod verify;

pub use config::{ConfigKind, SGConfig, Violation};
pub use robust::{robust_linear_check, RobustReport};
pub use sets::{fspan_of, sg_sets, SgSets};
pub use verify::{potential, verify_sg, PairResult, SGReport, Witness, WitnessVia};
