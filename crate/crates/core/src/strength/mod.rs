//! Collapse and strength machinery: exact quadric strength with collapse
//! certificates, bounded collapse search, minimum strength of graded
//! spaces, translation checks and the strengthening iteration.

mod collapse;
mod minstrength;
mod quadric;
mod strengthen;

pub use collapse::{
    collapse_search, CollapseCertificate, MethodTag, StrengthError, StrengthEstimate,
    StrengthValue,
};
pub use minstrength::{min_strength, MinStrengthReport};
pub use quadric::{quadric_matrix, quadric_rank, quadric_strength};
pub use strengthen::{
    strength_translate_check, strengthen, GuardPolicy, StrengthenOutcome, StrengthenStep,
    TranslateReport,
};
