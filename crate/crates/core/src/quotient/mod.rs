//! General quotients: the graded map determined by a vector space and
//! generic scalars, configuration pushing with reduction, the one-step
//! degree-reduction pipeline, and the lifting-bound formulas.

mod bounds;
mod cover;
mod map;
mod push;

pub use bounds::{compose_bound, lifting_bound, LiftingVariant};
pub use cover::suggest_covering_space;
pub use map::{sample_alpha, GeneralQuotientMap};
pub use push::{degree_reduce_pipeline, push_config, PipelineOutcome, PushError, PushOutcome, TraceStep};
