pub mod arith;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod induced;
pub mod numtheory;
pub mod report;
pub mod root_datum;
pub mod steinberg;
pub mod weight;

pub use enumerate::{CandidateRow, ExceptionRecord, IrrepCandidate};
pub use error::{Error, Result};
pub use root_datum::{Family, LieType, RootDatum};
pub use steinberg::{ClassificationReport, ProductMode, TensorCandidate};
pub use weight::{Dominance, DominantWeight};
