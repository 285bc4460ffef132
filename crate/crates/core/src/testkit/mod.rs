//! Generators, enumerators and property checks for testing the normalizer.

mod enumerate;
mod generate;
mod props;
mod rename;

pub use enumerate::enum_terms;
pub use generate::{gen_context, gen_term, gen_ty, types_equal, GenerationStuck};
pub use props::{check_case, check_renaming, gen_case, Case, Failure, Outcome};
pub use rename::gen_renaming;
