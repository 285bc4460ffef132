//! A dependently typed lambda calculus with natural numbers and postulated
//! constants, normalized by evaluation.
//!
//! Terms are checked bidirectionally against a [`Signature`] and normalized to
//! η-long β-normal forms by evaluating into a semantic domain and reading the
//! result back. An independent rewriting normalizer in [`oracle`] serves as a
//! reference implementation for testing.

pub mod check;
pub mod domain;
pub mod nbe;
pub mod normal;
pub mod oracle;
pub mod signature;
pub mod surface;
pub mod syntax;
pub mod testkit;

pub use check::{check, check_ty, conv_tm, conv_ty, infer, TypeError};
pub use nbe::{normalize_tm, normalize_ty, NbeError};
pub use normal::{is_normal, NeTm, NfTm, NfTy};
pub use signature::{Declaration, Signature};
pub use syntax::{alpha_eq, Context, Name, Renaming, Syntax, Term, Ty};
