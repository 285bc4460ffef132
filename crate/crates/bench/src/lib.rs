//! Workloads shared by the benchmarks.

use tt_core::surface::{elaborate, elaborate_closed, parse_expr, parse_file};
use tt_core::{Signature, Term, Ty};

pub const ARITHMETIC: &str = "
def add : Nat -> Nat -> Nat := \\m. \\n. ind(m; _. Nat; n; _ r. succ r)
def mul : Nat -> Nat -> Nat := \\m. \\n. ind(m; _. Nat; 0; _ r. add n r)
def exp : Nat -> Nat -> Nat := \\b. \\e. ind(e; _. Nat; 1; _ r. mul b r)
";

pub fn arithmetic() -> Signature {
    elaborate(&parse_file(ARITHMETIC).expect("fixture parses")).expect("fixture checks")
}

/// Elaborates a closed expression over `sig`, inferring its type.
pub fn closed(sig: &Signature, src: &str) -> (Term, Ty) {
    let e = parse_expr(src).expect("expression parses");
    elaborate_closed(sig, &e, None).expect("expression checks")
}
