//! Executable properties relating the evaluator, the checker and the
//! rewriting oracle on a single test case.

use std::fmt;

use rand::Rng;

use super::generate::{gen_context, gen_term, gen_ty};
use crate::check;
use crate::nbe;
use crate::normal::{self, NfSyntax, NfTm};
use crate::oracle;
use crate::signature::Signature;
use crate::syntax::{alpha_eq, Context, Renaming, Syntax, Term, Ty};

/// A term with its context and type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case {
    pub ctx: Context,
    pub ty: Ty,
    pub term: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub property: &'static str,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.property, self.detail)
    }
}

impl std::error::Error for Failure {}

fn fail<T>(property: &'static str, detail: impl Into<String>) -> Result<T, Failure> {
    Err(Failure {
        property,
        detail: detail.into(),
    })
}

/// Generates a case with a context of length at most `max_ctx` and a term
/// of size at most `size`, retrying fresh contexts and types when stuck.
pub fn gen_case<R: Rng + ?Sized>(
    sig: &Signature,
    max_ctx: usize,
    size: usize,
    rng: &mut R,
) -> Case {
    loop {
        let ctx = gen_context(sig, rng.gen_range(0..=max_ctx), rng);
        let ty = gen_ty(sig, &ctx, 4, rng);
        if let Ok(term) = gen_term(sig, &ctx, &ty, size, rng) {
            return Case { ctx, ty, term };
        }
    }
}

/// What the properties found out about one case.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub nf: NfTm,
    pub oracle: Term,
}

/// Checks, for one case: the input checks; its normal form rechecks, is
/// η-long, normalizes to itself and is oracle-equal to the input; the oracle
/// output is normal and α-equal to the erased normal form.
pub fn check_case(sig: &Signature, case: &Case, fuel: usize) -> Result<Outcome, Failure> {
    let Case { ctx, ty, term } = case;
    if let Err(e) = check::check(sig, ctx, term, ty) {
        return fail("well-typed input", e.to_string());
    }
    let nf = match nbe::normalize_tm(sig, ctx, ty, term) {
        Ok(nf) => nf,
        Err(e) => return fail("normalization", e.to_string()),
    };
    let erased = nf.erase();
    if let Err(e) = check::check(sig, ctx, &erased, ty) {
        return fail("type preservation", e.to_string());
    }
    if matches!(ty, Ty::Pi(..)) && !matches!(nf, NfTm::Lam(_)) {
        return fail("eta-longness", format!("{nf:?} at a function type"));
    }
    if !normal::is_normal(sig, ctx, ty, &erased) {
        return fail("eta-longness", format!("{erased:?} is not normal"));
    }
    match nbe::normalize_tm(sig, ctx, ty, &erased) {
        Ok(again) if again == nf => {}
        Ok(again) => return fail("idempotence", format!("{nf:?} renormalizes to {again:?}")),
        Err(e) => return fail("idempotence", e.to_string()),
    }
    let oracle = match oracle::rw_normalize(sig, ctx, ty, term, fuel) {
        Ok(o) => o,
        Err(e) => return fail("oracle", e.to_string()),
    };
    match oracle::rw_normalize(sig, ctx, ty, &erased, fuel) {
        Ok(o) if alpha_eq(&o, &oracle) => {}
        Ok(o) => {
            return fail(
                "soundness",
                format!("{erased:?} rewrites to {o:?}, input to {oracle:?}"),
            )
        }
        Err(e) => return fail("soundness", e.to_string()),
    }
    if !normal::is_normal(sig, ctx, ty, &oracle) {
        return fail("oracle output normal", format!("{oracle:?}"));
    }
    if !alpha_eq(&oracle, &erased) {
        return fail(
            "oracle agreement",
            format!("oracle {oracle:?}, evaluator {erased:?}"),
        );
    }
    Ok(Outcome { nf, oracle })
}

/// Normalizing and then renaming agrees with renaming and then normalizing.
pub fn check_renaming(sig: &Signature, r: &Renaming, ty: &Ty, term: &Term) -> Result<(), Failure> {
    let before = nbe::normalize_tm(sig, r.source(), ty, term).map_err(|e| Failure {
        property: "normalization",
        detail: e.to_string(),
    })?;
    let after =
        nbe::normalize_tm(sig, r.target(), &ty.rename(r), &term.rename(r)).map_err(|e| {
            Failure {
                property: "normalization",
                detail: e.to_string(),
            }
        })?;
    let renamed = before.rename_nf(r);
    if renamed == after {
        Ok(())
    } else {
        fail(
            "renaming stability",
            format!("renamed normal form {renamed:?}, normal form of renamed term {after:?}"),
        )
    }
}
