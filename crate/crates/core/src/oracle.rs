//! Independent equality judge: leftmost-outermost β/ι rewriting followed by
//! type-directed η-expansion. Works on syntax only and never calls into the
//! evaluator.

use thiserror::Error;

use crate::signature::{Declaration, Signature};
use crate::syntax::{self, alpha_eq, Context, Syntax, Term, Ty};

pub const DEFAULT_FUEL: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("rewriting did not terminate within {0} steps")]
    FuelExhausted(usize),
    #[error("ill-typed input to the oracle: {0}")]
    IllTyped(&'static str),
}

type Result<T, E = OracleError> = std::result::Result<T, E>;

/// Contracts the leftmost-outermost β or ι redex, if any.
pub fn step(t: &Term) -> Option<Term> {
    if let Some(r) = contract(t) {
        return Some(r);
    }
    match t {
        Term::Var(_) | Term::Zero => None,
        Term::Lam(b) => step(b).map(Term::lam),
        Term::Succ(p) => step(p).map(Term::succ),
        Term::App(f, a) => step(f)
            .map(|f| Term::app(f, (**a).clone()))
            .or_else(|| step(a).map(|a| Term::app((**f).clone(), a))),
        Term::NatInd {
            scrut,
            motive,
            zero,
            succ,
        } => {
            let rebuild = |s: &Term, m: &Ty, z: &Term, c: &Term| {
                Term::nat_ind(s.clone(), m.clone(), z.clone(), c.clone())
            };
            if let Some(s) = step(scrut) {
                return Some(rebuild(&s, motive, zero, succ));
            }
            if let Some(m) = step_ty(motive) {
                return Some(rebuild(scrut, &m, zero, succ));
            }
            if let Some(z) = step(zero) {
                return Some(rebuild(scrut, motive, &z, succ));
            }
            step(succ).map(|c| rebuild(scrut, motive, zero, &c))
        }
        Term::Const(c, args) => step_args(args).map(|args| Term::Const(c.clone(), args)),
    }
}

fn step_args(args: &[Term]) -> Option<Vec<Term>> {
    for (i, a) in args.iter().enumerate() {
        if let Some(a) = step(a) {
            let mut out = args.to_vec();
            out[i] = a;
            return Some(out);
        }
    }
    None
}

/// Contracts `t` itself if it is a redex.
fn contract(t: &Term) -> Option<Term> {
    match t {
        Term::App(f, a) => match &**f {
            Term::Lam(body) => Some(body.subst1(a)),
            _ => None,
        },
        Term::NatInd {
            scrut,
            motive,
            zero,
            succ,
        } => match &**scrut {
            Term::Zero => Some((**zero).clone()),
            Term::Succ(pred) => {
                let rec = Term::nat_ind(
                    (**pred).clone(),
                    (**motive).clone(),
                    (**zero).clone(),
                    (**succ).clone(),
                );
                Some(succ.subst2(pred, &rec))
            }
            _ => None,
        },
        _ => None,
    }
}

/// Leftmost-outermost step inside a type.
pub fn step_ty(ty: &Ty) -> Option<Ty> {
    match ty {
        Ty::Pi(a, b) => step_ty(a)
            .map(|a| Ty::pi(a, (**b).clone()))
            .or_else(|| step_ty(b).map(|b| Ty::pi((**a).clone(), b))),
        Ty::Nat => None,
        Ty::Const(c, args) => step_args(args).map(|args| Ty::Const(c.clone(), args)),
    }
}

/// Rewrites to β/ι-normal form using at most `fuel` steps.
pub fn beta_iota(t: &Term, fuel: usize) -> Result<Term> {
    let mut cur = t.clone();
    for _ in 0..fuel {
        match step(&cur) {
            Some(next) => cur = next,
            None => return Ok(cur),
        }
    }
    if step(&cur).is_none() {
        Ok(cur)
    } else {
        Err(OracleError::FuelExhausted(fuel))
    }
}

fn beta_iota_ty(ty: &Ty, fuel: usize) -> Result<Ty> {
    let mut cur = ty.clone();
    for _ in 0..fuel {
        match step_ty(&cur) {
            Some(next) => cur = next,
            None => return Ok(cur),
        }
    }
    if step_ty(&cur).is_none() {
        Ok(cur)
    } else {
        Err(OracleError::FuelExhausted(fuel))
    }
}

/// Full normal form: β/ι-normalization, then η-expansion at every function
/// typed position.
pub fn rw_normalize(
    sig: &Signature,
    ctx: &Context,
    ty: &Ty,
    t: &Term,
    fuel: usize,
) -> Result<Term> {
    let reduced = beta_iota(t, fuel)?;
    Eta { sig }.expand(ctx, ty, &reduced)
}

pub fn rw_normalize_ty(sig: &Signature, ctx: &Context, ty: &Ty, fuel: usize) -> Result<Ty> {
    let reduced = beta_iota_ty(ty, fuel)?;
    Eta { sig }.expand_ty(ctx, &reduced)
}

pub fn oracle_equal(
    sig: &Signature,
    ctx: &Context,
    ty: &Ty,
    t: &Term,
    u: &Term,
    fuel: usize,
) -> Result<bool> {
    Ok(alpha_eq(
        &rw_normalize(sig, ctx, ty, t, fuel)?,
        &rw_normalize(sig, ctx, ty, u, fuel)?,
    ))
}

/// η-expansion of β/ι-normal syntax. Types are only consulted for their
/// head constructor, which substitution never changes.
struct Eta<'s> {
    sig: &'s Signature,
}

impl Eta<'_> {
    fn expand(&self, ctx: &Context, ty: &Ty, t: &Term) -> Result<Term> {
        match (ty, t) {
            (Ty::Pi(a, b), Term::Lam(body)) => Ok(Term::lam(self.expand(
                &ctx.extend((**a).clone()),
                b,
                body,
            )?)),
            (Ty::Pi(..), _) => {
                let expanded = Term::lam(Term::app(t.shift(1), Term::Var(0)));
                self.expand(ctx, ty, &expanded)
            }
            (Ty::Nat, Term::Zero) => Ok(Term::Zero),
            (Ty::Nat, Term::Succ(p)) => Ok(Term::succ(self.expand(ctx, ty, p)?)),
            _ => Ok(self.neutral(ctx, t)?.0),
        }
    }

    /// Expands the arguments of a neutral spine; returns it with its type.
    fn neutral(&self, ctx: &Context, t: &Term) -> Result<(Term, Ty)> {
        match t {
            Term::Var(i) => Ok((
                t.clone(),
                ctx.lookup(*i)
                    .ok_or(OracleError::IllTyped("unbound variable"))?,
            )),
            Term::App(f, a) => {
                let (f, f_ty) = self.neutral(ctx, f)?;
                let Ty::Pi(dom, cod) = f_ty else {
                    return Err(OracleError::IllTyped("application of a non-function"));
                };
                let a = self.expand(ctx, &dom, a)?;
                let ty = cod.subst1(&a);
                Ok((Term::app(f, a), ty))
            }
            Term::NatInd {
                scrut,
                motive,
                zero,
                succ,
            } => {
                let (scrut, _) = self.neutral(ctx, scrut)?;
                let under = ctx.extend(Ty::Nat);
                let motive_ty = self.expand_ty(&under, motive)?;
                let zero = self.expand(ctx, &motive.subst1(&Term::Zero), zero)?;
                let succ_ctx = under.extend((**motive).clone());
                let succ = self.expand(&succ_ctx, &syntax::ind_succ_type(motive), succ)?;
                let ty = motive.subst1(&scrut);
                Ok((Term::nat_ind(scrut, motive_ty, zero, succ), ty))
            }
            Term::Const(c, args) => {
                let Some(Declaration::PostulateTm { params, result, .. }) =
                    self.sig.get(c.as_str())
                else {
                    return Err(OracleError::IllTyped("unknown term constant"));
                };
                let args = self.args(ctx, params, args)?;
                let ty = result.subst_all(&args);
                Ok((Term::Const(c.clone(), args), ty))
            }
            _ => Err(OracleError::IllTyped("not a neutral term")),
        }
    }

    fn args(&self, ctx: &Context, params: &[Ty], args: &[Term]) -> Result<Vec<Term>> {
        if params.len() != args.len() {
            return Err(OracleError::IllTyped("arity mismatch"));
        }
        let mut out: Vec<Term> = Vec::with_capacity(args.len());
        for (p, a) in params.iter().zip(args) {
            let p = p.subst_all(&out);
            out.push(self.expand(ctx, &p, a)?);
        }
        Ok(out)
    }

    fn expand_ty(&self, ctx: &Context, ty: &Ty) -> Result<Ty> {
        match ty {
            Ty::Pi(a, b) => Ok(Ty::pi(
                self.expand_ty(ctx, a)?,
                self.expand_ty(&ctx.extend((**a).clone()), b)?,
            )),
            Ty::Nat => Ok(Ty::Nat),
            Ty::Const(c, args) => {
                let Some(Declaration::PostulateTy { params, .. }) = self.sig.get(c.as_str()) else {
                    return Err(OracleError::IllTyped("unknown type constant"));
                };
                Ok(Ty::Const(c.clone(), self.args(ctx, params, args)?))
            }
        }
    }
}
