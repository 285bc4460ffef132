//! Bidirectional typechecking with conversion by normal-form comparison.

use std::fmt;

use thiserror::Error;

use crate::nbe::{self, NbeError};
use crate::normal::NfTy;
use crate::signature::{Declaration, Signature};
use crate::surface::print;
use crate::syntax::{self, Context, Name, Syntax, Term, Ty};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndCase {
    Zero,
    Succ,
}

impl fmt::Display for IndCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndCase::Zero => "zero",
            IndCase::Succ => "successor",
        })
    }
}

/// A normal type together with the depth of the context it lives in, so it
/// can be printed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShownTy {
    pub nf: NfTy,
    pub depth: usize,
}

impl fmt::Display for ShownTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.depth).map(|l| format!("v{l}")).collect();
        f.write_str(&print::ty_to_string(&self.nf.erase(), &names))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable #{0}")]
    UnboundVariable(usize),
    #[error("expected a function, found a term of type {0}")]
    NotAFunction(ShownTy),
    #[error("cannot infer the type of a lambda; add a type annotation")]
    CannotInfer,
    #[error("type mismatch: expected {expected}, found {actual}")]
    Mismatch { expected: ShownTy, actual: ShownTy },
    #[error("a lambda cannot have type {0}")]
    UnexpectedLambda(ShownTy),
    #[error("{case} case of ind does not match the motive: expected {expected}, found {actual}")]
    MotiveMismatch {
        case: IndCase,
        expected: ShownTy,
        actual: ShownTy,
    },
    #[error("unknown constant `{0}`")]
    UnknownConstant(Name),
    #[error("`{name}` expects {expected} argument(s), found {found}")]
    ArityMismatch {
        name: Name,
        expected: usize,
        found: usize,
    },
    #[error("`{name}` is not a {expected}")]
    WrongKind { name: Name, expected: &'static str },
    #[error("`{0}` is already declared")]
    DuplicateName(Name),
    #[error("internal error: {0}")]
    Internal(#[from] NbeError),
}

impl TypeError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            TypeError::UnboundVariable(_) => "unbound-variable",
            TypeError::NotAFunction(_) => "not-a-function",
            TypeError::CannotInfer => "cannot-infer",
            TypeError::Mismatch { .. } => "type-mismatch",
            TypeError::UnexpectedLambda(_) => "unexpected-lambda",
            TypeError::MotiveMismatch { .. } => "motive-mismatch",
            TypeError::UnknownConstant(_) => "unknown-constant",
            TypeError::ArityMismatch { .. } => "arity-mismatch",
            TypeError::WrongKind { .. } => "wrong-kind",
            TypeError::DuplicateName(_) => "duplicate-name",
            TypeError::Internal(_) => "internal",
        }
    }
}

type Result<T, E = TypeError> = std::result::Result<T, E>;

fn shown(sig: &Signature, ctx: &Context, ty: &Ty) -> Result<ShownTy> {
    Ok(ShownTy {
        nf: nbe::normalize_ty(sig, ctx, ty)?,
        depth: ctx.len(),
    })
}

/// Checks a parameter telescope and returns it as a context.
pub fn check_telescope(sig: &Signature, params: &[Ty]) -> Result<Context> {
    let mut ctx = Context::empty();
    for p in params {
        check_ty(sig, &ctx, p)?;
        ctx.push(p.clone());
    }
    Ok(ctx)
}

pub fn check_ty(sig: &Signature, ctx: &Context, ty: &Ty) -> Result<()> {
    match ty {
        Ty::Pi(a, b) => {
            check_ty(sig, ctx, a)?;
            check_ty(sig, &ctx.extend((**a).clone()), b)
        }
        Ty::Nat => Ok(()),
        Ty::Const(c, args) => match sig.lookup(c)? {
            Declaration::PostulateTy { params, .. } => check_args(sig, ctx, c, params, args),
            _ => Err(TypeError::WrongKind {
                name: c.clone(),
                expected: "type constant",
            }),
        },
    }
}

fn check_args(
    sig: &Signature,
    ctx: &Context,
    name: &Name,
    params: &[Ty],
    args: &[Term],
) -> Result<()> {
    if params.len() != args.len() {
        return Err(TypeError::ArityMismatch {
            name: name.clone(),
            expected: params.len(),
            found: args.len(),
        });
    }
    for (i, (p, a)) in params.iter().zip(args).enumerate() {
        check(sig, ctx, a, &p.subst_all(&args[..i]))?;
    }
    Ok(())
}

pub fn infer(sig: &Signature, ctx: &Context, t: &Term) -> Result<Ty> {
    match t {
        Term::Var(i) => ctx.lookup(*i).ok_or(TypeError::UnboundVariable(*i)),
        Term::Zero => Ok(Ty::Nat),
        Term::Succ(p) => {
            check(sig, ctx, p, &Ty::Nat)?;
            Ok(Ty::Nat)
        }
        Term::Lam(_) => Err(TypeError::CannotInfer),
        Term::App(..) => infer_app(sig, ctx, t),
        Term::NatInd {
            scrut,
            motive,
            zero,
            succ,
        } => {
            check(sig, ctx, scrut, &Ty::Nat)?;
            let under = ctx.extend(Ty::Nat);
            check_ty(sig, &under, motive)?;
            check(sig, ctx, zero, &motive.subst1(&Term::Zero))
                .map_err(|e| motive_error(e, IndCase::Zero))?;
            let succ_ctx = under.extend((**motive).clone());
            check(sig, &succ_ctx, succ, &syntax::ind_succ_type(motive))
                .map_err(|e| motive_error(e, IndCase::Succ))?;
            Ok(motive.subst1(scrut))
        }
        Term::Const(c, args) => match sig.lookup(c)? {
            Declaration::PostulateTm { params, result, .. } => {
                check_args(sig, ctx, c, params, args)?;
                Ok(result.subst_all(args))
            }
            _ => Err(TypeError::WrongKind {
                name: c.clone(),
                expected: "term constant",
            }),
        },
    }
}

fn motive_error(e: TypeError, case: IndCase) -> TypeError {
    match e {
        TypeError::Mismatch { expected, actual } => TypeError::MotiveMismatch {
            case,
            expected,
            actual,
        },
        other => other,
    }
}

/// Splits an application spine into its head and arguments.
fn spine(t: &Term) -> (&Term, Vec<&Term>) {
    let mut args = Vec::new();
    let mut head = t;
    while let Term::App(f, a) = head {
        args.push(&**a);
        head = f;
    }
    args.reverse();
    (head, args)
}

/// For a spine headed by lambdas: binds the first `min(lambdas, args)`
/// arguments at their inferred types. Returns the extended context, the
/// remaining body and the number of arguments consumed.
fn peel_redex<'t>(
    sig: &Signature,
    ctx: &Context,
    head: &'t Term,
    args: &[&Term],
) -> Result<(Context, &'t Term, usize)> {
    let mut inner = ctx.clone();
    let mut body = head;
    let mut used = 0;
    while let (Term::Lam(b), Some(arg)) = (body, args.get(used)) {
        let arg_ty = infer(sig, ctx, arg)?;
        inner.push(arg_ty.shift(used));
        body = b;
        used += 1;
    }
    Ok((inner, body, used))
}

fn infer_app(sig: &Signature, ctx: &Context, t: &Term) -> Result<Ty> {
    let (head, args) = spine(t);
    let (mut ty, used) = if let Term::Lam(_) = head {
        // A redex: the binder types are taken from the arguments.
        let (inner, body, used) = peel_redex(sig, ctx, head, &args)?;
        let owned: Vec<Term> = args[..used].iter().map(|a| (*a).clone()).collect();
        (infer(sig, &inner, body)?.subst_all(&owned), used)
    } else {
        (infer(sig, ctx, head)?, 0)
    };
    for arg in &args[used..] {
        let whnf = nbe::normalize_ty(sig, ctx, &ty)?.erase();
        let Ty::Pi(dom, cod) = whnf else {
            return Err(TypeError::NotAFunction(shown(sig, ctx, &ty)?));
        };
        check(sig, ctx, arg, &dom)?;
        ty = cod.subst1(arg);
    }
    Ok(ty)
}

pub fn check(sig: &Signature, ctx: &Context, t: &Term, ty: &Ty) -> Result<()> {
    match (t, ty) {
        (Term::Lam(body), Ty::Pi(dom, cod)) => check(sig, &ctx.extend((**dom).clone()), body, cod),
        (Term::Lam(_), _) => Err(TypeError::UnexpectedLambda(shown(sig, ctx, ty)?)),
        (Term::App(..), _) => {
            let (head, args) = spine(t);
            if matches!(head, Term::Lam(_)) {
                let (inner, body, used) = peel_redex(sig, ctx, head, &args)?;
                if used == args.len() {
                    return match infer(sig, &inner, body) {
                        Ok(body_ty) => {
                            let owned: Vec<Term> = args.iter().map(|a| (*a).clone()).collect();
                            expect_conv(sig, ctx, &body_ty.subst_all(&owned), ty)
                        }
                        Err(TypeError::CannotInfer) => check(sig, &inner, body, &ty.shift(used)),
                        Err(e) => Err(e),
                    };
                }
            }
            expect_conv(sig, ctx, &infer(sig, ctx, t)?, ty)
        }
        _ => expect_conv(sig, ctx, &infer(sig, ctx, t)?, ty),
    }
}

fn expect_conv(sig: &Signature, ctx: &Context, actual: &Ty, expected: &Ty) -> Result<()> {
    let a = nbe::normalize_ty(sig, ctx, actual)?;
    let e = nbe::normalize_ty(sig, ctx, expected)?;
    if a == e {
        Ok(())
    } else {
        Err(TypeError::Mismatch {
            expected: ShownTy {
                nf: e,
                depth: ctx.len(),
            },
            actual: ShownTy {
                nf: a,
                depth: ctx.len(),
            },
        })
    }
}

/// Definitional equality of types.
pub fn conv_ty(sig: &Signature, ctx: &Context, a: &Ty, b: &Ty) -> Result<bool, NbeError> {
    Ok(nbe::normalize_ty(sig, ctx, a)? == nbe::normalize_ty(sig, ctx, b)?)
}

/// Definitional equality of terms at `ty`.
pub fn conv_tm(
    sig: &Signature,
    ctx: &Context,
    ty: &Ty,
    t: &Term,
    u: &Term,
) -> Result<bool, NbeError> {
    Ok(nbe::normalize_tm(sig, ctx, ty, t)? == nbe::normalize_tm(sig, ctx, ty, u)?)
}
