//! Name resolution, definition expansion and checking of surface programs.

use std::fmt;

use super::lexer::Span;
use super::parser::{Decl, Expr, ExprKind, Ident, TyExpr, TyKind};
use crate::check::{self, TypeError};
use crate::signature::{Declaration, Signature};
use crate::syntax::{Context, Name, Syntax, Term, Ty};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElabErrorKind {
    UnboundName(String),
    /// A type constant used as a term, or the reverse.
    WrongKind {
        name: String,
        expected: &'static str,
    },
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    Type(TypeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElabError {
    pub kind: ElabErrorKind,
    pub span: Span,
}

impl ElabError {
    pub fn code(&self) -> &'static str {
        match &self.kind {
            ElabErrorKind::UnboundName(_) => "unbound-name",
            ElabErrorKind::WrongKind { .. } => "wrong-kind",
            ElabErrorKind::ArityMismatch { .. } => "arity-mismatch",
            ElabErrorKind::Type(e) => e.code(),
        }
    }
}

impl fmt::Display for ElabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ElabErrorKind::UnboundName(x) => write!(f, "unbound name `{x}`"),
            ElabErrorKind::WrongKind { name, expected } => {
                write!(f, "`{name}` is not a {expected}")
            }
            ElabErrorKind::ArityMismatch {
                name,
                expected,
                found,
            } => write!(f, "`{name}` expects {expected} argument(s), found {found}"),
            ElabErrorKind::Type(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ElabError {}

type Result<T> = std::result::Result<T, ElabError>;

fn err<T>(kind: ElabErrorKind, span: Span) -> Result<T> {
    Err(ElabError { kind, span })
}

/// Local variable names, outermost first. `_` binds but never resolves.
#[derive(Debug, Clone, Default)]
pub struct Scope {
    names: Vec<String>,
}

impl Scope {
    pub fn new(names: Vec<String>) -> Scope {
        Scope { names }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn with(&self, name: &str) -> Scope {
        let mut names = self.names.clone();
        names.push(name.to_string());
        Scope { names }
    }

    fn resolve(&self, name: &str) -> Option<usize> {
        if name == "_" {
            return None;
        }
        self.names.iter().rev().position(|n| n == name)
    }
}

pub struct Elaborator<'s> {
    sig: &'s Signature,
}

impl<'s> Elaborator<'s> {
    pub fn new(sig: &'s Signature) -> Elaborator<'s> {
        Elaborator { sig }
    }

    pub fn ty(&self, scope: &Scope, ty: &TyExpr) -> Result<Ty> {
        match &ty.kind {
            TyKind::Nat => Ok(Ty::Nat),
            TyKind::Pi(binder, dom, cod) => {
                let name = binder.as_ref().map_or("_", |b| b.name.as_str());
                let dom = self.ty(scope, dom)?;
                let cod = self.ty(&scope.with(name), cod)?;
                Ok(Ty::pi(dom, cod))
            }
            TyKind::Named(name, args) => match self.sig.get(&name.name) {
                Some(Declaration::PostulateTy { params, .. }) => {
                    if params.len() != args.len() {
                        return err(
                            ElabErrorKind::ArityMismatch {
                                name: name.name.clone(),
                                expected: params.len(),
                                found: args.len(),
                            },
                            ty.span,
                        );
                    }
                    let args = args
                        .iter()
                        .map(|a| self.tm(scope, a))
                        .collect::<Result<_>>()?;
                    Ok(Ty::Const(Name::new(&name.name), args))
                }
                Some(_) => err(
                    ElabErrorKind::WrongKind {
                        name: name.name.clone(),
                        expected: "type",
                    },
                    name.span,
                ),
                None => err(ElabErrorKind::UnboundName(name.name.clone()), name.span),
            },
        }
    }

    pub fn tm(&self, scope: &Scope, e: &Expr) -> Result<Term> {
        match &e.kind {
            ExprKind::Zero => Ok(Term::Zero),
            ExprKind::Num(n) => Ok(Term::numeral(*n)),
            ExprKind::Succ(p) => Ok(Term::succ(self.tm(scope, p)?)),
            ExprKind::Lam(binders, body) => {
                let inner = binders.iter().fold(scope.clone(), |s, b| s.with(&b.name));
                let body = self.tm(&inner, body)?;
                Ok(binders.iter().fold(body, |b, _| Term::lam(b)))
            }
            ExprKind::Var(_) | ExprKind::App(..) => self.spine(scope, e),
            ExprKind::Ind {
                scrut,
                motive_var,
                motive,
                zero,
                pred,
                rec,
                succ,
            } => {
                let scrut = self.tm(scope, scrut)?;
                let motive = self.ty(&scope.with(&motive_var.name), motive)?;
                let zero = self.tm(scope, zero)?;
                let succ = self.tm(&scope.with(&pred.name).with(&rec.name), succ)?;
                Ok(Term::nat_ind(scrut, motive, zero, succ))
            }
        }
    }

    /// Application spines. Term constants take their parameters as the first
    /// arguments of the spine and are η-expanded when under-applied.
    fn spine(&self, scope: &Scope, e: &Expr) -> Result<Term> {
        let mut args = Vec::new();
        let mut head = e;
        while let ExprKind::App(f, a) = &head.kind {
            args.push(&**a);
            head = f;
        }
        args.reverse();
        let mut args = args
            .into_iter()
            .map(|a| self.tm(scope, a))
            .collect::<Result<Vec<_>>>()?;

        let head_term = match &head.kind {
            ExprKind::Var(x) => match scope.resolve(x) {
                Some(i) => Term::Var(i),
                None => match self.sig.get(x) {
                    Some(Declaration::Define { body, .. }) => body.clone(),
                    Some(Declaration::PostulateTm { params, .. }) => {
                        let arity = params.len();
                        if args.len() >= arity {
                            let rest = args.split_off(arity);
                            let t = Term::Const(Name::new(x), args);
                            return Ok(apply_all(t, rest));
                        }
                        let missing = arity - args.len();
                        let mut full: Vec<Term> = args.iter().map(|a| a.shift(missing)).collect();
                        full.extend((0..missing).rev().map(Term::Var));
                        let body = Term::Const(Name::new(x), full);
                        return Ok((0..missing).fold(body, |b, _| Term::lam(b)));
                    }
                    Some(Declaration::PostulateTy { .. }) => {
                        return err(
                            ElabErrorKind::WrongKind {
                                name: x.clone(),
                                expected: "term",
                            },
                            head.span,
                        )
                    }
                    None => return err(ElabErrorKind::UnboundName(x.clone()), head.span),
                },
            },
            _ => self.tm(scope, head)?,
        };
        Ok(apply_all(head_term, args))
    }
}

fn apply_all(head: Term, args: Vec<Term>) -> Term {
    args.into_iter().fold(head, Term::app)
}

fn ident_names(params: &[(Ident, TyExpr)]) -> Vec<String> {
    params.iter().map(|(x, _)| x.name.clone()).collect()
}

/// Splits the leading binders of a term constant's type into its telescope.
fn peel_params(mut ty: &TyExpr) -> (Vec<(Ident, TyExpr)>, &TyExpr) {
    let mut params = Vec::new();
    while let TyKind::Pi(binder, dom, cod) = &ty.kind {
        let name = binder.clone().unwrap_or(Ident {
            name: "_".into(),
            span: dom.span,
        });
        params.push((name, (**dom).clone()));
        ty = cod;
    }
    (params, ty)
}

fn telescope(el: &Elaborator<'_>, params: &[(Ident, TyExpr)]) -> Result<Vec<Ty>> {
    let mut scope = Scope::default();
    let mut out = Vec::with_capacity(params.len());
    for (name, ty) in params {
        out.push(el.ty(&scope, ty)?);
        scope = scope.with(&name.name);
    }
    Ok(out)
}

/// Elaborates one declaration against `sig` and declares it.
pub fn elaborate_decl(sig: &mut Signature, decl: &Decl) -> Result<()> {
    let el = Elaborator::new(sig);
    let span = decl.span();
    let declaration = match decl {
        Decl::Postulate {
            name,
            params,
            ty: None,
            ..
        } => Declaration::postulate_ty(&name.name, telescope(&el, params)?),
        Decl::Postulate {
            name,
            params,
            ty: Some(ty),
            ..
        } => {
            let (params, result) = if params.is_empty() {
                peel_params(ty)
            } else {
                (params.clone(), ty)
            };
            let tele = telescope(&el, &params)?;
            let result = el.ty(&Scope::new(ident_names(&params)), result)?;
            Declaration::postulate_tm(&name.name, tele, result)
        }
        Decl::Def { name, ty, body, .. } => {
            let scope = Scope::default();
            let ty = el.ty(&scope, ty)?;
            let body = el.tm(&scope, body)?;
            Declaration::define(&name.name, ty, body)
        }
    };
    sig.declare(declaration).map_err(|e| ElabError {
        kind: ElabErrorKind::Type(e),
        span,
    })
}

pub fn elaborate(decls: &[Decl]) -> Result<Signature> {
    let mut sig = Signature::empty();
    for d in decls {
        elaborate_decl(&mut sig, d)?;
    }
    Ok(sig)
}

/// Elaborates and checks a closed expression, inferring its type unless one
/// is given. Returns the term and its type.
pub fn elaborate_closed(sig: &Signature, e: &Expr, ty: Option<&TyExpr>) -> Result<(Term, Ty)> {
    let el = Elaborator::new(sig);
    let scope = Scope::default();
    let ctx = Context::empty();
    let t = el.tm(&scope, e)?;
    let type_err = |err: TypeError, span| ElabError {
        kind: ElabErrorKind::Type(err),
        span,
    };
    match ty {
        Some(ty_expr) => {
            let ty = el.ty(&scope, ty_expr)?;
            check::check_ty(sig, &ctx, &ty).map_err(|x| type_err(x, ty_expr.span))?;
            check::check(sig, &ctx, &t, &ty).map_err(|x| type_err(x, e.span))?;
            Ok((t, ty))
        }
        None => match check::infer(sig, &ctx, &t) {
            Ok(ty) => Ok((t, ty)),
            Err(TypeError::CannotInfer) => match el.declared_spine_type(e)? {
                Some(ty) => {
                    check::check(sig, &ctx, &t, &ty).map_err(|x| type_err(x, e.span))?;
                    Ok((t, ty))
                }
                None => Err(type_err(TypeError::CannotInfer, e.span)),
            },
            Err(x) => Err(type_err(x, e.span)),
        },
    }
}

impl Elaborator<'_> {
    /// The type of a closed spine headed by a definition or an
    /// under-applied term constant, read off the declaration. Both elaborate
    /// to lambdas whose type cannot be inferred from the term alone.
    fn declared_spine_type(&self, e: &Expr) -> Result<Option<Ty>> {
        let mut args = Vec::new();
        let mut head = e;
        while let ExprKind::App(f, a) = &head.kind {
            args.push(&**a);
            head = f;
        }
        let ExprKind::Var(x) = &head.kind else {
            return Ok(None);
        };
        let ty = match self.sig.get(x) {
            Some(Declaration::Define { ty, .. }) => ty.clone(),
            Some(Declaration::PostulateTm { params, result, .. }) => params
                .iter()
                .rev()
                .fold(result.clone(), |cod, dom| Ty::pi(dom.clone(), cod)),
            _ => return Ok(None),
        };
        let ctx = Context::empty();
        let type_err = |err: TypeError, span| ElabError {
            kind: ElabErrorKind::Type(err),
            span,
        };
        let mut ty = ty;
        for a in args.into_iter().rev() {
            let arg = self.tm(&Scope::default(), a)?;
            let whnf = crate::nbe::normalize_ty(self.sig, &ctx, &ty)
                .map_err(|x| type_err(x.into(), a.span))?
                .erase();
            let Ty::Pi(dom, cod) = whnf else {
                return Ok(None);
            };
            check::check(self.sig, &ctx, &arg, &dom).map_err(|x| type_err(x, a.span))?;
            ty = cod.subst1(&arg);
        }
        Ok(Some(ty))
    }
}
