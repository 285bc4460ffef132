//! Normal types, normal terms and neutral terms, mutually defined.
//!
//! The trees carry only what is needed to pin down the erased term, with one
//! exception: a neutral at a type constant keeps the normal forms of that
//! type's arguments (`NfTm::NeConst`).

use crate::nbe;
use crate::signature::{Declaration, Signature};
use crate::syntax::{self, Context, Name, Renaming, Syntax, Term, Ty};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NfTy {
    Fun(Box<NfTy>, Box<NfTy>),
    Nat,
    Const(Name, Vec<NfTm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NfTm {
    Lam(Box<NfTm>),
    Zero,
    Succ(Box<NfTm>),
    /// Neutral at `Nat`.
    NeNat(NeTm),
    /// Neutral at the type constant `name` applied to `index`.
    NeConst(Name, Vec<NfTm>, NeTm),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NeTm {
    Var(usize),
    App(Box<NeTm>, Box<NfTm>),
    NatInd {
        scrut: Box<NeTm>,
        motive: Box<NfTy>,
        zero: Box<NfTm>,
        succ: Box<NfTm>,
    },
    Const(Name, Vec<NfTm>),
}

impl NfTm {
    pub fn lam(body: NfTm) -> NfTm {
        NfTm::Lam(Box::new(body))
    }

    pub fn succ(pred: NfTm) -> NfTm {
        NfTm::Succ(Box::new(pred))
    }

    pub fn numeral(n: u64) -> NfTm {
        (0..n).fold(NfTm::Zero, |t, _| NfTm::succ(t))
    }

    pub fn erase(&self) -> Term {
        match self {
            NfTm::Lam(b) => Term::lam(b.erase()),
            NfTm::Zero => Term::Zero,
            NfTm::Succ(p) => Term::succ(p.erase()),
            NfTm::NeNat(e) | NfTm::NeConst(_, _, e) => e.erase(),
        }
    }
}

impl NeTm {
    pub fn app(fun: NeTm, arg: NfTm) -> NeTm {
        NeTm::App(Box::new(fun), Box::new(arg))
    }

    pub fn erase(&self) -> Term {
        match self {
            NeTm::Var(i) => Term::Var(*i),
            NeTm::App(f, a) => Term::app(f.erase(), a.erase()),
            NeTm::NatInd {
                scrut,
                motive,
                zero,
                succ,
            } => Term::nat_ind(scrut.erase(), motive.erase(), zero.erase(), succ.erase()),
            NeTm::Const(c, args) => Term::Const(c.clone(), args.iter().map(NfTm::erase).collect()),
        }
    }
}

impl NfTy {
    pub fn fun(dom: NfTy, cod: NfTy) -> NfTy {
        NfTy::Fun(Box::new(dom), Box::new(cod))
    }

    pub fn erase(&self) -> Ty {
        match self {
            NfTy::Fun(a, b) => Ty::pi(a.erase(), b.erase()),
            NfTy::Nat => Ty::Nat,
            NfTy::Const(c, args) => Ty::Const(c.clone(), args.iter().map(NfTm::erase).collect()),
        }
    }
}

/// Variable-level traversal of normal-form trees. `f(index, depth)` returns
/// the new index of a variable seen under `depth` local binders.
pub trait NfSyntax: Sized {
    fn map_vars(&self, depth: usize, f: &dyn Fn(usize, usize) -> usize) -> Self;

    fn rename_nf(&self, r: &Renaming) -> Self {
        let map = r.map();
        self.map_vars(0, &|j, k| if j < k { j } else { map[j - k] + k })
    }
}

impl NfSyntax for NfTy {
    fn map_vars(&self, depth: usize, f: &dyn Fn(usize, usize) -> usize) -> NfTy {
        match self {
            NfTy::Fun(a, b) => NfTy::fun(a.map_vars(depth, f), b.map_vars(depth + 1, f)),
            NfTy::Nat => NfTy::Nat,
            NfTy::Const(c, args) => NfTy::Const(
                c.clone(),
                args.iter().map(|a| a.map_vars(depth, f)).collect(),
            ),
        }
    }
}

impl NfSyntax for NfTm {
    fn map_vars(&self, depth: usize, f: &dyn Fn(usize, usize) -> usize) -> NfTm {
        match self {
            NfTm::Lam(b) => NfTm::lam(b.map_vars(depth + 1, f)),
            NfTm::Zero => NfTm::Zero,
            NfTm::Succ(p) => NfTm::succ(p.map_vars(depth, f)),
            NfTm::NeNat(e) => NfTm::NeNat(e.map_vars(depth, f)),
            NfTm::NeConst(c, idx, e) => NfTm::NeConst(
                c.clone(),
                idx.iter().map(|a| a.map_vars(depth, f)).collect(),
                e.map_vars(depth, f),
            ),
        }
    }
}

impl NfSyntax for NeTm {
    fn map_vars(&self, depth: usize, f: &dyn Fn(usize, usize) -> usize) -> NeTm {
        match self {
            NeTm::Var(i) => NeTm::Var(f(*i, depth)),
            NeTm::App(g, a) => NeTm::app(g.map_vars(depth, f), a.map_vars(depth, f)),
            NeTm::NatInd {
                scrut,
                motive,
                zero,
                succ,
            } => NeTm::NatInd {
                scrut: Box::new(scrut.map_vars(depth, f)),
                motive: Box::new(motive.map_vars(depth + 1, f)),
                zero: Box::new(zero.map_vars(depth, f)),
                succ: Box::new(succ.map_vars(depth + 2, f)),
            },
            NeTm::Const(c, args) => NeTm::Const(
                c.clone(),
                args.iter().map(|a| a.map_vars(depth, f)).collect(),
            ),
        }
    }
}

/// Is `t` the erasure of a normal form at `ty`? Precondition: `t` checks at
/// `ty` in `ctx`.
pub fn is_normal(sig: &Signature, ctx: &Context, ty: &Ty, t: &Term) -> bool {
    reconstruct_tm(sig, ctx, ty, t).is_some()
}

pub fn is_normal_ty(sig: &Signature, ctx: &Context, ty: &Ty) -> bool {
    reconstruct_ty(sig, ctx, ty).is_some()
}

/// The normal-form tree whose erasure is `t`, if there is one. It is unique:
/// the grammar is type-directed and every constructor erases to a distinct
/// head.
pub fn reconstruct_tm(sig: &Signature, ctx: &Context, ty: &Ty, t: &Term) -> Option<NfTm> {
    match (ty, t) {
        (Ty::Pi(a, b), Term::Lam(body)) => Some(NfTm::lam(reconstruct_tm(
            sig,
            &ctx.extend((**a).clone()),
            b,
            body,
        )?)),
        (Ty::Pi(..), _) => None,
        (Ty::Nat, Term::Zero) => Some(NfTm::Zero),
        (Ty::Nat, Term::Succ(p)) => Some(NfTm::succ(reconstruct_tm(sig, ctx, ty, p)?)),
        (Ty::Nat, _) => match reconstruct_ne(sig, ctx, t)? {
            (ne, Ty::Nat) => Some(NfTm::NeNat(ne)),
            _ => None,
        },
        (Ty::Const(c, args), _) => {
            let (ne, ne_ty) = reconstruct_ne(sig, ctx, t)?;
            if !matches!(&ne_ty, Ty::Const(c2, _) if c2 == c) {
                return None;
            }
            let params = sig.lookup(c).ok()?.params().to_vec();
            let mut index = Vec::with_capacity(args.len());
            for (i, arg) in args.iter().enumerate() {
                let param_ty = params.get(i)?.subst_all(&args[..i]);
                index.push(nbe::normalize_tm(sig, ctx, &param_ty, arg).ok()?);
            }
            Some(NfTm::NeConst(c.clone(), index, ne))
        }
    }
}

fn reconstruct_ne(sig: &Signature, ctx: &Context, t: &Term) -> Option<(NeTm, Ty)> {
    match t {
        Term::Var(i) => Some((NeTm::Var(*i), ctx.lookup(*i)?)),
        Term::App(f, a) => {
            let (f_ne, f_ty) = reconstruct_ne(sig, ctx, f)?;
            let Ty::Pi(dom, cod) = f_ty else { return None };
            let a_nf = reconstruct_tm(sig, ctx, &dom, a)?;
            Some((NeTm::app(f_ne, a_nf), cod.subst1(a)))
        }
        Term::NatInd {
            scrut,
            motive,
            zero,
            succ,
        } => {
            let (s_ne, Ty::Nat) = reconstruct_ne(sig, ctx, scrut)? else {
                return None;
            };
            let under = ctx.extend(Ty::Nat);
            let m_nf = reconstruct_ty(sig, &under, motive)?;
            let z_nf = reconstruct_tm(sig, ctx, &motive.subst1(&Term::Zero), zero)?;
            let s_ctx = under.extend((**motive).clone());
            let s_nf = reconstruct_tm(sig, &s_ctx, &syntax::ind_succ_type(motive), succ)?;
            let ne = NeTm::NatInd {
                scrut: Box::new(s_ne),
                motive: Box::new(m_nf),
                zero: Box::new(z_nf),
                succ: Box::new(s_nf),
            };
            Some((ne, motive.subst1(scrut)))
        }
        Term::Const(c, args) => {
            let Declaration::PostulateTm { params, result, .. } = sig.lookup(c).ok()? else {
                return None;
            };
            let nfs = reconstruct_args(sig, ctx, params, args)?;
            Some((NeTm::Const(c.clone(), nfs), result.subst_all(args)))
        }
        _ => None,
    }
}

fn reconstruct_args(
    sig: &Signature,
    ctx: &Context,
    params: &[Ty],
    args: &[Term],
) -> Option<Vec<NfTm>> {
    if params.len() != args.len() {
        return None;
    }
    params
        .iter()
        .enumerate()
        .map(|(i, p)| reconstruct_tm(sig, ctx, &p.subst_all(&args[..i]), &args[i]))
        .collect()
}

pub fn reconstruct_ty(sig: &Signature, ctx: &Context, ty: &Ty) -> Option<NfTy> {
    match ty {
        Ty::Pi(a, b) => Some(NfTy::fun(
            reconstruct_ty(sig, ctx, a)?,
            reconstruct_ty(sig, &ctx.extend((**a).clone()), b)?,
        )),
        Ty::Nat => Some(NfTy::Nat),
        Ty::Const(c, args) => {
            let Declaration::PostulateTy { params, .. } = sig.lookup(c).ok()? else {
                return None;
            };
            Some(NfTy::Const(
                c.clone(),
                reconstruct_args(sig, ctx, params, args)?,
            ))
        }
    }
}
