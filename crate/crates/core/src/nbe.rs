//! Evaluation into the semantic domain and read-back into normal forms.

use std::sync::Arc;

use thiserror::Error;

use crate::domain::{var_value, BiClosure, Closure, Env, Level, Neutral, SemTy, TyClosure, Value};
use crate::normal::{NeTm, NfTm, NfTy};
use crate::signature::{Declaration, Signature};
use crate::syntax::{Context, Name, Term, Ty};

/// Invariant breaches. None of these arise on well-typed input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NbeError {
    #[error("variable of level {level} escapes a context of depth {depth}")]
    ScopeEscape { level: Level, depth: usize },
    #[error("variable {0} is not bound by the environment")]
    UnboundVariable(usize),
    #[error("applied a value that is not a function")]
    NotAFunction,
    #[error("constant `{0}` is not a postulate of the right sort")]
    BadConstant(Name),
    #[error("ill-typed value during {0}")]
    IllTyped(&'static str),
}

type Result<T, E = NbeError> = std::result::Result<T, E>;

pub fn eval_ty(sig: &Signature, env: &Env, ty: &Ty) -> Result<SemTy> {
    match ty {
        Ty::Pi(a, b) => Ok(SemTy::Pi(
            Arc::new(eval_ty(sig, env, a)?),
            TyClosure {
                env: env.clone(),
                body: b.clone(),
            },
        )),
        Ty::Nat => Ok(SemTy::Nat),
        Ty::Const(c, args) => Ok(SemTy::Const(c.clone(), eval_all(sig, env, args)?)),
    }
}

fn eval_all(sig: &Signature, env: &Env, ts: &[Term]) -> Result<Vec<Value>> {
    ts.iter().map(|t| eval(sig, env, t)).collect()
}

pub fn eval(sig: &Signature, env: &Env, t: &Term) -> Result<Value> {
    match t {
        Term::Var(i) => env.get(*i).cloned().ok_or(NbeError::UnboundVariable(*i)),
        Term::Lam(body) => Ok(Value::Lam(Arc::new(Closure::Term {
            env: env.clone(),
            body: body.clone(),
        }))),
        Term::App(f, a) => {
            let f = eval(sig, env, f)?;
            let a = eval(sig, env, a)?;
            apply(sig, &f, a)
        }
        Term::Zero => Ok(Value::Zero),
        Term::Succ(p) => Ok(Value::succ(eval(sig, env, p)?)),
        Term::NatInd {
            scrut,
            motive,
            zero,
            succ,
        } => {
            let scrut = eval(sig, env, scrut)?;
            let motive = TyClosure {
                env: env.clone(),
                body: motive.clone(),
            };
            let zero = eval(sig, env, zero)?;
            let succ = BiClosure {
                env: env.clone(),
                body: succ.clone(),
            };
            nat_ind(sig, &scrut, &motive, &zero, &succ)
        }
        Term::Const(c, args) => {
            let Declaration::PostulateTm { params, result, .. } = lookup(sig, c)? else {
                return Err(NbeError::BadConstant(c.clone()));
            };
            if params.len() != args.len() {
                return Err(NbeError::BadConstant(c.clone()));
            }
            let args = eval_all(sig, env, args)?;
            let result_ty = eval_ty(sig, &args.iter().cloned().collect(), result)?;
            Ok(reflect(&result_ty, Neutral::Const(c.clone(), args)))
        }
    }
}

fn lookup<'s>(sig: &'s Signature, c: &Name) -> Result<&'s Declaration> {
    sig.lookup(c).map_err(|_| NbeError::BadConstant(c.clone()))
}

/// The eliminator on a value: computes on numerals and gets stuck on
/// neutrals. The recursive result is computed eagerly.
pub fn nat_ind(
    sig: &Signature,
    scrut: &Value,
    motive: &TyClosure,
    zero: &Value,
    succ: &BiClosure,
) -> Result<Value> {
    match scrut {
        Value::Zero => Ok(zero.clone()),
        Value::Succ(pred) => {
            let rec = nat_ind(sig, pred, motive, zero, succ)?;
            succ.apply(sig, (**pred).clone(), rec)
        }
        Value::Ne(_, ne) => {
            let ty = motive.apply(sig, scrut.clone())?;
            Ok(reflect(
                &ty,
                Neutral::NatInd {
                    scrut: ne.clone(),
                    motive: motive.clone(),
                    zero: zero.clone(),
                    succ: succ.clone(),
                },
            ))
        }
        Value::Lam(_) => Err(NbeError::IllTyped("ind on a function")),
    }
}

pub fn apply(sig: &Signature, fun: &Value, arg: Value) -> Result<Value> {
    let Value::Lam(clo) = fun else {
        return Err(NbeError::NotAFunction);
    };
    match &**clo {
        Closure::Term { env, body } => eval(sig, &env.extend(arg), body),
        Closure::Reflect { ne, dom, cod } => {
            let ty = cod.apply(sig, arg.clone())?;
            Ok(reflect(
                &ty,
                Neutral::App {
                    fun: ne.clone(),
                    arg,
                    arg_ty: dom.clone(),
                },
            ))
        }
    }
}

impl TyClosure {
    pub fn apply(&self, sig: &Signature, arg: Value) -> Result<SemTy> {
        eval_ty(sig, &self.env.extend(arg), &self.body)
    }
}

impl BiClosure {
    pub fn apply(&self, sig: &Signature, pred: Value, rec: Value) -> Result<Value> {
        let mut env = self.env.clone();
        env.push(pred);
        env.push(rec);
        eval(sig, &env, &self.body)
    }
}

/// Embeds a neutral at semantic type `ty`. At function types the result is
/// the reflecting closure, so no neutral value ever has a function type.
pub fn reflect(ty: &SemTy, ne: Neutral) -> Value {
    match ty {
        SemTy::Pi(dom, cod) => Value::Lam(Arc::new(Closure::Reflect {
            ne: Arc::new(ne),
            dom: (**dom).clone(),
            cod: cod.clone(),
        })),
        SemTy::Nat | SemTy::Const(..) => Value::ne(ty.clone(), ne),
    }
}

/// Semantic types of a constant's parameters, instantiated with `args`.
fn param_types(sig: &Signature, c: &Name, args: &[Value]) -> Result<Vec<SemTy>> {
    let params = lookup(sig, c)?.params();
    if params.len() != args.len() {
        return Err(NbeError::BadConstant(c.clone()));
    }
    let mut env = Env::new();
    let mut tys = Vec::with_capacity(params.len());
    for (p, a) in params.iter().zip(args) {
        tys.push(eval_ty(sig, &env, p)?);
        env.push(a.clone());
    }
    Ok(tys)
}

fn reify_args(sig: &Signature, depth: usize, c: &Name, args: &[Value]) -> Result<Vec<NfTm>> {
    let tys = param_types(sig, c, args)?;
    tys.iter()
        .zip(args)
        .map(|(ty, a)| reify(sig, depth, ty, a))
        .collect()
}

/// Reads back a value of type `ty` as an η-long normal form, with `depth`
/// variables in scope.
pub fn reify(sig: &Signature, depth: usize, ty: &SemTy, v: &Value) -> Result<NfTm> {
    match ty {
        SemTy::Pi(dom, cod) => {
            let x = var_value(dom, depth);
            let body = apply(sig, v, x.clone())?;
            let cod = cod.apply(sig, x)?;
            Ok(NfTm::lam(reify(sig, depth + 1, &cod, &body)?))
        }
        SemTy::Nat => match v {
            Value::Zero => Ok(NfTm::Zero),
            Value::Succ(p) => Ok(NfTm::succ(reify(sig, depth, ty, p)?)),
            Value::Ne(_, ne) => Ok(NfTm::NeNat(reify_ne(sig, depth, ne)?)),
            Value::Lam(_) => Err(NbeError::IllTyped("reify at Nat")),
        },
        SemTy::Const(c, args) => match v {
            Value::Ne(_, ne) => Ok(NfTm::NeConst(
                c.clone(),
                reify_args(sig, depth, c, args)?,
                reify_ne(sig, depth, ne)?,
            )),
            _ => Err(NbeError::IllTyped("reify at a type constant")),
        },
    }
}

pub fn reify_ne(sig: &Signature, depth: usize, ne: &Neutral) -> Result<NeTm> {
    match ne {
        Neutral::Var(level) => {
            if *level >= depth {
                Err(NbeError::ScopeEscape {
                    level: *level,
                    depth,
                })
            } else {
                Ok(NeTm::Var(depth - 1 - level))
            }
        }
        Neutral::App { fun, arg, arg_ty } => Ok(NeTm::app(
            reify_ne(sig, depth, fun)?,
            reify(sig, depth, arg_ty, arg)?,
        )),
        Neutral::NatInd {
            scrut,
            motive,
            zero,
            succ,
        } => {
            let scrut = reify_ne(sig, depth, scrut)?;
            let n = var_value(&SemTy::Nat, depth);
            let motive_nf = nfty(sig, depth + 1, &motive.apply(sig, n)?)?;
            let zero_ty = motive.apply(sig, Value::Zero)?;
            let zero = reify(sig, depth, &zero_ty, zero)?;
            let pred = var_value(&SemTy::Nat, depth);
            let rec = var_value(&motive.apply(sig, pred.clone())?, depth + 1);
            let succ_ty = motive.apply(sig, Value::succ(pred.clone()))?;
            let succ = reify(sig, depth + 2, &succ_ty, &succ.apply(sig, pred, rec)?)?;
            Ok(NeTm::NatInd {
                scrut: Box::new(scrut),
                motive: Box::new(motive_nf),
                zero: Box::new(zero),
                succ: Box::new(succ),
            })
        }
        Neutral::Const(c, args) => Ok(NeTm::Const(c.clone(), reify_args(sig, depth, c, args)?)),
    }
}

pub fn nfty(sig: &Signature, depth: usize, ty: &SemTy) -> Result<NfTy> {
    match ty {
        SemTy::Pi(dom, cod) => {
            let x = var_value(dom, depth);
            Ok(NfTy::fun(
                nfty(sig, depth, dom)?,
                nfty(sig, depth + 1, &cod.apply(sig, x)?)?,
            ))
        }
        SemTy::Nat => Ok(NfTy::Nat),
        SemTy::Const(c, args) => Ok(NfTy::Const(c.clone(), reify_args(sig, depth, c, args)?)),
    }
}

/// Environment sending every variable of `ctx` to itself, reflected.
pub fn id_env(sig: &Signature, ctx: &Context) -> Result<Env> {
    let mut env = Env::new();
    for (level, entry) in ctx.entries().iter().enumerate() {
        let ty = eval_ty(sig, &env, entry)?;
        env.push(var_value(&ty, level));
    }
    Ok(env)
}

pub fn normalize_ty(sig: &Signature, ctx: &Context, ty: &Ty) -> Result<NfTy> {
    let env = id_env(sig, ctx)?;
    nfty(sig, ctx.len(), &eval_ty(sig, &env, ty)?)
}

pub fn normalize_tm(sig: &Signature, ctx: &Context, ty: &Ty, t: &Term) -> Result<NfTm> {
    let env = id_env(sig, ctx)?;
    let sem_ty = eval_ty(sig, &env, ty)?;
    let v = eval(sig, &env, t)?;
    reify(sig, ctx.len(), &sem_ty, &v)
}
