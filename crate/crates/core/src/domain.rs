//! Semantic domain of the normalization model.
//!
//! Variables are de Bruijn *levels* here. Closures are defunctionalized:
//! either a syntactic body with its captured environment, or the reflecting
//! closure produced by `reflect` at a function type.

use std::sync::Arc;

use crate::nbe;
use crate::syntax::{Name, Term, Ty};

/// Level of a variable counted from the root of the context.
pub type Level = usize;

#[derive(Clone, Debug)]
pub enum SemTy {
    Pi(Arc<SemTy>, TyClosure),
    Nat,
    Const(Name, Vec<Value>),
}

#[derive(Clone, Debug)]
pub enum Value {
    Lam(Arc<Closure>),
    Zero,
    Succ(Arc<Value>),
    /// A neutral at a base type; never at `SemTy::Pi`.
    Ne(Arc<SemTy>, Arc<Neutral>),
}

#[derive(Clone, Debug)]
pub enum Neutral {
    Var(Level),
    App {
        fun: Arc<Neutral>,
        arg: Value,
        arg_ty: SemTy,
    },
    NatInd {
        scrut: Arc<Neutral>,
        motive: TyClosure,
        zero: Value,
        succ: BiClosure,
    },
    Const(Name, Vec<Value>),
}

#[derive(Clone, Debug)]
pub enum Closure {
    Term {
        env: Env,
        body: Arc<Term>,
    },
    /// `λd. reflect(cod(d), App(ne, d))`.
    Reflect {
        ne: Arc<Neutral>,
        dom: SemTy,
        cod: TyClosure,
    },
}

#[derive(Clone, Debug)]
pub struct TyClosure {
    pub env: Env,
    pub body: Arc<Ty>,
}

/// Closure binding two variables: the predecessor, then the recursive result.
#[derive(Clone, Debug)]
pub struct BiClosure {
    pub env: Env,
    pub body: Arc<Term>,
}

/// Values for the variables in scope, outermost first: index `i` is at
/// position `len - 1 - i`, and position `k` holds the variable of level `k`.
#[derive(Clone, Debug, Default)]
pub struct Env(Vec<Value>);

impl Env {
    pub fn new() -> Env {
        Env(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Value> {
        let n = self.0.len();
        (index < n).then(|| &self.0[n - 1 - index])
    }

    pub fn push(&mut self, v: Value) {
        self.0.push(v);
    }

    pub fn extend(&self, v: Value) -> Env {
        let mut env = self.clone();
        env.push(v);
        env
    }

    pub fn values(&self) -> &[Value] {
        &self.0
    }
}

impl FromIterator<Value> for Env {
    fn from_iter<I: IntoIterator<Item = Value>>(iter: I) -> Env {
        Env(iter.into_iter().collect())
    }
}

impl SemTy {
    pub fn is_pi(&self) -> bool {
        matches!(self, SemTy::Pi(..))
    }
}

impl Value {
    pub fn ne(ty: SemTy, ne: Neutral) -> Value {
        Value::Ne(Arc::new(ty), Arc::new(ne))
    }

    pub fn succ(pred: Value) -> Value {
        Value::Succ(Arc::new(pred))
    }

    /// No neutral in this value carries a function type, looking through
    /// successors and neutral payloads. Closure bodies are not inspected.
    pub fn respects_reflection(&self) -> bool {
        match self {
            Value::Lam(clo) => match &**clo {
                Closure::Term { .. } => true,
                Closure::Reflect { ne, .. } => ne.respects_reflection(),
            },
            Value::Zero => true,
            Value::Succ(p) => p.respects_reflection(),
            Value::Ne(ty, ne) => !ty.is_pi() && ne.respects_reflection(),
        }
    }
}

impl Neutral {
    fn respects_reflection(&self) -> bool {
        match self {
            Neutral::Var(_) => true,
            Neutral::App { fun, arg, .. } => fun.respects_reflection() && arg.respects_reflection(),
            Neutral::NatInd { scrut, zero, .. } => {
                scrut.respects_reflection() && zero.respects_reflection()
            }
            Neutral::Const(_, args) => args.iter().all(Value::respects_reflection),
        }
    }
}

/// The value of the variable at `level`, of semantic type `ty`.
pub fn var_value(ty: &SemTy, level: Level) -> Value {
    nbe::reflect(ty, Neutral::Var(level))
}
