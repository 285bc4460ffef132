//! Core syntax: types and terms with de Bruijn indices, telescoped
//! contexts, renamings and capture-avoiding substitution.
//!
//! Index 0 always refers to the innermost binder. Binders are unannotated:
//! a `Lam` carries only its body, and the eliminator `NatInd` carries its
//! motive explicitly so that its type can be synthesised.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Identifier of a declared constant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Name {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Name {
        Name::new(s)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ty {
    /// Dependent function type; the codomain binds one variable.
    Pi(Arc<Ty>, Arc<Ty>),
    Nat,
    /// Fully applied type constant.
    Const(Name, Vec<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Lam(Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    Zero,
    Succ(Arc<Term>),
    /// `ind(scrut; n. motive; zero; p r. succ)`. The successor case binds the
    /// predecessor first, so inside `succ` the recursive result is `Var 0`
    /// and the predecessor is `Var 1`.
    NatInd {
        scrut: Arc<Term>,
        motive: Arc<Ty>,
        zero: Arc<Term>,
        succ: Arc<Term>,
    },
    /// Fully applied term constant.
    Const(Name, Vec<Term>),
}

impl Ty {
    pub fn pi(dom: Ty, cod: Ty) -> Ty {
        Ty::Pi(Arc::new(dom), Arc::new(cod))
    }

    /// Non-dependent function type; the codomain is weakened past the binder.
    pub fn arrow(dom: Ty, cod: Ty) -> Ty {
        let cod = cod.shift(1);
        Ty::pi(dom, cod)
    }

    pub fn constant(name: &str, args: Vec<Term>) -> Ty {
        Ty::Const(Name::new(name), args)
    }

    pub fn size(&self) -> usize {
        match self {
            Ty::Pi(a, b) => 1 + a.size() + b.size(),
            Ty::Nat => 1,
            Ty::Const(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

impl Term {
    pub fn lam(body: Term) -> Term {
        Term::Lam(Arc::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Arc::new(fun), Arc::new(arg))
    }

    pub fn succ(pred: Term) -> Term {
        Term::Succ(Arc::new(pred))
    }

    pub fn nat_ind(scrut: Term, motive: Ty, zero: Term, succ: Term) -> Term {
        Term::NatInd {
            scrut: Arc::new(scrut),
            motive: Arc::new(motive),
            zero: Arc::new(zero),
            succ: Arc::new(succ),
        }
    }

    pub fn constant(name: &str, args: Vec<Term>) -> Term {
        Term::Const(Name::new(name), args)
    }

    pub fn numeral(n: u64) -> Term {
        (0..n).fold(Term::Zero, |t, _| Term::succ(t))
    }

    /// `Some(n)` if the term is a closed numeral `succ^n zero`.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0;
        let mut t = self;
        loop {
            match t {
                Term::Zero => return Some(n),
                Term::Succ(p) => {
                    n += 1;
                    t = p;
                }
                _ => return None,
            }
        }
    }

    /// Node count; binders are counted through the node that introduces them.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero => 1,
            Term::Lam(b) | Term::Succ(b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::NatInd {
                scrut,
                motive,
                zero,
                succ,
            } => 1 + scrut.size() + motive.size() + zero.size() + succ.size(),
            Term::Const(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

/// Syntax whose free variables can be traversed and replaced.
///
/// `traverse` calls `f(index, depth)` at every variable and splices in the
/// result, where `depth` counts the binders crossed inside the tree.
pub trait Syntax: Sized {
    fn traverse(&self, depth: usize, f: &dyn Fn(usize, usize) -> Term) -> Self;

    /// Adds `amount` to every free variable.
    fn shift(&self, amount: usize) -> Self {
        self.shift_from(0, amount)
    }

    /// Adds `amount` to every free variable with index `>= cutoff`.
    fn shift_from(&self, cutoff: usize, amount: usize) -> Self {
        self.traverse(0, &|j, k| {
            if j >= k + cutoff {
                Term::Var(j + amount)
            } else {
                Term::Var(j)
            }
        })
    }

    /// Replaces the outermost `args.len()` free variables. `args` is ordered
    /// outermost first and scoped in the remaining context; variables beyond
    /// the instantiated block are shifted down.
    fn subst_all(&self, args: &[Term]) -> Self {
        let n = args.len();
        self.traverse(0, &|j, k| {
            if j < k {
                Term::Var(j)
            } else if j - k < n {
                args[n - 1 - (j - k)].shift(k)
            } else {
                Term::Var(j - n)
            }
        })
    }

    /// Single substitution for `Var 0`.
    fn subst1(&self, arg: &Term) -> Self {
        self.subst_all(std::slice::from_ref(arg))
    }

    /// Substitution for a body binding two variables, `outer` then `inner`.
    fn subst2(&self, outer: &Term, inner: &Term) -> Self {
        self.subst_all(&[outer.clone(), inner.clone()])
    }

    fn rename(&self, r: &Renaming) -> Self {
        self.rename_with(&|i| r.map[i])
    }

    fn rename_with(&self, map: &dyn Fn(usize) -> usize) -> Self {
        self.traverse(0, &|j, k| {
            if j < k {
                Term::Var(j)
            } else {
                Term::Var(map(j - k) + k)
            }
        })
    }

    /// Does the free variable `index` occur?
    fn mentions(&self, index: usize) -> bool {
        let hit = std::cell::Cell::new(false);
        self.traverse(0, &|j, k| {
            if j >= k && j - k == index {
                hit.set(true);
            }
            Term::Var(j)
        });
        hit.get()
    }

    /// One past the largest free variable index, 0 if closed.
    fn scope_bound(&self) -> usize {
        let bound = std::cell::Cell::new(0);
        self.traverse(0, &|j, k| {
            if j >= k {
                bound.set(bound.get().max(j - k + 1));
            }
            Term::Var(j)
        });
        bound.get()
    }
}

impl Syntax for Term {
    fn traverse(&self, depth: usize, f: &dyn Fn(usize, usize) -> Term) -> Term {
        match self {
            Term::Var(j) => f(*j, depth),
            Term::Lam(b) => Term::lam(b.traverse(depth + 1, f)),
            Term::App(g, a) => Term::app(g.traverse(depth, f), a.traverse(depth, f)),
            Term::Zero => Term::Zero,
            Term::Succ(p) => Term::succ(p.traverse(depth, f)),
            Term::NatInd {
                scrut,
                motive,
                zero,
                succ,
            } => Term::nat_ind(
                scrut.traverse(depth, f),
                motive.traverse(depth + 1, f),
                zero.traverse(depth, f),
                succ.traverse(depth + 2, f),
            ),
            Term::Const(c, args) => Term::Const(
                c.clone(),
                args.iter().map(|a| a.traverse(depth, f)).collect(),
            ),
        }
    }
}

impl Syntax for Ty {
    fn traverse(&self, depth: usize, f: &dyn Fn(usize, usize) -> Term) -> Ty {
        match self {
            Ty::Pi(a, b) => Ty::pi(a.traverse(depth, f), b.traverse(depth + 1, f)),
            Ty::Nat => Ty::Nat,
            Ty::Const(c, args) => Ty::Const(
                c.clone(),
                args.iter().map(|a| a.traverse(depth, f)).collect(),
            ),
        }
    }
}

/// Type of the successor case of `ind` with motive `motive` (scoped under
/// one `Nat` binder), in the context extended by the predecessor and the
/// recursive result: `motive[succ p]`.
pub fn ind_succ_type(motive: &Ty) -> Ty {
    motive.shift_from(1, 2).subst1(&Term::succ(Term::Var(1)))
}

/// Structural equality of de Bruijn trees, which is α-equivalence.
pub fn alpha_eq<T: PartialEq>(a: &T, b: &T) -> bool {
    a == b
}

/// A telescope: entry `k` (outermost first) is scoped in entries `0..k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Context {
    entries: Vec<Ty>,
}

impl Context {
    pub fn empty() -> Context {
        Context::default()
    }

    pub fn from_entries(entries: Vec<Ty>) -> Context {
        Context { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries outermost first, each scoped in its prefix.
    pub fn entries(&self) -> &[Ty] {
        &self.entries
    }

    pub fn extend(&self, ty: Ty) -> Context {
        let mut entries = self.entries.clone();
        entries.push(ty);
        Context { entries }
    }

    pub fn push(&mut self, ty: Ty) {
        self.entries.push(ty);
    }

    /// Type of variable `index`, weakened to be scoped in the whole context.
    pub fn lookup(&self, index: usize) -> Option<Ty> {
        let n = self.entries.len();
        (index < n).then(|| self.entries[n - 1 - index].shift(index + 1))
    }

    /// Every entry mentions only variables of its prefix.
    pub fn is_well_scoped(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(k, ty)| ty.scope_bound() <= k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenamingError {
    #[error("renaming map has length {found}, source context has length {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("variable {source_index} is sent to {target_index}, outside the target context")]
    OutOfRange {
        source_index: usize,
        target_index: usize,
    },
    #[error("variable {source_index} is sent to {target_index} whose type does not match")]
    TypeMismatch {
        source_index: usize,
        target_index: usize,
    },
}

/// Type-respecting map of variables: source index `i` goes to target index
/// `map[i]`. Weakening, exchange and contraction are all representable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Renaming {
    source: Context,
    target: Context,
    map: Vec<usize>,
}

impl Renaming {
    pub fn new(
        source: Context,
        target: Context,
        map: Vec<usize>,
    ) -> Result<Renaming, RenamingError> {
        if map.len() != source.len() {
            return Err(RenamingError::LengthMismatch {
                expected: source.len(),
                found: map.len(),
            });
        }
        for (i, &j) in map.iter().enumerate() {
            let Some(target_ty) = target.lookup(j) else {
                return Err(RenamingError::OutOfRange {
                    source_index: i,
                    target_index: j,
                });
            };
            let source_ty = source
                .lookup(i)
                .expect("index within source")
                .rename_with(&|v| map[v]);
            if !alpha_eq(&source_ty, &target_ty) {
                return Err(RenamingError::TypeMismatch {
                    source_index: i,
                    target_index: j,
                });
            }
        }
        Ok(Renaming {
            source,
            target,
            map,
        })
    }

    pub fn identity(ctx: &Context) -> Renaming {
        Renaming {
            source: ctx.clone(),
            target: ctx.clone(),
            map: (0..ctx.len()).collect(),
        }
    }

    /// `ctx` into `ctx, extra...`.
    pub fn weakening(ctx: &Context, extra: &[Ty]) -> Renaming {
        let mut target = ctx.clone();
        for ty in extra {
            target.push(ty.clone());
        }
        Renaming {
            source: ctx.clone(),
            target,
            map: (0..ctx.len()).map(|i| i + extra.len()).collect(),
        }
    }

    pub fn source(&self) -> &Context {
        &self.source
    }

    pub fn target(&self) -> &Context {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `self` after `first`: sends `i` to `self.map[first.map[i]]`.
    pub fn compose(&self, first: &Renaming) -> Renaming {
        assert_eq!(first.target, self.source, "renamings are not composable");
        Renaming {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&j| self.map[j]).collect(),
        }
    }

    /// Extends the renaming under a binder of type `ty` (scoped in source).
    pub fn lift(&self, ty: &Ty) -> Renaming {
        let mut map = Vec::with_capacity(self.map.len() + 1);
        map.push(0);
        map.extend(self.map.iter().map(|j| j + 1));
        Renaming {
            source: self.source.extend(ty.clone()),
            target: self.target.extend(ty.rename(self)),
            map,
        }
    }
}
