//! Random generation of well-typed terms, types and contexts.

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::oracle::{self, DEFAULT_FUEL};
use crate::signature::Signature;
use crate::syntax::{self, alpha_eq, Context, Syntax, Term, Ty};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no inhabitant found within the size bound")]
pub struct GenerationStuck;

/// Work limit per top-level request; failed branches count against it.
const WORK: usize = 20_000;

/// Definitional equality of types, decided by the rewriting oracle so that
/// generation never depends on the evaluator under test.
pub fn types_equal(sig: &Signature, ctx: &Context, a: &Ty, b: &Ty) -> bool {
    if a == b {
        return true;
    }
    match (
        oracle::rw_normalize_ty(sig, ctx, a, DEFAULT_FUEL),
        oracle::rw_normalize_ty(sig, ctx, b, DEFAULT_FUEL),
    ) {
        (Ok(a), Ok(b)) => alpha_eq(&a, &b),
        _ => false,
    }
}

/// Number of directly nested Pi binders on the spine of `ty`.
fn pi_depth(ty: &Ty) -> usize {
    match ty {
        Ty::Pi(_, b) => 1 + pi_depth(b),
        _ => 0,
    }
}

fn same_head(a: &Ty, b: &Ty) -> bool {
    match (a, b) {
        (Ty::Pi(..), Ty::Pi(..)) | (Ty::Nat, Ty::Nat) => true,
        (Ty::Const(c, _), Ty::Const(d, _)) => c == d,
        _ => false,
    }
}

#[derive(Clone, Copy)]
enum Rule {
    Lam,
    Zero,
    Succ,
    Head,
    Ind,
    Redex,
}

/// Head of an elimination spine: a variable or a term constant.
#[derive(Clone)]
enum Head {
    Var(usize, Ty),
    Const(syntax::Name, Vec<Ty>, Ty),
}

struct Gen<'a, R: Rng + ?Sized> {
    sig: &'a Signature,
    rng: &'a mut R,
    work: usize,
}

impl<R: Rng + ?Sized> Gen<'_, R> {
    fn tick(&mut self) -> bool {
        if self.work == 0 {
            return false;
        }
        self.work -= 1;
        true
    }

    /// Picks rules in weighted random order without replacement.
    fn order(&mut self, mut rules: Vec<(Rule, u32)>) -> Vec<Rule> {
        let mut out = Vec::with_capacity(rules.len());
        while !rules.is_empty() {
            let total: u32 = rules.iter().map(|r| r.1).sum();
            let mut pick = self.rng.gen_range(0..total);
            let idx = rules
                .iter()
                .position(|r| {
                    if pick < r.1 {
                        true
                    } else {
                        pick -= r.1;
                        false
                    }
                })
                .expect("pick below total");
            out.push(rules.swap_remove(idx).0);
        }
        out
    }

    /// A size budget in `1..=max`.
    fn pick(&mut self, max: usize) -> Option<usize> {
        (max >= 1).then(|| self.rng.gen_range(1..=max))
    }

    fn term(&mut self, ctx: &Context, ty: &Ty, budget: usize) -> Option<Term> {
        if budget == 0 || !self.tick() {
            return None;
        }
        let mut rules = vec![(Rule::Head, 3)];
        match ty {
            Ty::Pi(..) if budget >= 2 => rules.push((Rule::Lam, 8)),
            Ty::Nat => {
                rules.push((Rule::Zero, 2));
                if budget >= 2 {
                    rules.push((Rule::Succ, 3));
                }
            }
            _ => {}
        }
        if budget >= 5 && pi_depth(ty) <= 1 {
            rules.push((Rule::Ind, 2));
        }
        if budget >= 4 {
            rules.push((Rule::Redex, 1));
        }
        for rule in self.order(rules) {
            let found = match rule {
                Rule::Lam => {
                    let Ty::Pi(dom, cod) = ty else { unreachable!() };
                    let inner = ctx.extend((**dom).clone());
                    self.term(&inner, cod, budget - 1).map(Term::lam)
                }
                Rule::Zero => Some(Term::Zero),
                Rule::Succ => self.term(ctx, &Ty::Nat, budget - 1).map(Term::succ),
                Rule::Head => self.spine(ctx, ty, budget),
                Rule::Ind => self.ind(ctx, ty, budget),
                Rule::Redex => self.redex(ctx, ty, budget),
            };
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn heads(&self, ctx: &Context) -> Vec<Head> {
        let vars = (0..ctx.len()).map(|i| Head::Var(i, ctx.lookup(i).expect("in range")));
        let consts = self
            .sig
            .term_constants()
            .map(|(c, params, result)| Head::Const(c.clone(), params.to_vec(), result.clone()));
        vars.chain(consts).collect()
    }

    /// An elimination spine whose result type matches `ty`.
    fn spine(&mut self, ctx: &Context, ty: &Ty, budget: usize) -> Option<Term> {
        let mut plans = Vec::new();
        for head in self.heads(ctx) {
            let (arity, mut rest) = match &head {
                Head::Var(_, t) => (0, t.clone()),
                Head::Const(_, params, result) => (params.len(), result.clone()),
            };
            let mut extra = 0;
            loop {
                // Size: the head, one node per extra application, one per argument.
                let min_size = 1 + arity + 2 * extra;
                if min_size > budget {
                    break;
                }
                if same_head(&rest, ty) {
                    plans.push((head.clone(), extra));
                }
                match rest {
                    Ty::Pi(_, b) => {
                        rest = (*b).clone();
                        extra += 1;
                    }
                    _ => break,
                }
            }
        }
        plans.shuffle(self.rng);
        for (head, extra) in plans {
            if let Some(t) = self.fill_spine(ctx, ty, &head, extra, budget) {
                return Some(t);
            }
            if self.work == 0 {
                break;
            }
        }
        None
    }

    fn fill_spine(
        &mut self,
        ctx: &Context,
        ty: &Ty,
        head: &Head,
        extra: usize,
        budget: usize,
    ) -> Option<Term> {
        let arity = match head {
            Head::Var(..) => 0,
            Head::Const(_, params, _) => params.len(),
        };
        let mut remaining = budget - 1 - extra;
        let total = arity + extra;
        let mut args = Vec::with_capacity(total);
        let next = |g: &mut Self, ctx: &Context, dom: &Ty, left: usize, remaining: &mut usize| {
            let max = *remaining - left;
            let b = g.rng.gen_range(1..=max);
            let a = g.term(ctx, dom, b)?;
            *remaining -= a.size();
            Some(a)
        };
        let (mut term, mut cur) = match head {
            Head::Var(i, t) => (Term::Var(*i), t.clone()),
            Head::Const(c, params, result) => {
                for (k, p) in params.iter().enumerate() {
                    let dom = p.subst_all(&args);
                    let a = next(self, ctx, &dom, total - k - 1, &mut remaining)?;
                    args.push(a);
                }
                (
                    Term::Const(c.clone(), args.clone()),
                    result.subst_all(&args),
                )
            }
        };
        for k in 0..extra {
            let Ty::Pi(dom, cod) = &cur else { return None };
            let a = next(self, ctx, dom, extra - k - 1, &mut remaining)?;
            cur = cod.subst1(&a);
            term = Term::app(term, a);
        }
        types_equal(self.sig, ctx, &cur, ty).then_some(term)
    }

    /// `ind` with a motive that instantiates to `ty`: either constant, or
    /// abstracting a `Nat` variable of the context that `ty` mentions.
    fn ind(&mut self, ctx: &Context, ty: &Ty, budget: usize) -> Option<Term> {
        let dependent: Vec<usize> = (0..ctx.len())
            .filter(|&i| ty.mentions(i) && ctx.lookup(i) == Some(Ty::Nat))
            .collect();
        let (motive, scrut) = match dependent.choose(self.rng) {
            Some(&i) if self.rng.gen_bool(0.7) => {
                let motive = ty.shift(1).traverse(0, &|j, k| {
                    if j >= k && j - k == i + 1 {
                        Term::Var(k)
                    } else {
                        Term::Var(j)
                    }
                });
                (motive, Some(Term::Var(i)))
            }
            _ => (ty.shift(1), None),
        };
        let mut remaining = budget.checked_sub(1 + motive.size())?;
        let scrut = match scrut {
            Some(s) => s,
            None => {
                let b = self.pick(remaining.checked_sub(2)?)?;
                self.term(ctx, &Ty::Nat, b)?
            }
        };
        remaining = remaining.checked_sub(scrut.size())?;
        let b = self.pick(remaining.checked_sub(1)?)?;
        let zero = self.term(ctx, &motive.subst1(&Term::Zero), b)?;
        remaining = remaining.checked_sub(zero.size())?;
        let succ_ctx = ctx.extend(Ty::Nat).extend(motive.clone());
        let succ = self.term(&succ_ctx, &syntax::ind_succ_type(&motive), remaining)?;
        Some(Term::nat_ind(scrut, motive, zero, succ))
    }

    /// `(\x. body) arg` with an argument whose type can be inferred.
    fn redex(&mut self, ctx: &Context, ty: &Ty, budget: usize) -> Option<Term> {
        let vars: Vec<usize> = (0..ctx.len()).collect();
        let (arg, arg_ty) = match vars.choose(self.rng) {
            Some(&i) if self.rng.gen_bool(0.5) => (Term::Var(i), ctx.lookup(i)?),
            _ => {
                let b = self.rng.gen_range(1..=budget - 3);
                let a = self.term(ctx, &Ty::Nat, b)?;
                (a, Ty::Nat)
            }
        };
        let body_budget = budget.checked_sub(2 + arg.size())?;
        let body = self.term(&ctx.extend(arg_ty), &ty.shift(1), body_budget)?;
        Some(Term::app(Term::lam(body), arg))
    }

    fn ty(&mut self, ctx: &Context, budget: usize) -> Ty {
        let mut choices = vec![(0u8, 4u32)];
        if budget >= 3 {
            choices.push((1, 2));
        }
        let consts: Vec<_> = self
            .sig
            .type_constants()
            .map(|(c, params)| (c.clone(), params.to_vec()))
            .collect();
        if !consts.is_empty() {
            choices.push((2, 4));
        }
        let total: u32 = choices.iter().map(|c| c.1).sum();
        let mut pick = self.rng.gen_range(0..total);
        let choice = choices
            .iter()
            .find(|c| {
                if pick < c.1 {
                    true
                } else {
                    pick -= c.1;
                    false
                }
            })
            .expect("pick below total")
            .0;
        match choice {
            1 => {
                let b = self.rng.gen_range(1..=budget - 2);
                let dom = self.ty(ctx, b);
                let rest = budget.saturating_sub(1 + dom.size()).max(1);
                let cod = self.ty(&ctx.extend(dom.clone()), rest);
                Ty::pi(dom, cod)
            }
            2 => {
                let (c, params) = consts.choose(self.rng).expect("nonempty").clone();
                let mut args = Vec::with_capacity(params.len());
                for p in &params {
                    let dom = p.subst_all(&args);
                    match self.term(ctx, &dom, budget.saturating_sub(1).max(1)) {
                        Some(a) => args.push(a),
                        None => return Ty::Nat,
                    }
                }
                Ty::Const(c, args)
            }
            _ => Ty::Nat,
        }
    }
}

/// A random term of size at most `size` checking at `ty` in `ctx`.
pub fn gen_term<R: Rng + ?Sized>(
    sig: &Signature,
    ctx: &Context,
    ty: &Ty,
    size: usize,
    rng: &mut R,
) -> Result<Term, GenerationStuck> {
    let mut g = Gen {
        sig,
        rng,
        work: WORK,
    };
    g.term(ctx, ty, size).ok_or(GenerationStuck)
}

/// A random well-formed type of size roughly at most `size`.
pub fn gen_ty<R: Rng + ?Sized>(sig: &Signature, ctx: &Context, size: usize, rng: &mut R) -> Ty {
    let mut g = Gen {
        sig,
        rng,
        work: WORK,
    };
    g.ty(ctx, size.max(1))
}

/// A random well-formed context of length `len`. Some entries repeat an
/// earlier type so that contractions are possible.
pub fn gen_context<R: Rng + ?Sized>(sig: &Signature, len: usize, rng: &mut R) -> Context {
    let mut ctx = Context::empty();
    for k in 0..len {
        let ty = if k > 0 && rng.gen_bool(0.25) {
            let p = rng.gen_range(0..k);
            ctx.entries()[p].shift(k - p)
        } else {
            let size = rng.gen_range(1..=4);
            gen_ty(sig, &ctx, size, rng)
        };
        ctx.push(ty);
    }
    ctx
}
