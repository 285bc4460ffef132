//! Exhaustive enumeration of well-typed terms by size.
//!
//! All raw terms of a given node count are produced and then filtered by the
//! type checker, so completeness does not depend on a separate typing
//! discipline. Practical up to size 6 or 7.

use std::collections::HashMap;
use std::rc::Rc;

use crate::check;
use crate::signature::Signature;
use crate::syntax::{Context, Name, Term, Ty};

struct Raw {
    term_consts: Vec<(Name, usize)>,
    type_consts: Vec<(Name, usize)>,
    terms: HashMap<(usize, usize), Rc<Vec<Term>>>,
    tys: HashMap<(usize, usize), Rc<Vec<Ty>>>,
}

/// All ways to write `total` as an ordered sum of `parts` positive sizes.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl Raw {
    fn new(sig: &Signature) -> Raw {
        Raw {
            term_consts: sig
                .term_constants()
                .map(|(c, p, _)| (c.clone(), p.len()))
                .collect(),
            type_consts: sig
                .type_constants()
                .map(|(c, p)| (c.clone(), p.len()))
                .collect(),
            terms: HashMap::new(),
            tys: HashMap::new(),
        }
    }

    fn arg_lists(&mut self, total: usize, arity: usize, depth: usize) -> Vec<Vec<Term>> {
        let mut out = Vec::new();
        for sizes in compositions(total, arity) {
            let mut partial: Vec<Vec<Term>> = vec![vec![]];
            for s in sizes {
                let choices = self.terms(s, depth);
                partial = partial
                    .into_iter()
                    .flat_map(|p| {
                        choices.iter().map(move |c| {
                            let mut p = p.clone();
                            p.push(c.clone());
                            p
                        })
                    })
                    .collect();
            }
            out.extend(partial);
        }
        out
    }

    /// Raw terms of exactly `size` nodes with free variables below `depth`.
    fn terms(&mut self, size: usize, depth: usize) -> Rc<Vec<Term>> {
        if let Some(v) = self.terms.get(&(size, depth)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.push(Term::Zero);
            out.extend((0..depth).map(Term::Var));
        }
        if size >= 2 {
            out.extend(self.terms(size - 1, depth).iter().cloned().map(Term::succ));
            out.extend(
                self.terms(size - 1, depth + 1)
                    .iter()
                    .cloned()
                    .map(Term::lam),
            );
            for fs in 1..size - 1 {
                let fs_terms = self.terms(fs, depth);
                let as_terms = self.terms(size - 1 - fs, depth);
                for f in fs_terms.iter() {
                    for a in as_terms.iter() {
                        out.push(Term::app(f.clone(), a.clone()));
                    }
                }
            }
        }
        for (c, arity) in self.term_consts.clone() {
            if size > arity {
                for args in self.arg_lists(size - 1, arity, depth) {
                    out.push(Term::Const(c.clone(), args));
                }
            }
        }
        if size >= 5 {
            for parts in compositions(size - 1, 4) {
                let scruts = self.terms(parts[0], depth);
                let motives = self.tys(parts[1], depth + 1);
                let zeros = self.terms(parts[2], depth);
                let succs = self.terms(parts[3], depth + 2);
                for s in scruts.iter() {
                    for m in motives.iter() {
                        for z in zeros.iter() {
                            for c in succs.iter() {
                                out.push(Term::nat_ind(s.clone(), m.clone(), z.clone(), c.clone()));
                            }
                        }
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.terms.insert((size, depth), out.clone());
        out
    }

    fn tys(&mut self, size: usize, depth: usize) -> Rc<Vec<Ty>> {
        if let Some(v) = self.tys.get(&(size, depth)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.push(Ty::Nat);
        }
        for (c, arity) in self.type_consts.clone() {
            if size > arity {
                for args in self.arg_lists(size - 1, arity, depth) {
                    out.push(Ty::Const(c.clone(), args));
                }
            }
        }
        for ds in 1..size.saturating_sub(1) {
            let doms = self.tys(ds, depth);
            let cods = self.tys(size - 1 - ds, depth + 1);
            for d in doms.iter() {
                for c in cods.iter() {
                    out.push(Ty::pi(d.clone(), c.clone()));
                }
            }
        }
        let out = Rc::new(out);
        self.tys.insert((size, depth), out.clone());
        out
    }
}

/// Every term of size at most `max_size` that checks at `ty` in `ctx`,
/// smallest first, without duplicates. Within a size the order is `Zero`,
/// variables, `Succ`, `Lam`, applications, constants, `ind`.
pub fn enum_terms(sig: &Signature, ctx: &Context, ty: &Ty, max_size: usize) -> Vec<Term> {
    let mut raw = Raw::new(sig);
    let mut out = Vec::new();
    for size in 1..=max_size {
        for t in raw.terms(size, ctx.len()).iter() {
            if check::check(sig, ctx, t, ty).is_ok() {
                out.push(t.clone());
            }
        }
    }
    out
}
