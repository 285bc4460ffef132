//! Pretty printing in the concrete syntax accepted by the parser.
//!
//! Bound variables get fresh names `x0`, `x1`, ... avoiding the names already
//! in scope. Binders whose variable is never used print as `_` where the
//! grammar allows it.

use crate::normal::{NfTm, NfTy};
use crate::syntax::{Syntax, Term, Ty};

const TOP: u8 = 0;
const APP: u8 = 1;
const ATOM: u8 = 2;

struct Printer {
    /// Names in scope, outermost first.
    names: Vec<String>,
}

impl Printer {
    fn fresh(&self) -> String {
        (0..)
            .map(|k| format!("x{k}"))
            .find(|x| !self.names.contains(x))
            .expect("infinitely many candidates")
    }

    fn var(&self, i: usize) -> String {
        match self.names.len().checked_sub(i + 1) {
            Some(pos) => self.names[pos].clone(),
            None => format!("#{i}"),
        }
    }

    fn under<R>(&mut self, name: String, f: impl FnOnce(&mut Self) -> R) -> R {
        self.names.push(name);
        let r = f(self);
        self.names.pop();
        r
    }

    fn binder_for(&self, used: bool) -> String {
        if used {
            self.fresh()
        } else {
            "_".to_string()
        }
    }

    fn ty(&mut self, ty: &Ty, prec: u8) -> String {
        let (s, level) = match ty {
            Ty::Nat => ("Nat".to_string(), ATOM),
            Ty::Const(c, args) if args.is_empty() => (c.to_string(), ATOM),
            Ty::Const(c, args) => {
                let mut s = c.to_string();
                for a in args {
                    s.push(' ');
                    s.push_str(&self.tm(a, ATOM));
                }
                (s, APP)
            }
            Ty::Pi(dom, cod) if cod.mentions(0) => {
                let x = self.fresh();
                let dom = self.ty(dom, TOP);
                let cod = self.under(x.clone(), |p| p.ty(cod, TOP));
                (format!("({x} : {dom}) -> {cod}"), TOP)
            }
            Ty::Pi(dom, cod) => {
                let dom = self.ty(dom, APP);
                let cod = self.under("_".to_string(), |p| p.ty(cod, TOP));
                (format!("{dom} -> {cod}"), TOP)
            }
        };
        if level < prec {
            format!("({s})")
        } else {
            s
        }
    }

    fn tm(&mut self, t: &Term, prec: u8) -> String {
        if let Some(n) = t.as_numeral() {
            return n.to_string();
        }
        let (s, level) = match t {
            Term::Var(i) => (self.var(*i), ATOM),
            Term::Zero => ("0".to_string(), ATOM),
            Term::Lam(body) => {
                let x = self.fresh();
                let body = self.under(x.clone(), |p| p.tm(body, TOP));
                (format!("\\{x}. {body}"), TOP)
            }
            Term::App(f, a) => {
                let f = self.tm(f, APP);
                let a = self.tm(a, ATOM);
                (format!("{f} {a}"), APP)
            }
            Term::Succ(p) => (format!("succ {}", self.tm(p, ATOM)), APP),
            Term::Const(c, args) if args.is_empty() => (c.to_string(), ATOM),
            Term::Const(c, args) => {
                let mut s = c.to_string();
                for a in args {
                    s.push(' ');
                    s.push_str(&self.tm(a, ATOM));
                }
                (s, APP)
            }
            Term::NatInd {
                scrut,
                motive,
                zero,
                succ,
            } => {
                let scrut = self.tm(scrut, TOP);
                let n = self.binder_for(motive.mentions(0));
                let motive = self.under(n.clone(), |p| p.ty(motive, TOP));
                let zero = self.tm(zero, TOP);
                let pred = self.binder_for(succ.mentions(1));
                let case = self.under(pred.clone(), |p| {
                    let rec = p.binder_for(succ.mentions(0));
                    let body = p.under(rec.clone(), |p| p.tm(succ, TOP));
                    format!("{rec}. {body}")
                });
                (
                    format!("ind({scrut}; {n}. {motive}; {zero}; {pred} {case})"),
                    ATOM,
                )
            }
        };
        if level < prec {
            format!("({s})")
        } else {
            s
        }
    }
}

/// Prints a type whose free variables are named by `names` (outermost first).
pub fn ty_to_string(ty: &Ty, names: &[String]) -> String {
    Printer {
        names: names.to_vec(),
    }
    .ty(ty, TOP)
}

pub fn term_to_string(t: &Term, names: &[String]) -> String {
    Printer {
        names: names.to_vec(),
    }
    .tm(t, TOP)
}

pub fn print_nf(nf: &NfTm, names: &[String]) -> String {
    term_to_string(&nf.erase(), names)
}

pub fn print_nf_ty(nf: &NfTy, names: &[String]) -> String {
    ty_to_string(&nf.erase(), names)
}
