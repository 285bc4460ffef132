//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use tt_core::domain::{var_value, BiClosure, Env, Neutral, SemTy, TyClosure, Value};
use tt_core::nbe::{self, apply, eval, eval_ty, id_env, nat_ind, nfty, reflect, reify, reify_ne};
use tt_core::normal::{self, NeTm, NfTm, NfTy};
use tt_core::oracle::{self, DEFAULT_FUEL};
use tt_core::surface::{elaborate, elaborate_closed, parse_expr, parse_file};
use tt_core::syntax::ind_succ_type;
use tt_core::testkit::{
    self, check_case, check_renaming, enum_terms, gen_case, gen_context, gen_renaming, gen_term,
    gen_ty,
};
use tt_core::{Context, Name, Signature, Syntax, Term, Ty};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn a() -> Ty {
    Ty::constant("A", vec![])
}

fn b(t: Term) -> Ty {
    Ty::constant("B", vec![t])
}

fn ne_a(i: usize) -> NfTm {
    NfTm::NeConst(Name::new("A"), vec![], NeTm::Var(i))
}

fn ne_nat(i: usize) -> NfTm {
    NfTm::NeNat(NeTm::Var(i))
}

/// `f a` at `B a` for a variable `a : A` at index `i`.
fn f_of(i: usize) -> NfTm {
    NfTm::NeConst(
        Name::new("B"),
        vec![ne_a(i)],
        NeTm::Const(Name::new("f"), vec![ne_a(i)]),
    )
}

struct Golden {
    name: &'static str,
    ctx: Vec<Ty>,
    ty: Ty,
    term: Term,
    expected: NfTm,
}

fn golden_cases() -> Vec<Golden> {
    let nat_nat = Ty::arrow(Ty::Nat, Ty::Nat);
    let add_ind = |scrut: Term| Term::nat_ind(scrut, Ty::Nat, Term::Zero, Term::succ(Term::Var(0)));
    let stuck_add = |i: usize| NeTm::NatInd {
        scrut: Box::new(NeTm::Var(i)),
        motive: Box::new(NfTy::Nat),
        zero: Box::new(NfTm::Zero),
        succ: Box::new(NfTm::succ(ne_nat(0))),
    };
    vec![
        Golden {
            name: "identity applied",
            ctx: vec![],
            ty: Ty::Nat,
            term: Term::app(Term::lam(Term::Var(0)), Term::Zero),
            expected: NfTm::Zero,
        },
        Golden {
            name: "successor body",
            ctx: vec![],
            ty: Ty::Nat,
            term: Term::app(Term::lam(Term::succ(Term::Var(0))), Term::numeral(1)),
            expected: NfTm::numeral(2),
        },
        Golden {
            name: "redex under a binder",
            ctx: vec![],
            ty: nat_nat.clone(),
            term: Term::lam(Term::app(Term::lam(Term::Var(0)), Term::Var(0))),
            expected: NfTm::lam(ne_nat(0)),
        },
        Golden {
            name: "substitution avoids capture",
            ctx: vec![Ty::Nat],
            ty: nat_nat.clone(),
            term: Term::app(Term::lam(Term::lam(Term::Var(1))), Term::Var(0)),
            expected: NfTm::lam(ne_nat(1)),
        },
        Golden {
            name: "ind on zero returns the zero case",
            ctx: vec![],
            ty: Ty::Nat,
            term: Term::nat_ind(
                Term::Zero,
                Ty::Nat,
                Term::numeral(3),
                Term::succ(Term::Var(0)),
            ),
            expected: NfTm::numeral(3),
        },
        Golden {
            name: "ind on succ applies the successor case",
            ctx: vec![],
            ty: Ty::Nat,
            term: Term::nat_ind(
                Term::numeral(1),
                Ty::Nat,
                Term::Zero,
                Term::succ(Term::succ(Term::Var(0))),
            ),
            expected: NfTm::numeral(2),
        },
        Golden {
            name: "successor case sees the predecessor",
            ctx: vec![],
            ty: Ty::Nat,
            term: Term::nat_ind(Term::numeral(3), Ty::Nat, Term::Zero, Term::Var(1)),
            expected: NfTm::numeral(2),
        },
        Golden {
            name: "ind on a variable is neutral",
            ctx: vec![Ty::Nat],
            ty: Ty::Nat,
            term: add_ind(Term::Var(0)),
            expected: NfTm::NeNat(stuck_add(0)),
        },
        Golden {
            name: "ind on succ of a variable unfolds once",
            ctx: vec![Ty::Nat],
            ty: Ty::Nat,
            term: add_ind(Term::succ(Term::Var(0))),
            expected: NfTm::succ(NfTm::NeNat(stuck_add(0))),
        },
        Golden {
            name: "ind at a function motive",
            ctx: vec![],
            ty: nat_nat.clone(),
            term: Term::nat_ind(
                Term::numeral(2),
                nat_nat.shift(1),
                Term::lam(Term::Var(0)),
                Term::lam(Term::succ(Term::app(Term::Var(1), Term::Var(0)))),
            ),
            expected: NfTm::lam(NfTm::succ(NfTm::succ(ne_nat(0)))),
        },
        Golden {
            name: "term constant at an indexed type",
            ctx: vec![a()],
            ty: b(Term::Var(0)),
            term: Term::constant("f", vec![Term::Var(0)]),
            expected: f_of(0),
        },
        Golden {
            name: "term constant is eta-long",
            ctx: vec![],
            ty: Ty::pi(a(), b(Term::Var(0))),
            term: Term::lam(Term::constant("f", vec![Term::Var(0)])),
            expected: NfTm::lam(f_of(0)),
        },
        Golden {
            name: "redex feeding a constant",
            ctx: vec![a()],
            ty: b(Term::Var(0)),
            term: Term::app(
                Term::lam(Term::constant("f", vec![Term::Var(0)])),
                Term::Var(0),
            ),
            expected: f_of(0),
        },
        Golden {
            name: "function variable is eta-expanded",
            ctx: vec![nat_nat.clone()],
            ty: nat_nat.clone(),
            term: Term::Var(0),
            expected: NfTm::lam(NfTm::NeNat(NeTm::app(NeTm::Var(1), ne_nat(0)))),
        },
        Golden {
            name: "ind at a constant motive",
            ctx: vec![a()],
            ty: b(Term::Var(0)),
            term: Term::nat_ind(
                Term::numeral(2),
                b(Term::Var(1)),
                Term::constant("f", vec![Term::Var(0)]),
                Term::Var(0),
            ),
            expected: f_of(0),
        },
    ]
}

fn criterion_1() -> Outcome {
    let sig = Signature::abf();
    let cases = golden_cases();
    for g in &cases {
        let ctx = Context::from_entries(g.ctx.clone());
        tt_core::check(&sig, &ctx, &g.term, &g.ty).map_err(|e| format!("{}: {e}", g.name))?;
        let nf = nbe::normalize_tm(&sig, &ctx, &g.ty, &g.term)
            .map_err(|e| format!("{}: {e}", g.name))?;
        ensure(nf == g.expected, || format!("{}: got {nf:?}", g.name))?;
    }
    Ok(format!("{} cases", cases.len()))
}

fn walkthrough(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../walkthrough")
        .join(name)
}

fn arith_sig() -> Result<Signature, String> {
    let src = std::fs::read_to_string(walkthrough("arith.tt")).map_err(|e| e.to_string())?;
    let decls = parse_file(&src).map_err(|e| e.to_string())?;
    elaborate(&decls).map_err(|e| e.to_string())
}

fn criterion_2() -> Outcome {
    let sig = arith_sig()?;
    let ctx = Context::empty();
    let mut count = 0;
    for m in 0..=8u64 {
        for n in 0..=8u64 {
            for (op, value) in [("add", m + n), ("mul", m * n)] {
                let e = parse_expr(&format!("{op} {m} {n}")).map_err(|e| e.to_string())?;
                let (t, ty) = elaborate_closed(&sig, &e, None).map_err(|e| e.to_string())?;
                let rewritten = oracle::rw_normalize(&sig, &ctx, &ty, &t, DEFAULT_FUEL)
                    .map_err(|e| e.to_string())?;
                let expected = normal::reconstruct_tm(&sig, &ctx, &ty, &rewritten)
                    .ok_or_else(|| format!("oracle output for {op} {m} {n} is not normal"))?;
                ensure(rewritten == Term::numeral(value), || {
                    format!("oracle: {op} {m} {n}")
                })?;
                let nf = nbe::normalize_tm(&sig, &ctx, &ty, &t).map_err(|e| e.to_string())?;
                ensure(nf == expected, || {
                    format!("{op} {m} {n} normalized to {nf:?}")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} cases"))
}

const GENERATED_PER_SIG: u64 = 600;

/// The generated cases of criterion 3, deterministic per seed.
fn generated_cases() -> Vec<(Signature, testkit::Case)> {
    let mut out = Vec::new();
    for sig in [Signature::empty(), Signature::abf()] {
        for seed in 0..GENERATED_PER_SIG {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let case = gen_case(&sig, 3, 12, &mut rng);
            out.push((sig.clone(), case));
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let cases = generated_cases();
    let mut redexes = 0;
    for (sig, case) in &cases {
        ensure(case.term.size() <= 12 && case.ctx.len() <= 3, || {
            format!("out of bounds: {case:?}")
        })?;
        let outcome =
            check_case(sig, case, DEFAULT_FUEL).map_err(|f| format!("{f} for {case:?}"))?;
        if outcome.nf.erase() != case.term {
            redexes += 1;
        }
    }
    Ok(format!(
        "{} terms, {redexes} not already normal",
        cases.len()
    ))
}

fn enumerated() -> (Signature, Context, Vec<Term>) {
    let sig = Signature::abf();
    let ctx = Context::from_entries(vec![Ty::Nat]);
    let terms = enum_terms(&sig, &ctx, &Ty::Nat, 6);
    (sig, ctx, terms)
}

fn criterion_4() -> Outcome {
    let (sig, ctx, terms) = enumerated();
    let mut by_oracle: HashMap<Term, NfTm> = HashMap::new();
    let mut by_nf: HashMap<NfTm, Term> = HashMap::new();
    for t in &terms {
        let o = oracle::rw_normalize(&sig, &ctx, &Ty::Nat, t, DEFAULT_FUEL)
            .map_err(|e| e.to_string())?;
        let nf = nbe::normalize_tm(&sig, &ctx, &Ty::Nat, t).map_err(|e| e.to_string())?;
        let class_nf = by_oracle.entry(o.clone()).or_insert_with(|| nf.clone());
        ensure(*class_nf == nf, || {
            format!("{t:?} normalizes differently from its class")
        })?;
        let class = by_nf.entry(nf).or_insert_with(|| o.clone());
        ensure(*class == o, || {
            format!("{t:?} shares a normal form with another class")
        })?;
    }
    Ok(format!(
        "{} terms in {} classes",
        terms.len(),
        by_oracle.len()
    ))
}

fn criterion_5() -> Outcome {
    let mut pairs = 0;
    let mut seed = 0;
    while pairs < 300 {
        let sig = if seed % 2 == 0 {
            Signature::abf()
        } else {
            Signature::empty()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        seed += 1;
        let r = gen_renaming(&sig, 3, &mut rng);
        let ty = gen_ty(&sig, r.source(), 3, &mut rng);
        if let Ok(t) = gen_term(&sig, r.source(), &ty, 10, &mut rng) {
            check_renaming(&sig, &r, &ty, &t)
                .map_err(|f| format!("{f}: {t:?} under {:?}", r.map()))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs from {seed} seeds"))
}

/// A generated context ending in `last`, with its identity environment.
struct Scene {
    sig: Signature,
    ctx: Context,
    env: Env,
    rng: ChaCha8Rng,
}

impl Scene {
    fn new(seed: u64, last: &[Ty]) -> Scene {
        let sig = Signature::abf();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ctx = gen_context(&sig, (seed % 3) as usize, &mut rng);
        for t in last {
            ctx.push(t.shift(0));
        }
        let env = id_env(&sig, &ctx).expect("generated context evaluates");
        Scene { sig, ctx, env, rng }
    }

    fn depth(&self) -> usize {
        self.ctx.len()
    }

    fn term(&mut self, ty: &Ty, size: usize) -> Option<Term> {
        gen_term(&self.sig, &self.ctx, ty, size, &mut self.rng).ok()
    }

    fn eval(&self, t: &Term) -> Value {
        eval(&self.sig, &self.env, t).expect("well-typed term evaluates")
    }

    fn eval_ty(&self, ty: &Ty) -> SemTy {
        eval_ty(&self.sig, &self.env, ty).expect("well-formed type evaluates")
    }

    fn reify(&self, ty: &SemTy, v: &Value) -> Result<NfTm, String> {
        reify(&self.sig, self.depth(), ty, v).map_err(|e| e.to_string())
    }

    /// A neutral of type `ty`, from a generated term that evaluates to one.
    fn neutral(&mut self, ty: &Ty) -> Option<Neutral> {
        for _ in 0..20 {
            if let Some(t) = self.term(ty, 8) {
                if let Value::Ne(_, ne) = self.eval(&t) {
                    return Some((*ne).clone());
                }
            }
        }
        None
    }
}

/// Runs `check` on scenes with seeds 0.. until `needed` instantiations
/// were produced; `check` returns `Ok(false)` when the scene does not fit.
fn instances(
    needed: usize,
    mut check: impl FnMut(u64) -> Result<bool, String>,
) -> Result<usize, String> {
    let mut done = 0;
    for seed in 0..needed as u64 * 50 {
        if check(seed)? {
            done += 1;
            if done == needed {
                return Ok(done);
            }
        }
    }
    Err(format!("only {done} instantiations could be generated"))
}

fn same(lhs: Result<NfTm, String>, rhs: Result<NfTm, String>, what: &str) -> Result<bool, String> {
    let (l, r) = (lhs?, rhs?);
    ensure(l == r, || format!("{what}: {l:?} vs {r:?}"))?;
    Ok(true)
}

fn criterion_6() -> Outcome {
    const N: usize = 20;
    let nat_nat = Ty::arrow(Ty::Nat, Ty::Nat);
    let a_to_b = Ty::pi(a(), b(Term::Var(0)));
    let mut report = Vec::new();
    let mut record = |name: &str, r: Result<usize, String>| -> Result<(), String> {
        let n = r.map_err(|e| format!("{name}: {e}"))?;
        report.push(format!("{name} x{n}"));
        Ok(())
    };

    record(
        "nfty Nat",
        instances(N, |seed| {
            let s = Scene::new(seed, &[]);
            let got = nfty(&s.sig, s.depth(), &SemTy::Nat).map_err(|e| e.to_string())?;
            ensure(got == NfTy::Nat, || format!("{got:?}"))?;
            Ok(true)
        }),
    )?;

    record(
        "nfty Fun",
        instances(N, |seed| {
            let mut s = Scene::new(seed, &[]);
            let ty = gen_ty(&s.sig, &s.ctx, 5, &mut s.rng);
            let Ty::Pi(dom, cod) = &ty else {
                return Ok(false);
            };
            let d = s.depth();
            let lhs = nfty(&s.sig, d, &s.eval_ty(&ty)).map_err(|e| e.to_string())?;
            let dom_sem = s.eval_ty(dom);
            let inner = s.env.extend(var_value(&dom_sem, d));
            let cod_sem = eval_ty(&s.sig, &inner, cod).map_err(|e| e.to_string())?;
            let rhs = NfTy::fun(
                nfty(&s.sig, d, &dom_sem).map_err(|e| e.to_string())?,
                nfty(&s.sig, d + 1, &cod_sem).map_err(|e| e.to_string())?,
            );
            ensure(lhs == rhs, || format!("{lhs:?} vs {rhs:?}"))?;
            Ok(true)
        }),
    )?;

    record(
        "nfty ConstTy",
        instances(N, |seed| {
            let s = Scene::new(seed, &[]);
            let got = nfty(&s.sig, s.depth(), &s.eval_ty(&a())).map_err(|e| e.to_string())?;
            ensure(got == NfTy::Const(Name::new("A"), vec![]), || {
                format!("{got:?}")
            })?;
            Ok(true)
        }),
    )?;

    record(
        "nfty ConstTyI",
        instances(N, |seed| {
            let mut s = Scene::new(seed, &[a()]);
            let Some(arg) = s.term(&a(), 6) else {
                return Ok(false);
            };
            let lhs =
                nfty(&s.sig, s.depth(), &s.eval_ty(&b(arg.clone()))).map_err(|e| e.to_string())?;
            let rhs = NfTy::Const(
                Name::new("B"),
                vec![s.reify(&s.eval_ty(&a()), &s.eval(&arg))?],
            );
            ensure(lhs == rhs, || format!("{lhs:?} vs {rhs:?}"))?;
            Ok(true)
        }),
    )?;

    record(
        "reify zero",
        instances(N, |seed| {
            let s = Scene::new(seed, &[]);
            same(s.reify(&SemTy::Nat, &Value::Zero), Ok(NfTm::Zero), "zero")
        }),
    )?;

    record(
        "reify succ",
        instances(N, |seed| {
            let mut s = Scene::new(seed, &[Ty::Nat]);
            let Some(t) = s.term(&Ty::Nat, 8) else {
                return Ok(false);
            };
            let v = s.eval(&t);
            let lhs = s.reify(&SemTy::Nat, &Value::succ(v.clone()));
            let rhs = s.reify(&SemTy::Nat, &v).map(NfTm::succ);
            same(lhs, rhs, "succ")
        }),
    )?;

    record(
        "reify abs",
        instances(N, |seed| {
            let mut s = Scene::new(seed, &[]);
            let ty = gen_ty(&s.sig, &s.ctx, 5, &mut s.rng);
            let Ty::Pi(dom, cod) = &ty else {
                return Ok(false);
            };
            let Some(t) = s.term(&ty, 10) else {
                return Ok(false);
            };
            let d = s.depth();
            let f = s.eval(&t);
            let lhs = s.reify(&s.eval_ty(&ty), &f);
            let x = var_value(&s.eval_ty(dom), d);
            let body = apply(&s.sig, &f, x.clone()).map_err(|e| e.to_string())?;
            let cod_sem = eval_ty(&s.sig, &s.env.extend(x), cod).map_err(|e| e.to_string())?;
            let rhs = reify(&s.sig, d + 1, &cod_sem, &body)
                .map(NfTm::lam)
                .map_err(|e| e.to_string());
            same(lhs, rhs, "abs")
        }),
    )?;

    record(
        "app beta",
        instances(N, |seed| {
            let mut s = Scene::new(seed, &[Ty::Nat]);
            let Some(arg) = s.term(&Ty::Nat, 4) else {
                return Ok(false);
            };
            let inner = s.ctx.extend(Ty::Nat);
            let Ok(body) = gen_term(&s.sig, &inner, &Ty::Nat, 8, &mut s.rng) else {
                return Ok(false);
            };
            let lam = s.eval(&Term::lam(body.clone()));
            let lhs = apply(&s.sig, &lam, s.eval(&arg)).map_err(|e| e.to_string())?;
            let rhs = s.eval(&body.subst1(&arg));
            same(
                s.reify(&SemTy::Nat, &lhs),
                s.reify(&SemTy::Nat, &rhs),
                "app",
            )
        }),
    )?;

    record(
        "reify reflect Nat",
        instances(N, |seed| {
            let mut s = Scene::new(seed, &[Ty::Nat, nat_nat.clone()]);
            let Some(ne) = s.neutral(&Ty::Nat) else {
                return Ok(false);
            };
            let lhs = s.reify(&SemTy::Nat, &reflect(&SemTy::Nat, ne.clone()));
            let rhs = reify_ne(&s.sig, s.depth(), &ne)
                .map(NfTm::NeNat)
                .map_err(|e| e.to_string());
            same(lhs, rhs, "reflect at Nat")
        }),
    )?;

    record(
        "reify reflect ConstTy",
        instances(N, |seed| {
            let mut s = Scene::new(seed, &[a()]);
            let Some(ne) = s.neutral(&a()) else {
                return Ok(false);
            };
            let ty = s.eval_ty(&a());
            let lhs = s.reify(&ty, &reflect(&ty, ne.clone()));
            let rhs = reify_ne(&s.sig, s.depth(), &ne)
                .map(|n| NfTm::NeConst(Name::new("A"), vec![], n))
                .map_err(|e| e.to_string());
            same(lhs, rhs, "reflect at A")
        }),
    )?;

    record(
        "reify reflect ConstTyI",
        instances(N, |seed| {
            let mut s = Scene::new(seed, &[a(), b(Term::Var(0))]);
            let index = Term::Var(1);
            let Some(ne) = s.neutral(&b(index.clone())) else {
                return Ok(false);
            };
            let ty = s.eval_ty(&b(index.clone()));
            let lhs = s.reify(&ty, &reflect(&ty, ne.clone()));
            let index_nf = s.reify(&s.eval_ty(&a()), &s.eval(&index))?;
            let rhs = reify_ne(&s.sig, s.depth(), &ne)
                .map(|n| NfTm::NeConst(Name::new("B"), vec![index_nf], n))
                .map_err(|e| e.to_string());
            same(lhs, rhs, "reflect at B")
        }),
    )?;

    record(
        "app reflect",
        instances(N, |seed| {
            let mut s = Scene::new(seed, &[nat_nat.clone(), a_to_b.clone(), a()]);
            let (fun_index, ty) = if seed % 2 == 0 {
                (2, nat_nat.clone())
            } else {
                (1, a_to_b.clone())
            };
            let fun_ty = ty.shift(fun_index + 1);
            let Ty::Pi(dom, cod) = &fun_ty else {
                unreachable!()
            };
            let Some(arg) = s.term(dom, 6) else {
                return Ok(false);
            };
            let d = s.depth();
            let level = d - 1 - fun_index;
            let pi = s.eval_ty(&fun_ty);
            let v = s.eval(&arg);
            let lhs_val = apply(&s.sig, &reflect(&pi, Neutral::Var(level)), v.clone())
                .map_err(|e| e.to_string())?;
            let result_ty = s.eval_ty(&cod.subst1(&arg));
            let rhs_val = reflect(
                &result_ty,
                Neutral::App {
                    fun: std::sync::Arc::new(Neutral::Var(level)),
                    arg: v,
                    arg_ty: s.eval_ty(dom),
                },
            );
            same(
                s.reify(&result_ty, &lhs_val),
                s.reify(&result_ty, &rhs_val),
                "app of reflected",
            )
        }),
    )?;

    record(
        "ind on neutral",
        instances(N, |seed| {
            let mut s = Scene::new(seed, &[Ty::Nat, a()]);
            let Some(ne) = s.neutral(&Ty::Nat) else {
                return Ok(false);
            };
            let under = s.ctx.extend(Ty::Nat);
            let motive = gen_ty(&s.sig, &under, 4, &mut s.rng);
            let Some(zero) = s.term(&motive.subst1(&Term::Zero), 6) else {
                return Ok(false);
            };
            let succ_ctx = under.extend(motive.clone());
            let Ok(succ) = gen_term(&s.sig, &succ_ctx, &ind_succ_type(&motive), 6, &mut s.rng)
            else {
                return Ok(false);
            };
            let motive_clo = TyClosure {
                env: s.env.clone(),
                body: std::sync::Arc::new(motive),
            };
            let succ_clo = BiClosure {
                env: s.env.clone(),
                body: std::sync::Arc::new(succ),
            };
            let scrut = reflect(&SemTy::Nat, ne.clone());
            let zero_v = s.eval(&zero);
            let result_ty = motive_clo
                .apply(&s.sig, scrut.clone())
                .map_err(|e| e.to_string())?;
            let lhs = nat_ind(&s.sig, &scrut, &motive_clo, &zero_v, &succ_clo)
                .map_err(|e| e.to_string())?;
            let rhs = reflect(
                &result_ty,
                Neutral::NatInd {
                    scrut: std::sync::Arc::new(ne),
                    motive: motive_clo.clone(),
                    zero: zero_v,
                    succ: succ_clo,
                },
            );
            same(s.reify(&result_ty, &lhs), s.reify(&result_ty, &rhs), "ind")
        }),
    )?;

    record(
        "ConstTm",
        instances(N, |seed| {
            let mut s = Scene::new(seed, &[a()]);
            let Some(arg) = s.term(&a(), 6) else {
                return Ok(false);
            };
            let result_ty = s.eval_ty(&b(arg.clone()));
            let lhs = s.reify(&result_ty, &s.eval(&Term::constant("f", vec![arg.clone()])));
            let arg_nf = s.reify(&s.eval_ty(&a()), &s.eval(&arg))?;
            let rhs = NfTm::NeConst(
                Name::new("B"),
                vec![arg_nf.clone()],
                NeTm::Const(Name::new("f"), vec![arg_nf]),
            );
            same(lhs, Ok(rhs), "constant")
        }),
    )?;

    Ok(report.join(", "))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    let mut at_pi = 0;
    let mut eta = |sig: &Signature, ctx: &Context, ty: &Ty, t: &Term| -> Result<(), String> {
        let nf = nbe::normalize_tm(sig, ctx, ty, t).map_err(|e| e.to_string())?;
        if let Ty::Pi(..) = ty {
            at_pi += 1;
            ensure(matches!(nf, NfTm::Lam(_)), || {
                format!("{nf:?} at a function type")
            })?;
        }
        let o = oracle::rw_normalize(sig, ctx, ty, t, DEFAULT_FUEL).map_err(|e| e.to_string())?;
        ensure(normal::is_normal(sig, ctx, ty, &o), || {
            format!("oracle output {o:?} is not normal")
        })?;
        ensure(o == nf.erase(), || {
            format!("oracle {o:?} vs evaluator {nf:?}")
        })?;
        checked += 1;
        Ok(())
    };
    for (sig, case) in generated_cases() {
        eta(&sig, &case.ctx, &case.ty, &case.term)?;
    }
    let (sig, ctx, terms) = enumerated();
    for t in &terms {
        eta(&sig, &ctx, &Ty::Nat, t)?;
    }
    Ok(format!("{checked} cases, {at_pi} at function types"))
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct Record {
    status: String,
    output: Option<String>,
    error: Option<ErrorRecord>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct ErrorRecord {
    code: String,
    line: usize,
    col: usize,
    message: String,
}

fn tt(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_tt"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().ok_or("terminated by a signal")?;
    Ok((
        code,
        String::from_utf8_lossy(&out.stdout).trim().to_string(),
    ))
}

/// Runs a command in text and JSON mode and checks exit code, output and
/// the JSON record.
fn walk(args: &[&str], exit: i32, output: Option<&str>, status: &str) -> Result<(), String> {
    let (code, text) = tt(args)?;
    ensure(code == exit, || {
        format!("`tt {}` exited {code}, expected {exit}", args.join(" "))
    })?;
    if let Some(o) = output {
        ensure(text == o, || {
            format!("`tt {}` printed {text:?}", args.join(" "))
        })?;
    }
    let mut json_args = vec!["--json"];
    json_args.extend_from_slice(args);
    let (code, raw) = tt(&json_args)?;
    ensure(code == exit, || {
        format!("JSON mode of `tt {}` exited {code}", args.join(" "))
    })?;
    let record: Record = serde_json::from_str(&raw).map_err(|e| format!("schema: {e} in {raw}"))?;
    let original: serde_json::Value = serde_json::from_str(&raw).map_err(|e| e.to_string())?;
    let again = serde_json::to_value(&record).map_err(|e| e.to_string())?;
    ensure(original == again, || {
        format!("record does not round-trip: {raw}")
    })?;
    ensure(record.status == status, || {
        format!("status {} in {raw}", record.status)
    })?;
    ensure(record.error.is_some() == (status == "error"), || {
        format!("error field in {raw}")
    })?;
    if let (Some(o), Some(out)) = (output, &record.output) {
        ensure(out == o, || format!("JSON output {out:?}"))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let post = walkthrough("postulates.tt");
    let arith = walkthrough("arith.tt");
    let broken = walkthrough("broken.tt");
    let (post, arith, broken) = (
        post.to_str().ok_or("path")?,
        arith.to_str().ok_or("path")?,
        broken.to_str().ok_or("path")?,
    );
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let garbled = dir.path().join("garbled.tt");
    std::fs::write(&garbled, "def x : Nat := (succ 0").map_err(|e| e.to_string())?;
    let garbled = garbled.to_str().ok_or("path")?;

    let steps: Vec<(Vec<&str>, i32, Option<&str>, &str)> = vec![
        (vec!["check", post], 0, None, "ok"),
        (vec!["check", arith], 0, None, "ok"),
        (vec!["check", broken], 1, None, "error"),
        (vec!["check", garbled], 2, None, "error"),
        (
            vec!["normalize", arith, "-e", "mul 3 4", "--oracle"],
            0,
            Some("12 : Nat"),
            "ok",
        ),
        (
            vec!["normalize", arith, "-e", "six"],
            0,
            Some("6 : Nat"),
            "ok",
        ),
        (
            vec![
                "normalize",
                arith,
                "-e",
                "\\k. add k 1",
                "-t",
                "Nat -> Nat",
                "--oracle",
            ],
            0,
            Some("\\x0. ind(x0; _. Nat; 1; _ x1. succ x1) : Nat -> Nat"),
            "ok",
        ),
        (
            vec!["normalize", post, "-e", "f", "--oracle"],
            0,
            Some("\\x0. f x0 : (x0 : A) -> B x0"),
            "ok",
        ),
        (vec!["normalize", arith, "-e", "\\k. k"], 1, None, "error"),
        (vec!["normalize", arith, "-e", "add (1"], 2, None, "error"),
        (
            vec!["equal", arith, "-e", "six", "-e", "add 3 3"],
            0,
            Some("equal: 6"),
            "ok",
        ),
        (
            vec!["equal", arith, "-e", "double", "-e", "mul 2"],
            3,
            None,
            "not-equal",
        ),
        (
            vec!["equal", arith, "-e", "double 4", "-e", "mul 2 4"],
            0,
            Some("equal: 8"),
            "ok",
        ),
        (
            vec!["equal", post, "-e", "f", "-e", "f'"],
            0,
            Some("equal: \\x0. f x0"),
            "ok",
        ),
        (
            vec![
                "equal",
                post,
                "-e",
                "\\x. f x",
                "-e",
                "f",
                "-t",
                "(y : A) -> B y",
            ],
            0,
            None,
            "ok",
        ),
        (
            vec!["fuzz", post, "--count", "50", "--seed", "3", "--size", "10"],
            0,
            None,
            "ok",
        ),
    ];
    for (args, exit, output, status) in &steps {
        walk(args, *exit, *output, status)?;
    }
    let (_, raw) = tt(&["--json", "check", broken])?;
    let record: Record = serde_json::from_str(&raw).map_err(|e| e.to_string())?;
    let err = record.error.ok_or("missing error")?;
    ensure((err.line, err.col) == (4, 1), || {
        format!("error located at {}:{}", err.line, err.col)
    })?;
    Ok(format!("{} invocations in text and JSON mode", steps.len()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "beta golden suite",
            limit: Some(Duration::from_secs(1)),
            run: criterion_1,
        },
        Criterion {
            id: 2,
            name: "add/mul normalize to numerals",
            limit: Some(Duration::from_secs(5)),
            run: criterion_2,
        },
        Criterion {
            id: 3,
            name: "soundness, idempotence, type preservation",
            limit: Some(Duration::from_secs(60)),
            run: criterion_3,
        },
        Criterion {
            id: 4,
            name: "unique normal forms on exhaustive enumeration",
            limit: Some(Duration::from_secs(120)),
            run: criterion_4,
        },
        Criterion {
            id: 5,
            name: "renaming stability",
            limit: Some(Duration::from_secs(30)),
            run: criterion_5,
        },
        Criterion {
            id: 6,
            name: "normalization equations",
            limit: None,
            run: criterion_6,
        },
        Criterion {
            id: 7,
            name: "eta-long outputs agree with the oracle",
            limit: None,
            run: criterion_7,
        },
        Criterion {
            id: 8,
            name: "CLI walkthrough and JSON records",
            limit: None,
            run: criterion_8,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!(
                "criterion {} ({}): PASS [{detail}; {elapsed:.2?}]",
                c.id, c.name
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {} ({}): FAIL [{why}; {elapsed:.2?}]",
                    c.id, c.name
                );
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
