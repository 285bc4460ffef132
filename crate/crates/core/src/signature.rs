//! Ordered collection of checked constant declarations.

use std::collections::HashMap;

use crate::check::{self, TypeError};
use crate::syntax::{Context, Name, Term, Ty};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Declaration {
    /// Type constant over a telescope of term parameters.
    PostulateTy { name: Name, params: Vec<Ty> },
    /// Term constant; `result` is scoped in `params`.
    PostulateTm {
        name: Name,
        params: Vec<Ty>,
        result: Ty,
    },
    /// Closed transparent abbreviation. References to it are expanded by the
    /// elaborator, so the kernel never sees the name inside a term.
    Define { name: Name, ty: Ty, body: Term },
}

impl Declaration {
    pub fn name(&self) -> &Name {
        match self {
            Declaration::PostulateTy { name, .. }
            | Declaration::PostulateTm { name, .. }
            | Declaration::Define { name, .. } => name,
        }
    }

    /// Parameter telescope of a postulate; empty for definitions.
    pub fn params(&self) -> &[Ty] {
        match self {
            Declaration::PostulateTy { params, .. } | Declaration::PostulateTm { params, .. } => {
                params
            }
            Declaration::Define { .. } => &[],
        }
    }

    pub fn postulate_ty(name: &str, params: Vec<Ty>) -> Declaration {
        Declaration::PostulateTy {
            name: Name::new(name),
            params,
        }
    }

    pub fn postulate_tm(name: &str, params: Vec<Ty>, result: Ty) -> Declaration {
        Declaration::PostulateTm {
            name: Name::new(name),
            params,
            result,
        }
    }

    pub fn define(name: &str, ty: Ty, body: Term) -> Declaration {
        Declaration::Define {
            name: Name::new(name),
            ty,
            body,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Signature {
    decls: Vec<Declaration>,
    index: HashMap<Name, usize>,
}

impl Signature {
    pub fn empty() -> Signature {
        Signature::default()
    }

    /// `A`, `B (x : A)` and `f : (x : A) -> B x`.
    pub fn abf() -> Signature {
        let mut sig = Signature::empty();
        let a = Ty::constant("A", vec![]);
        sig.declare(Declaration::postulate_ty("A", vec![]))
            .expect("A");
        sig.declare(Declaration::postulate_ty("B", vec![a.clone()]))
            .expect("B");
        sig.declare(Declaration::postulate_tm(
            "f",
            vec![a],
            Ty::constant("B", vec![Term::Var(0)]),
        ))
        .expect("f");
        sig
    }

    /// Checks `decl` against the current signature and appends it.
    pub fn declare(&mut self, decl: Declaration) -> Result<(), TypeError> {
        if self.index.contains_key(decl.name()) {
            return Err(TypeError::DuplicateName(decl.name().clone()));
        }
        self.check_declaration(&decl)?;
        self.index.insert(decl.name().clone(), self.decls.len());
        self.decls.push(decl);
        Ok(())
    }

    fn check_declaration(&self, decl: &Declaration) -> Result<(), TypeError> {
        match decl {
            Declaration::PostulateTy { params, .. } => {
                check::check_telescope(self, params)?;
            }
            Declaration::PostulateTm { params, result, .. } => {
                let ctx = check::check_telescope(self, params)?;
                check::check_ty(self, &ctx, result)?;
            }
            Declaration::Define { ty, body, .. } => {
                let ctx = Context::empty();
                check::check_ty(self, &ctx, ty)?;
                check::check(self, &ctx, body, ty)?;
            }
        }
        Ok(())
    }

    pub fn lookup(&self, name: &Name) -> Result<&Declaration, TypeError> {
        self.get(name.as_str())
            .ok_or_else(|| TypeError::UnknownConstant(name.clone()))
    }

    pub fn get(&self, name: &str) -> Option<&Declaration> {
        self.index.get(&Name::new(name)).map(|&i| &self.decls[i])
    }

    pub fn decls(&self) -> &[Declaration] {
        &self.decls
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    /// Term postulates, in declaration order.
    pub fn term_constants(&self) -> impl Iterator<Item = (&Name, &[Ty], &Ty)> {
        self.decls.iter().filter_map(|d| match d {
            Declaration::PostulateTm {
                name,
                params,
                result,
            } => Some((name, params.as_slice(), result)),
            _ => None,
        })
    }

    /// Type postulates, in declaration order.
    pub fn type_constants(&self) -> impl Iterator<Item = (&Name, &[Ty])> {
        self.decls.iter().filter_map(|d| match d {
            Declaration::PostulateTy { name, params } => Some((name, params.as_slice())),
            _ => None,
        })
    }

    /// Re-checks every declaration against its prefix from scratch.
    pub fn recheck(&self) -> Result<(), TypeError> {
        let mut fresh = Signature::empty();
        for d in &self.decls {
            fresh.declare(d.clone())?;
        }
        Ok(())
    }

    /// The signature with every definition dropped. Definitions never occur
    /// by name in kernel terms, so the result must still check.
    pub fn without_definitions(&self) -> Result<Signature, TypeError> {
        let mut fresh = Signature::empty();
        for d in &self.decls {
            if !matches!(d, Declaration::Define { .. }) {
                fresh.declare(d.clone())?;
            }
        }
        Ok(fresh)
    }
}
