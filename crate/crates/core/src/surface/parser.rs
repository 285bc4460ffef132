//! Recursive-descent parser for the surface language.
//!
//! ```text
//! file    := decl*
//! decl    := "postulate" IDENT binder* [":" ty] | "def" IDENT ":" ty ":=" tm
//! binder  := "(" IDENT ":" ty ")"
//! ty      := binder "->" ty | ty1 "->" ty | ty1
//! ty1     := "Nat" | IDENT atom* | "(" ty ")"
//! tm      := ("\" | "λ") IDENT+ "." tm | "fun" IDENT+ "=>" tm | atom+
//! atom    := IDENT | "zero" | "succ" atom | NUMERAL | "(" tm ")"
//!          | "ind" "(" tm ";" IDENT "." ty ";" tm ";" IDENT IDENT "." tm ")"
//! ```

use std::fmt;

use super::lexer::{lex, Span, Tok};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Var(String),
    Zero,
    Succ(Box<Expr>),
    Num(u64),
    Lam(Vec<Ident>, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Ind {
        scrut: Box<Expr>,
        motive_var: Ident,
        motive: Box<TyExpr>,
        zero: Box<Expr>,
        pred: Ident,
        rec: Ident,
        succ: Box<Expr>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TyExpr {
    pub kind: TyKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TyKind {
    /// `None` for the non-dependent arrow.
    Pi(Option<Ident>, Box<TyExpr>, Box<TyExpr>),
    Nat,
    Named(Ident, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Postulate {
        name: Ident,
        params: Vec<(Ident, TyExpr)>,
        ty: Option<TyExpr>,
        span: Span,
    },
    Def {
        name: Ident,
        ty: TyExpr,
        body: Expr,
        span: Span,
    },
}

impl Decl {
    pub fn span(&self) -> Span {
        match self {
            Decl::Postulate { span, .. } | Decl::Def { span, .. } => *span,
        }
    }

    pub fn name(&self) -> &Ident {
        match self {
            Decl::Postulate { name, .. } | Decl::Def { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: Span,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "expected {}, found {}",
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

type Result<T> = std::result::Result<T, ParseError>;

impl Parser {
    fn new(src: &str) -> Result<Parser> {
        let toks = lex(src).map_err(|e| ParseError {
            span: e.span,
            expected: vec!["a token".into()],
            found: format!("character `{}`", e.found),
        })?;
        Ok(Parser { toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].1.end
        }
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T> {
        Err(ParseError {
            span: self.span(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<Span> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            self.error(&[&tok.to_string()])
        }
    }

    fn ident(&mut self) -> Result<Ident> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let span = self.bump().1;
                Ok(Ident { name, span })
            }
            _ => self.error(&["identifier"]),
        }
    }

    fn file(&mut self) -> Result<Vec<Decl>> {
        let mut decls = Vec::new();
        while *self.peek() != Tok::Eof {
            decls.push(self.decl()?);
        }
        Ok(decls)
    }

    fn decl(&mut self) -> Result<Decl> {
        let start = self.span();
        match self.peek() {
            Tok::Postulate => {
                self.bump();
                let name = self.ident()?;
                let mut params = Vec::new();
                while *self.peek() == Tok::LParen {
                    params.push(self.binder()?);
                }
                let ty = if *self.peek() == Tok::Colon {
                    self.bump();
                    Some(self.ty()?)
                } else {
                    None
                };
                let span = Span::new(start.start, self.prev_end());
                Ok(Decl::Postulate {
                    name,
                    params,
                    ty,
                    span,
                })
            }
            Tok::Def => {
                self.bump();
                let name = self.ident()?;
                self.expect(Tok::Colon)?;
                let ty = self.ty()?;
                self.expect(Tok::Define)?;
                let body = self.tm()?;
                let span = Span::new(start.start, self.prev_end());
                Ok(Decl::Def {
                    name,
                    ty,
                    body,
                    span,
                })
            }
            _ => self.error(&["`postulate`", "`def`"]),
        }
    }

    fn binder(&mut self) -> Result<(Ident, TyExpr)> {
        self.expect(Tok::LParen)?;
        let name = self.ident()?;
        self.expect(Tok::Colon)?;
        let ty = self.ty()?;
        self.expect(Tok::RParen)?;
        Ok((name, ty))
    }

    fn is_binder_start(&self) -> bool {
        *self.peek() == Tok::LParen
            && matches!(self.peek_at(1), Tok::Ident(_))
            && *self.peek_at(2) == Tok::Colon
    }

    fn ty(&mut self) -> Result<TyExpr> {
        let start = self.span();
        if self.is_binder_start() {
            let (name, dom) = self.binder()?;
            self.expect(Tok::Arrow)?;
            let cod = self.ty()?;
            let span = start.to(cod.span);
            return Ok(TyExpr {
                kind: TyKind::Pi(Some(name), Box::new(dom), Box::new(cod)),
                span,
            });
        }
        let dom = self.ty1()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let cod = self.ty()?;
            let span = dom.span.to(cod.span);
            Ok(TyExpr {
                kind: TyKind::Pi(None, Box::new(dom), Box::new(cod)),
                span,
            })
        } else {
            Ok(dom)
        }
    }

    fn ty1(&mut self) -> Result<TyExpr> {
        let start = self.span();
        match self.peek() {
            Tok::Nat => {
                self.bump();
                Ok(TyExpr {
                    kind: TyKind::Nat,
                    span: start,
                })
            }
            Tok::Ident(_) => {
                let name = self.ident()?;
                let mut args = Vec::new();
                while self.at_atom_start() {
                    args.push(self.atom()?);
                }
                let span = Span::new(start.start, self.prev_end());
                Ok(TyExpr {
                    kind: TyKind::Named(name, args),
                    span,
                })
            }
            Tok::LParen => {
                self.bump();
                let mut ty = self.ty()?;
                let end = self.expect(Tok::RParen)?;
                ty.span = start.to(end);
                Ok(ty)
            }
            _ => self.error(&["a type"]),
        }
    }

    fn at_atom_start(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Zero | Tok::Succ | Tok::Num(_) | Tok::LParen | Tok::Ind
        )
    }

    fn tm(&mut self) -> Result<Expr> {
        let start = self.span();
        match self.peek() {
            Tok::Lambda | Tok::Fun => {
                let arrow = if *self.peek() == Tok::Lambda {
                    Tok::Dot
                } else {
                    Tok::FatArrow
                };
                self.bump();
                let mut binders = vec![self.ident()?];
                while let Tok::Ident(_) = self.peek() {
                    binders.push(self.ident()?);
                }
                self.expect(arrow)?;
                let body = self.tm()?;
                let span = start.to(body.span);
                Ok(Expr {
                    kind: ExprKind::Lam(binders, Box::new(body)),
                    span,
                })
            }
            _ => {
                if !self.at_atom_start() {
                    return self.error(&["a term"]);
                }
                let mut head = self.atom()?;
                while self.at_atom_start() {
                    let arg = self.atom()?;
                    let span = head.span.to(arg.span);
                    head = Expr {
                        kind: ExprKind::App(Box::new(head), Box::new(arg)),
                        span,
                    };
                }
                Ok(head)
            }
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = self.span();
        let kind = match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                ExprKind::Var(name)
            }
            Tok::Zero => {
                self.bump();
                ExprKind::Zero
            }
            Tok::Num(n) => {
                self.bump();
                ExprKind::Num(n)
            }
            Tok::Succ => {
                self.bump();
                ExprKind::Succ(Box::new(self.atom()?))
            }
            Tok::LParen => {
                self.bump();
                let mut inner = self.tm()?;
                let end = self.expect(Tok::RParen)?;
                inner.span = start.to(end);
                return Ok(inner);
            }
            Tok::Ind => {
                self.bump();
                self.expect(Tok::LParen)?;
                let scrut = self.tm()?;
                self.expect(Tok::Semi)?;
                let motive_var = self.ident()?;
                self.expect(Tok::Dot)?;
                let motive = self.ty()?;
                self.expect(Tok::Semi)?;
                let zero = self.tm()?;
                self.expect(Tok::Semi)?;
                let pred = self.ident()?;
                let rec = self.ident()?;
                self.expect(Tok::Dot)?;
                let succ = self.tm()?;
                self.expect(Tok::RParen)?;
                ExprKind::Ind {
                    scrut: Box::new(scrut),
                    motive_var,
                    motive: Box::new(motive),
                    zero: Box::new(zero),
                    pred,
                    rec,
                    succ: Box::new(succ),
                }
            }
            _ => return self.error(&["a term"]),
        };
        Ok(Expr {
            kind,
            span: Span::new(start.start, self.prev_end()),
        })
    }

    fn finish<T>(&mut self, value: T) -> Result<T> {
        if *self.peek() == Tok::Eof {
            Ok(value)
        } else {
            self.error(&["end of input"])
        }
    }
}

pub fn parse_file(src: &str) -> Result<Vec<Decl>> {
    Parser::new(src)?.file()
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src)?;
    let e = p.tm()?;
    p.finish(e)
}

pub fn parse_ty(src: &str) -> Result<TyExpr> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.finish(t)
}
