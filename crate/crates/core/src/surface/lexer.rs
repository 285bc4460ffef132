use std::fmt;

/// Byte range in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }

    /// 1-based line and column (in characters) of the span start.
    pub fn line_col(&self, src: &str) -> (usize, usize) {
        let upto = &src[..self.start.min(src.len())];
        let line = upto.matches('\n').count() + 1;
        let col = upto.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    Postulate,
    Def,
    Nat,
    Zero,
    Succ,
    Ind,
    Fun,
    Lambda,
    Dot,
    Colon,
    Define,
    Arrow,
    FatArrow,
    Semi,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Num(n) => write!(f, "numeral `{n}`"),
            Tok::Postulate => f.write_str("`postulate`"),
            Tok::Def => f.write_str("`def`"),
            Tok::Nat => f.write_str("`Nat`"),
            Tok::Zero => f.write_str("`zero`"),
            Tok::Succ => f.write_str("`succ`"),
            Tok::Ind => f.write_str("`ind`"),
            Tok::Fun => f.write_str("`fun`"),
            Tok::Lambda => f.write_str("`\\`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Define => f.write_str("`:=`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::FatArrow => f.write_str("`=>`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub span: Span,
    pub found: char,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(src: &str) -> Result<Vec<(Tok, Span)>, LexError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if src[start..].starts_with("--") {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        chars.next();
        let single = |tok| Some((tok, start + c.len_utf8()));
        let (tok, end) = match c {
            '\\' | 'λ' => single(Tok::Lambda),
            '.' => single(Tok::Dot),
            ';' => single(Tok::Semi),
            '(' => single(Tok::LParen),
            ')' => single(Tok::RParen),
            '→' => single(Tok::Arrow),
            ':' if src[start..].starts_with(":=") => {
                chars.next();
                Some((Tok::Define, start + 2))
            }
            ':' => single(Tok::Colon),
            '-' if src[start..].starts_with("->") => {
                chars.next();
                Some((Tok::Arrow, start + 2))
            }
            '=' if src[start..].starts_with("=>") => {
                chars.next();
                Some((Tok::FatArrow, start + 2))
            }
            c if c.is_ascii_digit() => {
                let mut end = start + 1;
                while let Some(&(i, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    chars.next();
                    end = i + 1;
                }
                match src[start..end].parse() {
                    Ok(n) => Some((Tok::Num(n), end)),
                    Err(_) => None,
                }
            }
            c if is_ident_start(c) => {
                let mut end = start + c.len_utf8();
                while let Some(&(i, d)) = chars.peek() {
                    if !is_ident_continue(d) {
                        break;
                    }
                    chars.next();
                    end = i + d.len_utf8();
                }
                let tok = match &src[start..end] {
                    "postulate" => Tok::Postulate,
                    "def" => Tok::Def,
                    "Nat" => Tok::Nat,
                    "zero" => Tok::Zero,
                    "succ" => Tok::Succ,
                    "ind" => Tok::Ind,
                    "fun" => Tok::Fun,
                    s => Tok::Ident(s.to_string()),
                };
                Some((tok, end))
            }
            _ => None,
        }
        .ok_or(LexError {
            span: Span::new(start, start + c.len_utf8()),
            found: c,
        })?;
        out.push((tok, Span::new(start, end)));
    }
    out.push((Tok::Eof, Span::new(src.len(), src.len())));
    Ok(out)
}
