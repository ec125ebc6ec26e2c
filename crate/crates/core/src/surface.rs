//! Lexer, parser and printer for `.hott` source files.
//!
//! ```text
//! module ::= decl*
//! decl   ::= "def" ident params? ":" term ":=" term
//!          | "axiom" ident params? ":" term
//! params ::= ("(" ident+ ":" term ")")+
//! term   ::= "fun" ident+ "=>" term
//!          | "let" ident ":" term ":=" term "in" term
//!          | binder+ "->" term | prod "->" term | prod
//! prod   ::= binder "*" prod | app "*" prod | app
//! app    ::= "Id" arg arg arg | "refl" arg | "J" arg arg arg arg arg arg
//!          | "Type" nat | arg+
//! arg    ::= atom (".1" | ".2")*
//! atom   ::= ident | "(" term ")" | "(" term ("," term)+ ")"
//! binder ::= "(" ident+ ":" term ")"
//! ```
//!
//! Identifiers not bound by an enclosing binder become global constants.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::syntax::{DeclKind, Declaration, JTerm, Name, RcTerm, Span, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    KwDef,
    KwAxiom,
    KwFun,
    KwLet,
    KwIn,
    KwType,
    KwId,
    KwRefl,
    KwJ,
    Ident(String),
    Nat(u32),
    LParen,
    RParen,
    Colon,
    ColonEq,
    Comma,
    Arrow,
    Arrow2,
    Star,
    Proj1,
    Proj2,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Token::KwDef => "def",
            Token::KwAxiom => "axiom",
            Token::KwFun => "fun",
            Token::KwLet => "let",
            Token::KwIn => "in",
            Token::KwType => "Type",
            Token::KwId => "Id",
            Token::KwRefl => "refl",
            Token::KwJ => "J",
            Token::Ident(s) => return write!(f, "identifier `{s}`"),
            Token::Nat(n) => return write!(f, "number {n}"),
            Token::LParen => "(",
            Token::RParen => ")",
            Token::Colon => ":",
            Token::ColonEq => ":=",
            Token::Comma => ",",
            Token::Arrow => "->",
            Token::Arrow2 => "=>",
            Token::Star => "*",
            Token::Proj1 => ".1",
            Token::Proj2 => ".2",
        };
        write!(f, "`{s}`")
    }
}

pub const KEYWORDS: &[&str] = &["def", "axiom", "fun", "let", "in", "Type", "Id", "refl", "J"];

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: unexpected character {found:?}")]
pub struct LexError {
    pub line: usize,
    pub col: usize,
    pub found: char,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("lex error at {0}")]
    Lex(#[from] LexError),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
}

impl SyntaxError {
    pub fn span(&self) -> Span {
        match self {
            SyntaxError::Lex(e) => e.span,
            SyntaxError::Parse(e) => e.span,
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(input: &str) -> Result<Vec<(Token, Span)>, LexError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if input[i..].starts_with("--") {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let two = input.get(i..i + 2).unwrap_or("");
        let tok = match two {
            ":=" => Some(Token::ColonEq),
            "->" => Some(Token::Arrow),
            "=>" => Some(Token::Arrow2),
            ".1" => Some(Token::Proj1),
            ".2" => Some(Token::Proj2),
            _ => None,
        };
        if let Some(tok) = tok {
            i += 2;
            out.push((tok, Span::new(start, i)));
            continue;
        }
        let tok = match c {
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            ':' => Some(Token::Colon),
            ',' => Some(Token::Comma),
            '*' => Some(Token::Star),
            _ => None,
        };
        if let Some(tok) = tok {
            i += 1;
            out.push((tok, Span::new(start, i)));
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = input[start..i].parse::<u32>().map_err(|_| lex_error(input, start))?;
            out.push((Token::Nat(n), Span::new(start, i)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && is_ident_char(bytes[i] as char) {
                i += 1;
            }
            let word = &input[start..i];
            let tok = match word {
                "def" => Token::KwDef,
                "axiom" => Token::KwAxiom,
                "fun" => Token::KwFun,
                "let" => Token::KwLet,
                "in" => Token::KwIn,
                "Type" => Token::KwType,
                "Id" => Token::KwId,
                "refl" => Token::KwRefl,
                "J" => Token::KwJ,
                _ => Token::Ident(word.to_owned()),
            };
            out.push((tok, Span::new(start, i)));
            continue;
        }
        return Err(lex_error(input, start));
    }
    Ok(out)
}

fn lex_error(input: &str, at: usize) -> LexError {
    let span = Span::new(at, at + input[at..].chars().next().map_or(0, char::len_utf8));
    let (line, col) = span.line_col(input);
    LexError {
        line,
        col,
        found: input[at..].chars().next().unwrap_or('\0'),
        span,
    }
}

/// A parsed source file.
#[derive(Clone, Debug)]
pub struct SourceModule {
    pub path: PathBuf,
    pub declarations: Vec<Declaration>,
}

impl SourceModule {
    /// Structural equality of the declaration lists.
    pub fn same_structure(&self, other: &SourceModule) -> bool {
        self.declarations.len() == other.declarations.len()
            && self
                .declarations
                .iter()
                .zip(&other.declarations)
                .all(|(a, b)| a.same_structure(b))
    }
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<(Token, Span)>,
    pos: usize,
    scope: Vec<Name>,
}

type PResult<T> = Result<T, ParseError>;

/// Name pushed for non-dependent binders; never matches an identifier.
const HIDDEN: &str = "";

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Token> {
        self.tokens.get(self.pos + k).map(|(t, _)| t)
    }

    fn span_here(&self) -> Span {
        match self.tokens.get(self.pos) {
            Some((_, s)) => *s,
            None => Span::new(self.src.len(), self.src.len()),
        }
    }

    fn prev_end(&self) -> usize {
        self.pos
            .checked_sub(1)
            .and_then(|p| self.tokens.get(p))
            .map_or(0, |(_, s)| s.end)
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let span = self.span_here();
        let (line, col) = span.line_col(self.src);
        ParseError {
            line,
            col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self
                .peek()
                .map_or_else(|| "end of input".to_owned(), |t| t.to_string()),
            span,
        }
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Token, what: &str) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(&[what]))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Token::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    fn resolve(&self, name: &str) -> RcTerm {
        match self.scope.iter().rposition(|n| &**n == name) {
            Some(pos) => Term::var(self.scope.len() - 1 - pos),
            None => Term::constant(name),
        }
    }

    /// Whether a binder group `( ident+ :` starts here.
    fn at_binder(&self) -> bool {
        if self.peek() != Some(&Token::LParen) {
            return false;
        }
        let mut k = 1;
        while let Some(Token::Ident(_)) = self.peek_at(k) {
            k += 1;
        }
        k > 1 && self.peek_at(k) == Some(&Token::Colon)
    }

    /// Parses `( x y : A )` and returns the names with the type of each,
    /// where the type of the k-th name is valid under the previous k names.
    fn binder(&mut self) -> PResult<Vec<(Name, RcTerm)>> {
        self.expect(Token::LParen, "`(`")?;
        let mut names = Vec::new();
        while let Some(Token::Ident(_)) = self.peek() {
            names.push(self.ident()?);
        }
        self.expect(Token::Colon, "`:`")?;
        let ty = self.term()?;
        self.expect(Token::RParen, "`)`")?;
        Ok(names
            .into_iter()
            .enumerate()
            .map(|(k, n)| {
                let ty = crate::syntax::shift(&ty, 0, k as isize).expect("upward shift");
                (Name::from(n), ty)
            })
            .collect())
    }

    fn module(&mut self) -> PResult<Vec<Declaration>> {
        let mut decls = Vec::new();
        while self.peek().is_some() {
            decls.push(self.decl()?);
        }
        Ok(decls)
    }

    fn decl(&mut self) -> PResult<Declaration> {
        let start = self.span_here().start;
        let kind = match self.peek() {
            Some(Token::KwDef) => DeclKind::Definition,
            Some(Token::KwAxiom) => DeclKind::Axiom,
            _ => return Err(self.error(&["`def`", "`axiom`"])),
        };
        self.pos += 1;
        let name = self.ident()?;
        let mut params = Vec::new();
        while self.peek() == Some(&Token::LParen) {
            let group = self.binder()?;
            for (n, ty) in group {
                self.scope.push(n.clone());
                params.push((n, ty));
            }
        }
        self.expect(Token::Colon, "`:`")?;
        let mut ty = self.term()?;
        let mut body = None;
        if kind == DeclKind::Definition {
            self.expect(Token::ColonEq, "`:=`")?;
            body = Some(self.term()?);
        }
        for (n, dom) in params.into_iter().rev() {
            self.scope.pop();
            ty = Arc::new(Term::Pi(n.clone(), dom, ty));
            body = body.map(|b| Arc::new(Term::Lambda(n, b)));
        }
        Ok(Declaration {
            kind,
            name: name.into(),
            ty,
            body,
            span: Span::new(start, self.prev_end()),
        })
    }

    fn term(&mut self) -> PResult<RcTerm> {
        match self.peek() {
            Some(Token::KwFun) => {
                self.pos += 1;
                let mut names = vec![self.ident()?];
                while let Some(Token::Ident(_)) = self.peek() {
                    names.push(self.ident()?);
                }
                self.expect(Token::Arrow2, "`=>`")?;
                let n = names.len();
                self.scope.extend(names.iter().map(|s| Name::from(s.as_str())));
                let body = self.term();
                self.scope.truncate(self.scope.len() - n);
                let mut body = body?;
                for name in names.into_iter().rev() {
                    body = Term::lambda(&name, body);
                }
                Ok(body)
            }
            Some(Token::KwLet) => {
                self.pos += 1;
                let name = self.ident()?;
                self.expect(Token::Colon, "`:`")?;
                let annot = self.term()?;
                self.expect(Token::ColonEq, "`:=`")?;
                let bound = self.term()?;
                self.expect(Token::KwIn, "`in`")?;
                self.scope.push(name.as_str().into());
                let body = self.term();
                self.scope.pop();
                Ok(Term::let_(&name, annot, bound, body?))
            }
            _ => self.arrow(),
        }
    }

    fn arrow(&mut self) -> PResult<RcTerm> {
        let lhs = if self.at_binder() {
            let group = self.binder()?;
            match self.peek() {
                Some(Token::Arrow) => {
                    self.pos += 1;
                    return self.bind_group(group, true, Parser::arrow);
                }
                Some(Token::Star) => {
                    self.pos += 1;
                    self.bind_group(group, false, Parser::prod)?
                }
                _ if self.at_binder() => return self.bind_group(group, true, Parser::telescope),
                _ => return Err(self.error(&["`->`", "`*`", "`(`"])),
            }
        } else {
            self.prod()?
        };
        if self.eat(&Token::Arrow) {
            self.scope.push(HIDDEN.into());
            let rhs = self.arrow();
            self.scope.pop();
            return Ok(Term::pi("_", lhs, rhs?));
        }
        Ok(lhs)
    }

    /// The rest of `(x : A) (y : B) ... -> C` after the first group.
    fn telescope(&mut self) -> PResult<RcTerm> {
        let group = self.binder()?;
        if self.at_binder() {
            return self.bind_group(group, true, Parser::telescope);
        }
        self.expect(Token::Arrow, "`->`")?;
        self.bind_group(group, true, Parser::arrow)
    }

    fn prod(&mut self) -> PResult<RcTerm> {
        if self.at_binder() {
            let group = self.binder()?;
            self.expect(Token::Star, "`*`")?;
            return self.bind_group(group, false, Parser::prod);
        }
        let lhs = self.app()?;
        if self.eat(&Token::Star) {
            self.scope.push(HIDDEN.into());
            let rhs = self.prod();
            self.scope.pop();
            return Ok(Term::sigma("_", lhs, rhs?));
        }
        Ok(lhs)
    }

    fn bind_group(
        &mut self,
        group: Vec<(Name, RcTerm)>,
        pi: bool,
        body: fn(&mut Self) -> PResult<RcTerm>,
    ) -> PResult<RcTerm> {
        let n = group.len();
        self.scope.extend(group.iter().map(|(n, _)| n.clone()));
        let body = body(self);
        self.scope.truncate(self.scope.len() - n);
        let mut t = body?;
        for (name, ty) in group.into_iter().rev() {
            t = Arc::new(if pi {
                Term::Pi(name, ty, t)
            } else {
                Term::Sigma(name, ty, t)
            });
        }
        Ok(t)
    }

    fn at_arg(&self) -> bool {
        matches!(self.peek(), Some(Token::Ident(_)) | Some(Token::LParen))
    }

    fn app(&mut self) -> PResult<RcTerm> {
        let head = match self.peek() {
            Some(Token::KwId) => {
                self.pos += 1;
                let a = self.arg()?;
                let x = self.arg()?;
                let y = self.arg()?;
                Term::id(a, x, y)
            }
            Some(Token::KwRefl) => {
                self.pos += 1;
                Term::refl(self.arg()?)
            }
            Some(Token::KwJ) => {
                self.pos += 1;
                let ty = self.arg()?;
                let base = self.arg()?;
                let motive = self.arg()?;
                let case = self.arg()?;
                let other = self.arg()?;
                let path = self.arg()?;
                Arc::new(Term::J(Box::new(JTerm {
                    ty,
                    base,
                    motive,
                    case,
                    other,
                    path,
                })))
            }
            Some(Token::KwType) => {
                self.pos += 1;
                match self.peek() {
                    Some(Token::Nat(n)) => {
                        let n = *n;
                        self.pos += 1;
                        Term::universe(n)
                    }
                    _ => return Err(self.error(&["universe level"])),
                }
            }
            _ if self.at_arg() => self.arg()?,
            _ => {
                return Err(self.error(&[
                    "identifier",
                    "`(`",
                    "`fun`",
                    "`let`",
                    "`Type`",
                    "`Id`",
                    "`refl`",
                    "`J`",
                ]))
            }
        };
        let mut t = head;
        while self.at_arg() {
            t = Term::app(t, self.arg()?);
        }
        Ok(t)
    }

    fn arg(&mut self) -> PResult<RcTerm> {
        let mut t = self.atom()?;
        loop {
            if self.eat(&Token::Proj1) {
                t = Term::proj1(t);
            } else if self.eat(&Token::Proj2) {
                t = Term::proj2(t);
            } else {
                return Ok(t);
            }
        }
    }

    fn atom(&mut self) -> PResult<RcTerm> {
        match self.peek() {
            Some(Token::Ident(name)) => {
                let t = self.resolve(name);
                self.pos += 1;
                Ok(t)
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                if self.eat(&Token::Comma) {
                    let mut items = vec![t, self.term()?];
                    while self.eat(&Token::Comma) {
                        items.push(self.term()?);
                    }
                    self.expect(Token::RParen, "`)`")?;
                    let last = items.pop().expect("at least two items");
                    return Ok(items.into_iter().rev().fold(last, |acc, t| Term::pair(t, acc)));
                }
                if self.eat(&Token::RParen) {
                    return Ok(t);
                }
                Err(self.error(&["`)`", "`,`"]))
            }
            _ => Err(self.error(&["identifier", "`(`"])),
        }
    }
}

/// Parse a token stream into declarations.
pub fn parse_module(src: &str, tokens: Vec<(Token, Span)>) -> Result<Vec<Declaration>, ParseError> {
    Parser {
        src,
        tokens,
        pos: 0,
        scope: Vec::new(),
    }
    .module()
}

/// Lex and parse a whole source text.
pub fn parse_source(path: impl AsRef<Path>, src: &str) -> Result<SourceModule, SyntaxError> {
    let tokens = tokenize(src)?;
    let declarations = parse_module(src, tokens)?;
    Ok(SourceModule {
        path: path.as_ref().to_path_buf(),
        declarations,
    })
}

/// Parse a single closed term.
pub fn parse_term(src: &str) -> Result<RcTerm, SyntaxError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        src,
        tokens,
        pos: 0,
        scope: Vec::new(),
    };
    let t = p.term()?;
    if p.peek().is_some() {
        return Err(p.error(&["end of input"]).into());
    }
    Ok(t)
}

// Printing.

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Term,
    Arrow,
    Prod,
    App,
    Arg,
}

struct Printer<'a> {
    /// Names of the enclosing binders, innermost last.
    scope: Vec<String>,
    /// Constants that a binder must not shadow.
    reserved: &'a HashSet<String>,
}

fn uses_var(t: &Term, index: usize) -> bool {
    match t {
        Term::Var(i) => *i == index,
        _ => {
            let mut used = false;
            t.for_each_child(|c, k| used = used || uses_var(c, index + k));
            used
        }
    }
}

impl<'a> Printer<'a> {
    fn fresh(&self, hint: &str, body: &Term) -> String {
        if !uses_var(body, 0) {
            return "_".to_owned();
        }
        let base = if hint.is_empty() || hint == "_" { "x" } else { hint };
        let taken = |s: &str| {
            self.scope.iter().any(|n| n == s) || self.reserved.contains(s) || KEYWORDS.contains(&s)
        };
        if !taken(base) {
            return base.to_owned();
        }
        let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
        let stem = if stem.is_empty() { "x" } else { stem };
        (1..)
            .map(|k| format!("{stem}{k}"))
            .find(|s| !taken(s))
            .expect("infinite supply of names")
    }

    fn with<R>(&mut self, name: String, f: impl FnOnce(&mut Self) -> R) -> R {
        self.scope.push(name);
        let r = f(self);
        self.scope.pop();
        r
    }

    fn print(&mut self, t: &Term, prec: Prec) -> String {
        let (s, own) = self.print_raw(t);
        if own < prec {
            format!("({s})")
        } else {
            s
        }
    }

    fn print_raw(&mut self, t: &Term) -> (String, Prec) {
        match t {
            Term::Var(i) => {
                let name = self
                    .scope
                    .len()
                    .checked_sub(i + 1)
                    .and_then(|k| self.scope.get(k))
                    .cloned()
                    .unwrap_or_else(|| format!("#{i}"));
                (name, Prec::Arg)
            }
            Term::Const(n) => (n.to_string(), Prec::Arg),
            Term::Universe(l) => (format!("Type {l}"), Prec::App),
            Term::Lambda(..) => {
                let mut names = Vec::new();
                let mut cur = t;
                let mut pushed = 0;
                while let Term::Lambda(hint, body) = cur {
                    let name = self.fresh(hint, body);
                    self.scope.push(name.clone());
                    pushed += 1;
                    names.push(name);
                    cur = body;
                }
                let body = self.print(cur, Prec::Term);
                self.scope.truncate(self.scope.len() - pushed);
                (format!("fun {} => {body}", names.join(" ")), Prec::Term)
            }
            Term::Let(hint, annot, bound, body) => {
                let annot = self.print(annot, Prec::Term);
                let bound = self.print(bound, Prec::Term);
                let mut name = self.fresh(hint, body);
                if name == "_" {
                    // a let binder is always named
                    name = self.fresh_named(hint);
                }
                let body = self.with(name.clone(), |p| p.print(body, Prec::Term));
                (format!("let {name} : {annot} := {bound} in {body}"), Prec::Term)
            }
            Term::Pi(hint, dom, cod) => {
                if uses_var(cod, 0) {
                    let name = self.fresh(hint, cod);
                    let dom = self.print(dom, Prec::Term);
                    let cod = self.with(name.clone(), |p| p.print(cod, Prec::Arrow));
                    (format!("({name} : {dom}) -> {cod}"), Prec::Arrow)
                } else {
                    let dom = self.print(dom, Prec::Prod);
                    let cod = self.with("_".to_owned(), |p| p.print(cod, Prec::Arrow));
                    (format!("{dom} -> {cod}"), Prec::Arrow)
                }
            }
            Term::Sigma(hint, fst, snd) => {
                if uses_var(snd, 0) {
                    let name = self.fresh(hint, snd);
                    let fst = self.print(fst, Prec::Term);
                    let snd = self.with(name.clone(), |p| p.print(snd, Prec::Prod));
                    (format!("({name} : {fst}) * {snd}"), Prec::Prod)
                } else {
                    let fst = self.print(fst, Prec::App);
                    let snd = self.with("_".to_owned(), |p| p.print(snd, Prec::Prod));
                    (format!("{fst} * {snd}"), Prec::Prod)
                }
            }
            Term::App(f, a) => {
                let f = self.print(f, Prec::App);
                let a = self.print(a, Prec::Arg);
                (format!("{f} {a}"), Prec::App)
            }
            Term::Pair(a, b) => {
                let mut items = vec![self.print(a, Prec::Term)];
                let mut rest = b;
                while let Term::Pair(a, b) = rest.as_ref() {
                    items.push(self.print(a, Prec::Term));
                    rest = b;
                }
                items.push(self.print(rest, Prec::Term));
                (format!("({})", items.join(", ")), Prec::Arg)
            }
            Term::Proj1(p) => (format!("{}.1", self.print(p, Prec::Arg)), Prec::Arg),
            Term::Proj2(p) => (format!("{}.2", self.print(p, Prec::Arg)), Prec::Arg),
            Term::Id(a, x, y) => {
                let parts = [a, x, y].map(|t| self.print(t, Prec::Arg));
                (format!("Id {}", parts.join(" ")), Prec::App)
            }
            Term::Refl(a) => (format!("refl {}", self.print(a, Prec::Arg)), Prec::App),
            Term::J(j) => {
                let parts = [&j.ty, &j.base, &j.motive, &j.case, &j.other, &j.path]
                    .map(|t| self.print(t, Prec::Arg));
                (format!("J {}", parts.join(" ")), Prec::App)
            }
        }
    }

    fn fresh_named(&self, hint: &str) -> String {
        // `fresh` against a body that uses the variable
        self.fresh(hint, &Term::Var(0))
    }
}

fn reserved_names(terms: &[&Term]) -> HashSet<String> {
    let mut consts = Vec::new();
    for t in terms {
        t.constants(&mut consts);
    }
    consts.into_iter().map(|n| n.to_string()).collect()
}

/// Print a term whose free variables are named by `scope` (innermost last).
pub fn print_term(t: &Term, scope: &[String]) -> String {
    let reserved = reserved_names(&[t]);
    Printer {
        scope: scope.to_vec(),
        reserved: &reserved,
    }
    .print(t, Prec::Term)
}

pub fn print_declaration(d: &Declaration) -> String {
    let mut terms = vec![d.ty.as_ref()];
    if let Some(b) = &d.body {
        terms.push(b.as_ref());
    }
    let reserved = reserved_names(&terms);
    let mut p = Printer {
        scope: Vec::new(),
        reserved: &reserved,
    };
    let ty = p.print(&d.ty, Prec::Term);
    match (&d.kind, &d.body) {
        (DeclKind::Definition, Some(body)) => {
            let body = p.print(body, Prec::Term);
            format!("def {} : {ty} :=\n  {body}\n", d.name)
        }
        _ => format!("axiom {} : {ty}\n", d.name),
    }
}

pub fn print_module(m: &SourceModule) -> String {
    m.declarations
        .iter()
        .map(print_declaration)
        .collect::<Vec<_>>()
        .join("\n")
}
