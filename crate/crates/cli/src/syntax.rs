//! Lexer, syntax tree and parser for presentation files.
//!
//! A file is a sequence of declarations. Inside braces, clauses are separated
//! by `;` or a line break, and a list continues onto the next line when the
//! line ends in a comma. Keywords are recognised by position only, so any
//! identifier may also be used as a name.

use std::fmt;

use thiserror::Error;

/// Bumped whenever the accepted language changes.
pub const GRAMMAR_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A name together with where it was written. Equality ignores the position
/// so that reparsed documents compare equal.
#[derive(Debug, Clone)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Self {
        Ident { name: name.into(), pos: Pos::default() }
    }
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Ident {}

/// `g.f.e`, stored in written order; the rightmost arrow acts first.
pub type Word = Vec<Ident>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: Ident,
    pub dom: Ident,
    pub cod: Ident,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Composition {
    /// No `relations` or `table` clause: the free category on the arrows.
    Free,
    Relations(Vec<Equation>),
    /// Explicit composites `g.f = h`.
    Table(Vec<Equation>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryDecl {
    pub name: Ident,
    pub objects: Vec<Ident>,
    pub arrows: Vec<ArrowDecl>,
    pub composition: Composition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorDecl {
    pub name: Ident,
    pub source: Ident,
    pub target: Ident,
    pub obj: Vec<(Ident, Ident)>,
    pub arr: Vec<(Word, Word)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    pub arrow: Word,
    /// `e -> e'` with `e` over the codomain and `e'` over the domain.
    pub pairs: Vec<(Ident, Ident)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafDecl {
    pub name: Ident,
    pub site: Ident,
    pub carriers: Vec<(Ident, Vec<Ident>)>,
    pub actions: Vec<Action>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceDecl {
    pub name: Ident,
    pub points: Vec<Ident>,
    pub opens: Vec<Vec<Ident>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Category(CategoryDecl),
    Functor(FunctorDecl),
    Presheaf(PresheafDecl),
    Space(SpaceDecl),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub decls: Vec<Decl>,
}

/// Everything that can go wrong between text and a resolved model. All of
/// them are input errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{pos}: parse error at `{token}`: {message}")]
    Parse { pos: Pos, token: String, message: String },
    #[error("{pos}: unknown {kind} `{token}`")]
    Resolution { pos: Pos, token: String, kind: &'static str },
    #[error("{pos}: `{token}` {message}")]
    Arity { pos: Pos, token: String, message: String },
    #[error("{pos}: `{token}`: {message}")]
    Invalid { pos: Pos, token: String, message: String },
}

impl DslError {
    pub fn kind(&self) -> &'static str {
        match self {
            DslError::Parse { .. } => "parse_error",
            DslError::Resolution { .. } => "resolution_error",
            DslError::Arity { .. } => "arity_error",
            DslError::Invalid { .. } => "invalid_input",
        }
    }

    pub fn pos(&self) -> Pos {
        match self {
            DslError::Parse { pos, .. }
            | DslError::Resolution { pos, .. }
            | DslError::Arity { pos, .. }
            | DslError::Invalid { pos, .. } => *pos,
        }
    }

    pub fn token(&self) -> &str {
        match self {
            DslError::Parse { token, .. }
            | DslError::Resolution { token, .. }
            | DslError::Arity { token, .. }
            | DslError::Invalid { token, .. } => token,
        }
    }

    pub(crate) fn unknown(id: &Ident, kind: &'static str) -> Self {
        DslError::Resolution { pos: id.pos, token: id.name.clone(), kind }
    }

    pub(crate) fn arity(id: &Ident, message: impl Into<String>) -> Self {
        DslError::Arity { pos: id.pos, token: id.name.clone(), message: message.into() }
    }

    pub(crate) fn invalid(id: &Ident, message: impl Into<String>) -> Self {
        DslError::Invalid { pos: id.pos, token: id.name.clone(), message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Punct(&'static str),
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => f.write_str(s),
            Tok::Punct(p) => f.write_str(p),
            Tok::Newline => f.write_str("end of line"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, DslError> {
    let mut out = Vec::new();
    for (l, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let pos = Pos { line: l + 1, col: i + 1 };
            let c = chars[i];
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if is_ident_char(c) {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
                continue;
            }
            let punct = match c {
                '-' if chars.get(i + 1) == Some(&'>') => "->",
                '{' => "{",
                '}' => "}",
                ':' => ":",
                ';' => ";",
                ',' => ",",
                '.' => ".",
                '=' => "=",
                _ => return Err(DslError::Parse { pos, token: c.to_string(), message: "unexpected character".into() }),
            };
            i += punct.len();
            out.push((Tok::Punct(punct), pos));
        }
        out.push((Tok::Newline, Pos { line: l + 1, col: chars.len() + 1 }));
    }
    let end = out.last().map(|(_, p)| *p).unwrap_or(Pos { line: 1, col: 1 });
    out.push((Tok::Eof, end));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> DslError {
        DslError::Parse { pos: self.pos(), token: self.peek().to_string(), message: message.into() }
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.at += 1;
        }
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(q) if *q == p)
    }

    fn eat(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &str) -> Result<(), DslError> {
        if self.eat(p) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{p}`")))
        }
    }

    fn ident(&mut self) -> Result<Ident, DslError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let pos = self.pos();
                self.at += 1;
                Ok(Ident { name, pos })
            }
            _ => Err(self.error("expected a name")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), DslError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.at += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected `{kw}`"))),
        }
    }

    fn word(&mut self) -> Result<Word, DslError> {
        let mut w = vec![self.ident()?];
        while self.eat(".") {
            w.push(self.ident()?);
        }
        Ok(w)
    }

    fn at_clause_end(&self) -> bool {
        matches!(self.peek(), Tok::Newline | Tok::Eof | Tok::Punct(";") | Tok::Punct("}"))
    }

    /// A comma-separated list, possibly empty, running to the end of the
    /// clause. A trailing comma carries the list over a line break.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, DslError>) -> Result<Vec<T>, DslError> {
        let mut out = Vec::new();
        if self.at_clause_end() {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if !self.eat(",") {
                return Ok(out);
            }
            self.skip_newlines();
        }
    }

    fn set(&mut self) -> Result<Vec<Ident>, DslError> {
        self.expect("{")?;
        let mut out = Vec::new();
        if self.eat("}") {
            return Ok(out);
        }
        loop {
            out.push(self.ident()?);
            if self.eat("}") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn end_clause(&mut self) -> Result<(), DslError> {
        match self.peek() {
            Tok::Newline | Tok::Punct(";") => {
                self.at += 1;
                Ok(())
            }
            Tok::Punct("}") => Ok(()),
            _ => Err(self.error("expected `;`, a line break or `}`")),
        }
    }

    /// Runs `clause` on each clause head until the closing brace.
    fn body(&mut self, mut clause: impl FnMut(&mut Self, Ident) -> Result<(), DslError>) -> Result<(), DslError> {
        self.skip_newlines();
        self.expect("{")?;
        loop {
            while matches!(self.peek(), Tok::Newline | Tok::Punct(";")) {
                self.at += 1;
            }
            if self.eat("}") {
                return Ok(());
            }
            if *self.peek() == Tok::Eof {
                return Err(self.error("expected `}`"));
            }
            let head = self.ident()?;
            clause(self, head)?;
            self.end_clause()?;
        }
    }

    fn unknown_clause(head: &Ident) -> DslError {
        DslError::Parse { pos: head.pos, token: head.name.clone(), message: "unknown clause".into() }
    }

    fn category(&mut self) -> Result<CategoryDecl, DslError> {
        let name = self.ident()?;
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut composition = Composition::Free;
        self.body(|p, head| {
            match head.name.as_str() {
                "objects" => {
                    p.expect(":")?;
                    objects.extend(p.list(Self::ident)?);
                }
                "arrows" => {
                    p.expect(":")?;
                    arrows.extend(p.list(|p| {
                        let name = p.ident()?;
                        p.expect(":")?;
                        let dom = p.ident()?;
                        p.expect("->")?;
                        let cod = p.ident()?;
                        Ok(ArrowDecl { name, dom, cod })
                    })?);
                }
                "relations" | "table" => {
                    p.expect(":")?;
                    let eqs = p.list(|p| {
                        let lhs = p.word()?;
                        p.expect("=")?;
                        let rhs = p.word()?;
                        Ok(Equation { lhs, rhs })
                    })?;
                    let table = head.name == "table";
                    match (&mut composition, table) {
                        (Composition::Free, false) => composition = Composition::Relations(eqs),
                        (Composition::Free, true) => composition = Composition::Table(eqs),
                        (Composition::Relations(v), false) | (Composition::Table(v), true) => v.extend(eqs),
                        _ => {
                            return Err(DslError::Parse {
                                pos: head.pos,
                                token: head.name,
                                message: "a category takes either relations or a table, not both".into(),
                            })
                        }
                    }
                }
                _ => return Err(Self::unknown_clause(&head)),
            }
            Ok(())
        })?;
        Ok(CategoryDecl { name, objects, arrows, composition })
    }

    fn functor(&mut self) -> Result<FunctorDecl, DslError> {
        let name = self.ident()?;
        self.expect(":")?;
        let source = self.ident()?;
        self.expect("->")?;
        let target = self.ident()?;
        let mut obj = Vec::new();
        let mut arr = Vec::new();
        self.body(|p, head| {
            match head.name.as_str() {
                "obj" => {
                    p.expect(":")?;
                    obj.extend(p.list(|p| {
                        let a = p.ident()?;
                        p.expect("->")?;
                        Ok((a, p.ident()?))
                    })?);
                }
                "arr" => {
                    p.expect(":")?;
                    arr.extend(p.list(|p| {
                        let a = p.word()?;
                        p.expect("->")?;
                        Ok((a, p.word()?))
                    })?);
                }
                _ => return Err(Self::unknown_clause(&head)),
            }
            Ok(())
        })?;
        Ok(FunctorDecl { name, source, target, obj, arr })
    }

    fn presheaf(&mut self) -> Result<PresheafDecl, DslError> {
        let name = self.ident()?;
        self.keyword("on")?;
        let site = self.ident()?;
        let mut carriers = Vec::new();
        let mut actions = Vec::new();
        self.body(|p, head| {
            match head.name.as_str() {
                "at" => {
                    let object = p.ident()?;
                    p.expect(":")?;
                    carriers.push((object, p.set()?));
                }
                "act" => {
                    let arrow = p.word()?;
                    p.expect(":")?;
                    let pairs = p.list(|p| {
                        let a = p.ident()?;
                        p.expect("->")?;
                        Ok((a, p.ident()?))
                    })?;
                    actions.push(Action { arrow, pairs });
                }
                _ => return Err(Self::unknown_clause(&head)),
            }
            Ok(())
        })?;
        Ok(PresheafDecl { name, site, carriers, actions })
    }

    fn space(&mut self) -> Result<SpaceDecl, DslError> {
        let name = self.ident()?;
        let mut points = Vec::new();
        let mut opens = Vec::new();
        self.body(|p, head| {
            match head.name.as_str() {
                "points" => {
                    p.expect(":")?;
                    points.extend(p.list(Self::ident)?);
                }
                "opens" => {
                    p.expect(":")?;
                    opens.extend(p.list(Self::set)?);
                }
                _ => return Err(Self::unknown_clause(&head)),
            }
            Ok(())
        })?;
        Ok(SpaceDecl { name, points, opens })
    }

    fn document(&mut self) -> Result<Document, DslError> {
        let mut decls = Vec::new();
        loop {
            self.skip_newlines();
            let kw = match self.peek() {
                Tok::Eof => return Ok(Document { decls }),
                Tok::Ident(s) => s.clone(),
                _ => return Err(self.error("expected a declaration")),
            };
            self.at += 1;
            let decl = match kw.as_str() {
                "category" => Decl::Category(self.category()?),
                "functor" => Decl::Functor(self.functor()?),
                "presheaf" => Decl::Presheaf(self.presheaf()?),
                "space" => Decl::Space(self.space()?),
                _ => {
                    self.at -= 1;
                    return Err(self.error("expected `category`, `functor`, `presheaf` or `space`"));
                }
            };
            decls.push(decl);
            match self.peek() {
                Tok::Newline | Tok::Eof => {}
                _ => return Err(self.error("expected a line break after `}`")),
            }
        }
    }
}

pub fn parse(text: &str) -> Result<Document, DslError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    let doc = p.document()?;
    debug_assert!(p.bump().0 == Tok::Eof);
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sierpinski_literal() {
        let doc = parse("category S { objects: A, B ; arrows: f: A -> B }").unwrap();
        let Decl::Category(c) = &doc.decls[0] else { panic!() };
        assert_eq!(c.objects.len(), 2);
        assert_eq!(c.arrows[0], ArrowDecl { name: Ident::new("f"), dom: Ident::new("A"), cod: Ident::new("B") });
        assert_eq!(c.composition, Composition::Free);
    }

    #[test]
    fn multi_line_lists_and_comments() {
        let text = "# graphs\ncategory G {\n  objects: V, E\n  arrows: s: V -> E,  # source\n          t: V -> E\n}\n";
        let doc = parse(text).unwrap();
        let Decl::Category(c) = &doc.decls[0] else { panic!() };
        assert_eq!(c.arrows.len(), 2);
        assert_eq!(c.arrows[1].name.pos, Pos { line: 5, col: 11 });
    }

    #[test]
    fn relations_and_table_are_exclusive() {
        let err =
            parse("category C { objects: X ; arrows: e: X -> X ; relations: e.e = e ; table: e.e = e }").unwrap_err();
        assert_eq!(err.kind(), "parse_error");
        assert_eq!(err.token(), "table");
    }

    #[test]
    fn errors_point_at_the_token() {
        let err = parse("category C {\n  objects: A\n  arrows: f A -> A\n}").unwrap_err();
        assert_eq!(err.pos(), Pos { line: 3, col: 13 });
        assert_eq!(err.token(), "A");
        let err = parse("space X { points: p ; opens: {p} {} }").unwrap_err();
        assert_eq!(err.token(), "{");
        let err = parse("category C { objects: A").unwrap_err();
        assert_eq!(err.token(), "end of input");
        let err = parse("category C { objects: A ? }").unwrap_err();
        assert_eq!(err.token(), "?");
    }

    #[test]
    fn presheaf_and_functor() {
        let text = "functor p : T -> S { obj: x -> B ; arr: id_x -> id_B }\n\
                    presheaf P on S { at A: {u, v} ; at B: {w} ; act f: w -> u }";
        let doc = parse(text).unwrap();
        let Decl::Presheaf(p) = &doc.decls[1] else { panic!() };
        assert_eq!(p.carriers[0].1.len(), 2);
        assert_eq!(p.actions[0].pairs, vec![(Ident::new("w"), Ident::new("u"))]);
        let Decl::Functor(f) = &doc.decls[0] else { panic!() };
        assert_eq!(f.source.name, "T");
    }
}
