use std::collections::BTreeMap;

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use super::SpecError;
use crate::algebra::AlgebraKind;

/// Recursive-descent parser; every decision needs one token of lookahead.
struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, SpecError> {
        let t = self.peek();
        Err(SpecError::Syntax { span: t.span, message: format!("expected {expected}, found {}", t.tok.describe()) })
    }

    fn expect(&mut self, tok: Tok) -> Result<SourceSpan, SpecError> {
        if self.peek().tok == tok {
            Ok(self.next().span)
        } else {
            self.error(&tok.describe())
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<SourceSpan, SpecError> {
        if self.at_keyword(kw) {
            Ok(self.next().span)
        } else {
            self.error(&format!("`{kw}`"))
        }
    }

    fn name(&mut self) -> Result<Name, SpecError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok(Spanned::new(s, self.next().span))
            }
            _ => self.error("a name"),
        }
    }

    fn elem(&mut self) -> Result<Element, SpecError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(s) | Tok::Nat(s) => {
                self.next();
                Ok(Spanned::new(Elem::Atom(s), t.span))
            }
            Tok::LBrace => {
                let items = self.set()?;
                Ok(Spanned::new(Elem::Set(items.into_iter().map(|e| e.value).collect()), t.span))
            }
            Tok::LParen => {
                self.next();
                let mut items = vec![self.elem()?.value];
                while self.peek().tok == Tok::Comma {
                    self.next();
                    items.push(self.elem()?.value);
                }
                self.expect(Tok::RParen)?;
                Ok(Spanned::new(Elem::Tuple(items), t.span))
            }
            _ => self.error("an element"),
        }
    }

    /// `{ item (, item)* }` with an optional empty body.
    fn braced<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, SpecError>) -> Result<Vec<T>, SpecError> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        if self.peek().tok == Tok::RBrace {
            self.next();
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            match self.peek().tok {
                Tok::Comma => {
                    self.next();
                }
                Tok::RBrace => {
                    self.next();
                    return Ok(out);
                }
                _ => return self.error("`,` or `}`"),
            }
        }
    }

    fn set(&mut self) -> Result<Vec<Element>, SpecError> {
        self.braced(Self::elem)
    }

    fn pair(&mut self) -> Result<(Element, Element), SpecError> {
        self.expect(Tok::LParen)?;
        let a = self.elem()?;
        self.expect(Tok::Comma)?;
        let b = self.elem()?;
        self.expect(Tok::RParen)?;
        Ok((a, b))
    }

    fn triple(&mut self) -> Result<(Element, Element, Element), SpecError> {
        self.expect(Tok::LParen)?;
        let a = self.elem()?;
        self.expect(Tok::Comma)?;
        let b = self.elem()?;
        self.expect(Tok::Comma)?;
        let c = self.elem()?;
        self.expect(Tok::RParen)?;
        Ok((a, b, c))
    }

    fn maplet(&mut self) -> Result<(Element, Element), SpecError> {
        let a = self.elem()?;
        self.expect(Tok::Arrow)?;
        Ok((a, self.elem()?))
    }

    fn trimaplet(&mut self) -> Result<((Element, Element), Element), SpecError> {
        let p = self.pair()?;
        self.expect(Tok::Arrow)?;
        Ok((p, self.elem()?))
    }

    /// `key = <value> ;`
    fn field<T>(&mut self, key: &str, value: impl FnOnce(&mut Self) -> Result<T, SpecError>) -> Result<T, SpecError> {
        self.keyword(key)?;
        self.expect(Tok::Eq)?;
        let v = value(self)?;
        self.expect(Tok::Semi)?;
        Ok(v)
    }

    fn kind(&mut self) -> Result<Spanned<AlgebraKind>, SpecError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Ident(s) => match s.parse::<AlgebraKind>() {
                Ok(k) => {
                    self.next();
                    Ok(Spanned::new(k, t.span))
                }
                Err(_) => self.error("a kind (possibility, monadic, sufficiency, diversity, bdl, dsa, rdsa, demorgan, r2a)"),
            },
            _ => self.error("a kind"),
        }
    }

    fn command(&mut self) -> Result<Spanned<Command>, SpecError> {
        let t = self.peek().clone();
        if let Tok::Ident(s) = &t.tok {
            if let Some(c) = Command::ALL.into_iter().find(|c| c.name() == s) {
                self.next();
                return Ok(Spanned::new(c, t.span));
            }
        }
        self.error("a command (axioms, cm, cs, roundtrip-algebra, roundtrip-frame, approx)")
    }

    fn space(&mut self) -> Result<SpaceDecl, SpecError> {
        self.keyword("space")?;
        let name = self.name()?;
        self.expect(Tok::LBrace)?;
        let universe = self.field("universe", Self::set)?;
        let classes = self.field("classes", |p| {
            p.braced(|p| {
                let span = p.peek().span;
                Ok(Spanned::new(p.set()?, span))
            })
        })?;
        self.expect(Tok::RBrace)?;
        Ok(SpaceDecl { name, universe, classes })
    }

    fn frame(&mut self) -> Result<FrameDecl, SpecError> {
        self.keyword("frame")?;
        let name = self.name()?;
        self.expect(Tok::LBrace)?;
        let kind = self.field("kind", Self::kind)?;
        let universe = self.field("universe", Self::set)?;
        let pairs = |p: &mut Self| p.braced(Self::pair);
        let order = if self.at_keyword("order") { Some(self.field("order", pairs)?) } else { None };
        let rel = if self.at_keyword("rel") { Some(self.field("rel", pairs)?) } else { None };
        let ternary =
            if self.at_keyword("ternary") { Some(self.field("ternary", |p| p.braced(Self::triple))?) } else { None };
        let mut funs = Vec::new();
        while self.at_keyword("fun") {
            self.next();
            let n = self.name()?;
            self.expect(Tok::Eq)?;
            let m = self.braced(Self::maplet)?;
            self.expect(Tok::Semi)?;
            funs.push((n, m));
        }
        let mut subsets = Vec::new();
        while self.at_keyword("subset") {
            self.next();
            let n = self.name()?;
            self.expect(Tok::Eq)?;
            let s = self.set()?;
            self.expect(Tok::Semi)?;
            subsets.push((n, s));
        }
        if self.peek().tok != Tok::RBrace {
            return self.error("`order`, `rel`, `ternary`, `fun`, `subset` or `}` in this position");
        }
        self.next();
        Ok(FrameDecl { name, kind, universe, order, rel, ternary, funs, subsets })
    }

    fn algebra(&mut self) -> Result<AlgebraDecl, SpecError> {
        self.keyword("algebra")?;
        let name = self.name()?;
        self.expect(Tok::LBrace)?;
        let kind = self.field("kind", Self::kind)?;
        let carrier = if self.at_keyword("powerset") {
            Carrier::Powerset(self.field("powerset", Self::set)?)
        } else if self.at_keyword("carrier") {
            let carrier = self.field("carrier", Self::set)?;
            let order = self.field("order", |p| p.braced(Self::pair))?;
            Carrier::Explicit { carrier, order }
        } else {
            return self.error("`powerset` or `carrier`");
        };
        let mut ops = Vec::new();
        while self.at_keyword("op") {
            self.next();
            let n = self.name()?;
            self.expect(Tok::Eq)?;
            let m = self.braced(Self::maplet)?;
            self.expect(Tok::Semi)?;
            ops.push((n, m));
        }
        let mut binops = Vec::new();
        while self.at_keyword("binop") {
            self.next();
            let n = self.name()?;
            self.expect(Tok::Eq)?;
            let m = self.braced(Self::trimaplet)?;
            self.expect(Tok::Semi)?;
            binops.push((n, m));
        }
        let mut consts = Vec::new();
        while self.at_keyword("const") {
            self.next();
            let n = self.name()?;
            self.expect(Tok::Eq)?;
            let e = self.elem()?;
            self.expect(Tok::Semi)?;
            consts.push((n, e));
        }
        if self.peek().tok != Tok::RBrace {
            return self.error("`op`, `binop`, `const` or `}` in this position");
        }
        self.next();
        Ok(AlgebraDecl { name, kind, carrier, ops, binops, consts })
    }

    fn check(&mut self) -> Result<CheckDecl, SpecError> {
        self.keyword("check")?;
        let name = self.name()?;
        self.expect(Tok::LBrace)?;
        let command = self.field("run", Self::command)?;
        let mut on = vec![self.field("on", Self::name)?];
        while self.at_keyword("on") {
            on.push(self.field("on", Self::name)?);
        }
        let kind = if self.at_keyword("kind") { Some(self.field("kind", Self::kind)?) } else { None };
        self.expect(Tok::RBrace)?;
        Ok(CheckDecl { name, command, on, kind })
    }

    fn document(&mut self) -> Result<Document, SpecError> {
        let mut declarations = Vec::new();
        loop {
            let decl = match &self.peek().tok {
                Tok::Eof => break,
                Tok::Ident(k) if k == "space" => Decl::Space(self.space()?),
                Tok::Ident(k) if k == "frame" => Decl::Frame(self.frame()?),
                Tok::Ident(k) if k == "algebra" => Decl::Algebra(self.algebra()?),
                Tok::Ident(k) if k == "check" => Decl::Check(self.check()?),
                _ => return self.error("`space`, `frame`, `algebra` or `check`"),
            };
            declarations.push(decl);
        }
        Ok(Document { declarations })
    }
}

/// Parses the syntax and resolves names: every name is declared once and
/// every `on` target refers to an earlier declaration.
pub(crate) fn parse_syntax(text: &str) -> Result<Document, SpecError> {
    let mut p = Parser { tokens: tokenize(text)?, pos: 0 };
    let doc = p.document()?;
    let mut seen: BTreeMap<&str, SourceSpan> = BTreeMap::new();
    for d in &doc.declarations {
        if let Decl::Check(c) = d {
            for t in &c.on {
                if !seen.contains_key(t.value.as_str()) {
                    return Err(SpecError::DanglingReference { name: t.value.clone(), span: t.span });
                }
            }
        }
        let n = d.name();
        if let Some(first) = seen.insert(&n.value, n.span) {
            return Err(SpecError::DuplicateName { name: n.value.clone(), span: n.span, first });
        }
    }
    Ok(doc)
}

/// Parses a lone element, e.g. a label produced by the engine.
pub(crate) fn parse_element(text: &str) -> Result<Elem, SpecError> {
    let mut p = Parser { tokens: tokenize(text)?, pos: 0 };
    let e = p.elem()?;
    if p.peek().tok != Tok::Eof {
        return p.error("end of input");
    }
    Ok(e.value)
}
