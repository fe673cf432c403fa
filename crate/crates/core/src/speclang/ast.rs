use std::fmt;

use crate::algebra::AlgebraKind;
use crate::labels::{canonical_cmp, set_literal, tuple_literal};

/// 1-based position of a token or construct in the input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A value with its source position. Equality ignores the position.
#[derive(Clone, Debug)]
pub struct Spanned<T> {
    pub value: T,
    pub span: SourceSpan,
}

impl<T> Spanned<T> {
    pub fn new(value: T, span: SourceSpan) -> Self {
        Spanned { value, span }
    }
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Eq> Eq for Spanned<T> {}

/// An element name: an identifier or natural, a set of elements, or a tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Atom(String),
    Set(Vec<Elem>),
    Tuple(Vec<Elem>),
}

impl Elem {
    /// The canonical label: set members sorted and deduplicated.
    pub fn label(&self) -> String {
        match self {
            Elem::Atom(a) => a.clone(),
            Elem::Set(items) => set_literal(items.iter().map(Elem::label)),
            Elem::Tuple(items) => tuple_literal(items.iter().map(Elem::label)),
        }
    }
}

pub type Name = Spanned<String>;
pub type Element = Spanned<Elem>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Axioms,
    Cm,
    Cs,
    RoundtripAlgebra,
    RoundtripFrame,
    Approx,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Axioms,
        Command::Cm,
        Command::Cs,
        Command::RoundtripAlgebra,
        Command::RoundtripFrame,
        Command::Approx,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Axioms => "axioms",
            Command::Cm => "cm",
            Command::Cs => "cs",
            Command::RoundtripAlgebra => "roundtrip-algebra",
            Command::RoundtripFrame => "roundtrip-frame",
            Command::Approx => "approx",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceDecl {
    pub name: Name,
    pub universe: Vec<Element>,
    pub classes: Vec<Spanned<Vec<Element>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameDecl {
    pub name: Name,
    pub kind: Spanned<AlgebraKind>,
    pub universe: Vec<Element>,
    pub order: Option<Vec<(Element, Element)>>,
    pub rel: Option<Vec<(Element, Element)>>,
    pub ternary: Option<Vec<(Element, Element, Element)>>,
    pub funs: Vec<(Name, Vec<(Element, Element)>)>,
    pub subsets: Vec<(Name, Vec<Element>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    Powerset(Vec<Element>),
    Explicit { carrier: Vec<Element>, order: Vec<(Element, Element)> },
}

/// `(a,b) -> c` entries of a binary operation table.
pub type BinaryMaplets = Vec<((Element, Element), Element)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDecl {
    pub name: Name,
    pub kind: Spanned<AlgebraKind>,
    pub carrier: Carrier,
    pub ops: Vec<(Name, Vec<(Element, Element)>)>,
    pub binops: Vec<(Name, BinaryMaplets)>,
    pub consts: Vec<(Name, Element)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckDecl {
    pub name: Name,
    pub command: Spanned<Command>,
    pub on: Vec<Name>,
    pub kind: Option<Spanned<AlgebraKind>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Space(SpaceDecl),
    Frame(FrameDecl),
    Algebra(AlgebraDecl),
    Check(CheckDecl),
}

impl Decl {
    pub fn name(&self) -> &Name {
        match self {
            Decl::Space(d) => &d.name,
            Decl::Frame(d) => &d.name,
            Decl::Algebra(d) => &d.name,
            Decl::Check(d) => &d.name,
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Decl::Space(_) => "space",
            Decl::Frame(_) => "frame",
            Decl::Algebra(_) => "algebra",
            Decl::Check(_) => "check",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub declarations: Vec<Decl>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.declarations.iter().find(|d| d.name().value == name)
    }
}

pub(crate) fn cmp_labels(a: &str, b: &str) -> std::cmp::Ordering {
    canonical_cmp(a, b)
}
