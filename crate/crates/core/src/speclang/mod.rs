//! A small declarative language for spaces, frames, algebras and checks.
//!
//! ```text
//! space S {
//!   universe = {1, 2, 3};
//!   classes = {{1, 2}, {3}};
//! }
//!
//! check c {
//!   run = approx;
//!   on = S;
//! }
//! ```
//!
//! Parsing runs in two passes: [`parse_document`] checks the grammar and
//! name resolution, [`elaborate`] builds engine values and reports
//! semantic errors. Both carry 1-based line/column spans.

mod ast;
mod elaborate;
mod lexer;
mod parser;
mod printer;
mod render;

use thiserror::Error;

pub use ast::{
    AlgebraDecl, Carrier, CheckDecl, Command, Decl, Document, Elem, Element, FrameDecl, Name, SourceSpan, SpaceDecl,
    Spanned,
};
pub use elaborate::{elaborate, Entity, Model};
pub use printer::{algebra_decl, frame_decl, print_algebra, print_document, print_frame, print_space, space_decl};
pub use render::{
    check_report_from_record, escape, parse_machine, render_report, unescape, Field, Format, MachineError, Record,
    Renderable,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: SourceSpan, message: String },
    #[error("{span}: `{name}` is already declared at {first}")]
    DuplicateName { name: String, span: SourceSpan, first: SourceSpan },
    #[error("{span}: `{name}` does not refer to an earlier declaration")]
    DanglingReference { name: String, span: SourceSpan },
    #[error("{span}: {message}")]
    Semantic { span: SourceSpan, message: String },
}

impl SpecError {
    pub fn code(&self) -> &'static str {
        match self {
            SpecError::Syntax { .. } => "syntax-error",
            SpecError::DuplicateName { .. } => "duplicate-name",
            SpecError::DanglingReference { .. } => "dangling-reference",
            SpecError::Semantic { .. } => "semantic-error",
        }
    }

    pub fn span(&self) -> Option<SourceSpan> {
        match self {
            SpecError::Syntax { span, .. }
            | SpecError::DuplicateName { span, .. }
            | SpecError::DanglingReference { span, .. }
            | SpecError::Semantic { span, .. } => Some(*span),
        }
    }
}

/// Parses one element literal such as `a`, `{1,2}` or `({},{1})`.
pub fn parse_elem(text: &str) -> Result<Elem, SpecError> {
    parser::parse_element(text)
}

/// Grammar and name resolution only.
pub fn parse_document(text: &str) -> Result<Document, SpecError> {
    parser::parse_syntax(text)
}

/// Parses and elaborates.
pub fn load(text: &str) -> Result<(Document, Model), SpecError> {
    let doc = parse_document(text)?;
    let model = elaborate(&doc)?;
    Ok((doc, model))
}
