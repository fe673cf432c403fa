use super::ast::SourceSpan;
use super::SpecError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Identifier or keyword; may contain `-` between alphanumerics.
    Ident(String),
    Nat(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Eq,
    Arrow,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Nat(s) => format!("`{s}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == ':' || c == '\''
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, SpecError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let start = SourceSpan { line, column: col, length: 1 };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let single = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, span: start });
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Token { tok: Tok::Arrow, span: SourceSpan { length: 2, ..start } });
            i += 2;
            col += 2;
            continue;
        }
        if c.is_ascii_digit() || is_ident_start(c) {
            let mut j = i;
            let digits = c.is_ascii_digit();
            loop {
                j += 1;
                match chars.get(j) {
                    Some(&d) if digits && d.is_ascii_digit() => {}
                    Some(&d) if !digits && is_ident_char(d) => {}
                    Some(&'-') if !digits && chars.get(j + 1).is_some_and(|d| d.is_ascii_alphanumeric()) => {}
                    _ => break,
                }
            }
            if digits && chars.get(j).is_some_and(|&d| is_ident_start(d)) {
                return Err(SpecError::Syntax {
                    span: SourceSpan { length: j - i + 1, ..start },
                    message: "a natural number cannot be followed by a letter".into(),
                });
            }
            let word: String = chars[i..j].iter().collect();
            let tok = if digits { Tok::Nat(word) } else { Tok::Ident(word) };
            out.push(Token { tok, span: SourceSpan { length: j - i, ..start } });
            col += j - i;
            i = j;
            continue;
        }
        return Err(SpecError::Syntax { span: start, message: format!("unexpected character `{c}`") });
    }
    out.push(Token { tok: Tok::Eof, span: SourceSpan { line, column: col, length: 0 } });
    Ok(out)
}
