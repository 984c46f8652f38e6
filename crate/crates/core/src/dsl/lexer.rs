use super::ast::{Component, Span};
use super::error::{DslError, ErrorCode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Integer or decimal literal, kept as written.
    Number(String),
    Ident(String),
    Component(Component),
    Let,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Equals,
    Semi,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Number(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Component(c) => format!("component `_{}`", c.name()),
            Tok::Let => "`let`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, DslError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let ch = chars[i];
        let start = Span::point(line, col);
        if ch == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if ch == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let take = |i: &mut usize, col: &mut usize, pred: &dyn Fn(char) -> bool| -> String {
            let from = *i;
            while *i < chars.len() && pred(chars[*i]) {
                *i += 1;
                *col += 1;
            }
            chars[from..*i].iter().collect()
        };
        let tok = if ch.is_ascii_digit() {
            let mut text = take(&mut i, &mut col, &|c| c.is_ascii_digit());
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                i += 1;
                col += 1;
                text.push('.');
                text.push_str(&take(&mut i, &mut col, &|c| c.is_ascii_digit()));
            }
            Tok::Number(text)
        } else if ch.is_ascii_alphabetic() {
            let word = take(&mut i, &mut col, &|c| c.is_ascii_alphanumeric());
            if word == "let" {
                Tok::Let
            } else {
                Tok::Ident(word)
            }
        } else if ch == '_' {
            i += 1;
            col += 1;
            let word = take(&mut i, &mut col, &|c| c.is_ascii_alphanumeric());
            match Component::from_name(&word) {
                Some(c) => Tok::Component(c),
                None => {
                    return Err(DslError::new(
                        ErrorCode::Syntax,
                        start,
                        format!("unknown component `_{word}`; expected _x, _y, _z, _plus or _minus"),
                    ))
                }
            }
        } else {
            let tok = match ch {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '=' => Tok::Equals,
                ';' => Tok::Semi,
                other => {
                    return Err(DslError::new(
                        ErrorCode::Syntax,
                        start,
                        format!("unexpected character `{other}`"),
                    ))
                }
            };
            i += 1;
            col += 1;
            tok
        };
        out.push(Token {
            tok,
            span: start.to(line, col),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span::point(line, col),
    });
    Ok(out)
}
