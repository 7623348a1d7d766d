//! Tokens shared by the formula grammar and the contract specification language.

use std::fmt;

use thiserror::Error;

/// A location in source text. Lines and columns are 1-based; columns count chars.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Position {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Position,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Position, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Bang,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    Equals,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(name) => write!(f, "`{name}`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Pipe => f.write_str("`|`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::DoubleArrow => f.write_str("`<->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Position,
}

pub fn is_identifier(text: &str) -> bool {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `text` into tokens. `//` and `#` start comments running to end of line.
/// The returned vector always ends with an `Eof` token.
pub fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    let mut line = 1;
    let mut column = 1;

    while let Some(&(offset, c)) = chars.peek() {
        let pos = Position {
            offset,
            line,
            column,
        };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::CharIndices<'_>>| {
            let (_, c) = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };

        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' || (c == '/' && text[offset..].starts_with("//")) {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    name.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            tokens.push(Token {
                tok: Tok::Ident(name),
                pos,
            });
            continue;
        }

        let rest = &text[offset..];
        let (tok, len) = if rest.starts_with("<->") {
            (Tok::DoubleArrow, 3)
        } else if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else {
            let tok = match c {
                '!' => Tok::Bang,
                '&' => Tok::Amp,
                '|' => Tok::Pipe,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                ':' => Tok::Colon,
                '=' => Tok::Equals,
                other => {
                    return Err(ParseError::new(
                        pos,
                        format!("unexpected character `{other}`"),
                    ))
                }
            };
            (tok, 1)
        };
        for _ in 0..len {
            bump(&mut chars);
        }
        tokens.push(Token { tok, pos });
    }

    tokens.push(Token {
        tok: Tok::Eof,
        pos: Position {
            offset: text.len(),
            line,
            column,
        },
    });
    Ok(tokens)
}

/// Read position over a token vector produced by [`lex`].
#[derive(Debug, Clone)]
pub struct Cursor<'a> {
    tokens: &'a [Token],
    idx: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(tokens: &'a [Token]) -> Self {
        debug_assert!(matches!(tokens.last().map(|t| &t.tok), Some(Tok::Eof)));
        Cursor { tokens, idx: 0 }
    }

    pub fn peek(&self) -> &'a Token {
        &self.tokens[self.idx.min(self.tokens.len() - 1)]
    }

    pub fn peek_nth(&self, n: usize) -> &'a Token {
        &self.tokens[(self.idx + n).min(self.tokens.len() - 1)]
    }

    pub fn advance(&mut self) -> &'a Token {
        let tok = self.peek();
        if self.idx < self.tokens.len() - 1 {
            self.idx += 1;
        }
        tok
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.advance();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<&'a Token, ParseError> {
        let next = self.peek();
        if &next.tok == tok {
            Ok(self.advance())
        } else {
            Err(ParseError::new(
                next.pos,
                format!("expected {tok}, found {}", next.tok),
            ))
        }
    }

    pub fn expect_ident(&mut self, what: &str) -> Result<(&'a str, Position), ParseError> {
        let next = self.peek();
        match &next.tok {
            Tok::Ident(name) => {
                self.advance();
                Ok((name.as_str(), next.pos))
            }
            other => Err(ParseError::new(
                next.pos,
                format!("expected {what}, found {other}"),
            )),
        }
    }

    pub fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_operators_and_positions() {
        let toks = lex("a <-> !b\n  -> c").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("a".into()),
                Tok::DoubleArrow,
                Tok::Bang,
                Tok::Ident("b".into()),
                Tok::Arrow,
                Tok::Ident("c".into()),
                Tok::Eof
            ]
        );
        assert_eq!(toks[4].pos.line, 2);
        assert_eq!(toks[4].pos.column, 3);
    }

    #[test]
    fn skips_comments() {
        let toks = lex("x // note\n# other\ny").unwrap();
        assert_eq!(toks.len(), 3);
        assert_eq!(toks[1].pos.line, 3);
    }

    #[test]
    fn rejects_stray_characters() {
        let err = lex("x $ y").unwrap_err();
        assert_eq!((err.pos.line, err.pos.column), (1, 3));
    }
}
