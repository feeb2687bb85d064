use thiserror::Error;

use crate::term::{OrderTerm, ValidationError};

/// Half-open byte range `[start, end)` into the parsed text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn at(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{message} at offset {}", span.start)]
    Syntax { span: SourceSpan, message: String },
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

impl ParseError {
    pub fn span(&self) -> Option<SourceSpan> {
        match self {
            ParseError::Syntax { span, .. } => Some(*span),
            ParseError::Invalid(_) => None,
        }
    }
}

const MAX_LITERAL: u64 = i32::MAX as u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Nat(u64),
    N,
    Z,
    Q,
    Plus,
    Star,
    Tilde,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Comma,
    Eof,
}

impl Tok {
    fn describe(self) -> &'static str {
        match self {
            Tok::Nat(_) => "number",
            Tok::N => "'N'",
            Tok::Z => "'Z'",
            Tok::Q => "'Q'",
            Tok::Plus => "'+'",
            Tok::Star => "'*'",
            Tok::Tilde => "'~'",
            Tok::LBrack => "'['",
            Tok::RBrack => "']'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::Comma => "','",
            Tok::Eof => "end of input",
        }
    }
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next_token(&mut self) -> Result<(Tok, SourceSpan), ParseError> {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = bytes.get(start) else {
            return Ok((Tok::Eof, SourceSpan::at(start, start)));
        };
        if c.is_ascii_digit() {
            let mut end = start;
            let mut value: u64 = 0;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                value = value.saturating_mul(10).saturating_add(u64::from(bytes[end] - b'0'));
                end += 1;
            }
            self.pos = end;
            let span = SourceSpan::at(start, end);
            if value > MAX_LITERAL {
                return Err(ParseError::Syntax { span, message: format!("numeric literal exceeds {MAX_LITERAL}") });
            }
            return Ok((Tok::Nat(value), span));
        }
        let tok = match c {
            b'N' => Tok::N,
            b'Z' => Tok::Z,
            b'Q' => Tok::Q,
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'~' => Tok::Tilde,
            b'[' => Tok::LBrack,
            b']' => Tok::RBrack,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            _ => {
                let width = self.text[start..].chars().next().map_or(1, char::len_utf8);
                return Err(ParseError::Syntax {
                    span: SourceSpan::at(start, start + width),
                    message: format!("unexpected character {:?}", &self.text[start..start + width]),
                });
            }
        };
        self.pos = start + 1;
        Ok((tok, SourceSpan::at(start, start + 1)))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    span: SourceSpan,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer { text, pos: 0 };
        let (tok, span) = lexer.next_token()?;
        Ok(Parser { lexer, tok, span })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, span) = self.lexer.next_token()?;
        self.tok = tok;
        self.span = span;
        Ok(())
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::Syntax { span: self.span, message: format!("expected {wanted}, found {}", self.tok.describe()) }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.tok == tok {
            self.bump()
        } else {
            Err(self.unexpected(tok.describe()))
        }
    }

    fn sum(&mut self) -> Result<OrderTerm, ParseError> {
        let mut acc = self.prod()?;
        while self.tok == Tok::Plus {
            self.bump()?;
            acc = OrderTerm::sum(acc, self.prod()?);
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<OrderTerm, ParseError> {
        let mut acc = self.post()?;
        while self.tok == Tok::Star {
            self.bump()?;
            acc = OrderTerm::product(acc, self.post()?);
        }
        Ok(acc)
    }

    fn post(&mut self) -> Result<OrderTerm, ParseError> {
        let mut acc = self.atom()?;
        while self.tok == Tok::Tilde {
            self.bump()?;
            acc = OrderTerm::reverse(acc);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<OrderTerm, ParseError> {
        let term = match self.tok {
            // Literals fit in u32 because MAX_LITERAL is checked by the lexer.
            Tok::Nat(n) => OrderTerm::finite(n as u32),
            Tok::N => OrderTerm::Omega,
            Tok::Z => OrderTerm::Zeta,
            Tok::Q => {
                self.bump()?;
                if self.tok != Tok::LBrack {
                    return Ok(OrderTerm::rationals());
                }
                self.bump()?;
                let mut blocks = vec![self.sum()?];
                while self.tok == Tok::Comma {
                    self.bump()?;
                    blocks.push(self.sum()?);
                }
                self.expect(Tok::RBrack)?;
                return Ok(OrderTerm::Shuffle(blocks));
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.sum()?;
                self.expect(Tok::RParen)?;
                return Ok(inner);
            }
            _ => return Err(self.unexpected("a term")),
        };
        self.bump()?;
        Ok(term)
    }
}

/// Parses and validates an order-type expression.
pub fn parse(text: &str) -> Result<OrderTerm, ParseError> {
    let mut parser = Parser::new(text)?;
    let term = parser.sum()?;
    if parser.tok != Tok::Eof {
        return Err(parser.unexpected("'+', '*', '~' or end of input"));
    }
    term.validate()?;
    Ok(term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::OrderTerm::*;

    #[test]
    fn parses_sum_with_shuffle() {
        assert_eq!(parse("Z + Q[Z]").unwrap(), OrderTerm::sum(Zeta, Shuffle(vec![Zeta])));
    }

    #[test]
    fn parses_nested_shuffle() {
        let t = parse("Q[N, Z + Q[N, Z]]").unwrap();
        assert_eq!(t, Shuffle(vec![Omega, OrderTerm::sum(Zeta, Shuffle(vec![Omega, Zeta]))]));
    }

    #[test]
    fn double_plus_reports_offset() {
        let err = parse("2 + + 3").unwrap_err();
        assert_eq!(err.span(), Some(SourceSpan { start: 4, end: 5 }));
    }

    #[test]
    fn literals_and_sugar() {
        assert_eq!(parse("0").unwrap(), Empty);
        assert_eq!(parse("1").unwrap(), Single);
        assert_eq!(parse("17").unwrap(), Finite(17));
        assert_eq!(parse("Q").unwrap(), Shuffle(vec![Single]));
        assert_eq!(parse("N~").unwrap(), OrderTerm::reverse(Omega));
        assert_eq!(parse("N~~").unwrap(), OrderTerm::reverse(OrderTerm::reverse(Omega)));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("1 + 2*N~").unwrap(),
            OrderTerm::sum(Single, OrderTerm::product(Finite(2), OrderTerm::reverse(Omega)))
        );
        assert_eq!(parse("2*N*Z").unwrap(), OrderTerm::product(OrderTerm::product(Finite(2), Omega), Zeta));
        assert_eq!(parse("(1 + N)~").unwrap(), OrderTerm::reverse(OrderTerm::sum(Single, Omega)));
    }

    #[test]
    fn rejects_large_literal() {
        let err = parse("1 + 2147483648").unwrap_err();
        assert_eq!(err.span(), Some(SourceSpan { start: 4, end: 14 }));
        assert!(parse("2147483647").is_ok());
    }

    #[test]
    fn forwards_validation_errors() {
        assert!(matches!(parse("Q[0]"), Err(ParseError::Invalid(ValidationError::EmptyShuffleBlock(_)))));
        assert!(matches!(parse("Q[N, 0*Z]"), Err(ParseError::Invalid(ValidationError::EmptyShuffleBlock(_)))));
    }

    #[test]
    fn error_spans_stay_in_input() {
        for bad in ["", "(", "Q[", "Q[]", "N +", "x", "N N", "Q[Z,", "1 + é", ")"] {
            let err = parse(bad).unwrap_err();
            let span = err.span().expect("syntax error");
            assert!(span.start <= span.end && span.end <= bad.len(), "{bad:?}: {span:?}");
        }
    }
}
