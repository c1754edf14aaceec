use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown token starting with {0:?}")]
    UnknownToken(char),
    #[error("numeric literal out of range")]
    NumberOutOfRange,
    #[error("unexpected {0}")]
    Unexpected(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Atom(u32),
    True,
    False,
    Not,
    Box,
    Dia,
    BoxN(usize),
    DiaN(usize),
    BoxLt(usize),
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Atom(i) => format!("atom p{i}"),
            Token::True => "'true'".into(),
            Token::False => "'false'".into(),
            Token::Not => "'~'".into(),
            Token::Box => "'[]'".into(),
            Token::Dia => "'<>'".into(),
            Token::BoxN(k) => format!("'[{k}]'"),
            Token::DiaN(k) => format!("'<{k}>'"),
            Token::BoxLt(k) => format!("'[<{k}]'"),
            Token::And => "'&'".into(),
            Token::Or => "'|'".into(),
            Token::Implies => "'->'".into(),
            Token::Iff => "'<->'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, position: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { position, kind }
    }

    fn digits(&mut self) -> Option<(usize, &'a str)> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        // digits are ASCII
        Some((
            start,
            std::str::from_utf8(&self.src[start..self.pos]).unwrap(),
        ))
    }

    fn number<T: std::str::FromStr>(&mut self) -> Result<Option<T>, ParseError> {
        match self.digits() {
            None => Ok(None),
            Some((start, text)) => text
                .parse()
                .map(Some)
                .map_err(|_| self.err(start, ParseErrorKind::NumberOutOfRange)),
        }
    }

    fn expect_byte(&mut self, b: u8, start: usize) -> Result<(), ParseError> {
        if self.src.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(start, ParseErrorKind::UnknownToken(self.src[start] as char)))
        }
    }

    fn tokenize(mut self) -> Result<Vec<(usize, Token)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let start = self.pos;
            let c = self.src[self.pos];
            if c.is_ascii_whitespace() {
                self.pos += 1;
                continue;
            }
            let rest = &self.src[self.pos..];
            let tok = if rest.starts_with(b"->") {
                self.pos += 2;
                Token::Implies
            } else if rest.starts_with(b"<->") {
                self.pos += 3;
                Token::Iff
            } else if rest.starts_with(b"<>") {
                self.pos += 2;
                Token::Dia
            } else if rest.starts_with(b"[]") {
                self.pos += 2;
                Token::Box
            } else if rest.starts_with(b"[<") {
                self.pos += 2;
                let k = self
                    .number()?
                    .ok_or_else(|| self.err(start, ParseErrorKind::UnknownToken('[')))?;
                self.expect_byte(b']', start)?;
                Token::BoxLt(k)
            } else if c == b'[' {
                self.pos += 1;
                let k = self
                    .number()?
                    .ok_or_else(|| self.err(start, ParseErrorKind::UnknownToken('[')))?;
                self.expect_byte(b']', start)?;
                Token::BoxN(k)
            } else if c == b'<' {
                self.pos += 1;
                let k = self
                    .number()?
                    .ok_or_else(|| self.err(start, ParseErrorKind::UnknownToken('<')))?;
                self.expect_byte(b'>', start)?;
                Token::DiaN(k)
            } else if c == b'p' && rest.get(1).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
                Token::Atom(self.number()?.expect("digit checked above"))
            } else if rest.starts_with(b"true") && !ident_continues(rest, 4) {
                self.pos += 4;
                Token::True
            } else if rest.starts_with(b"false") && !ident_continues(rest, 5) {
                self.pos += 5;
                Token::False
            } else {
                self.pos += 1;
                match c {
                    b'~' => Token::Not,
                    b'&' => Token::And,
                    b'|' => Token::Or,
                    b'(' => Token::LParen,
                    b')' => Token::RParen,
                    _ => {
                        let ch = std::str::from_utf8(&self.src[start..])
                            .ok()
                            .and_then(|s| s.chars().next())
                            .unwrap_or(c as char);
                        return Err(self.err(start, ParseErrorKind::UnknownToken(ch)));
                    }
                }
            };
            out.push((start, tok));
        }
        Ok(out)
    }
}

fn ident_continues(rest: &[u8], at: usize) -> bool {
    rest.get(at)
        .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.tokens.get(self.pos) {
            Some((position, t)) => ParseError {
                position: *position,
                kind: ParseErrorKind::Unexpected(t.describe()),
            },
            None => ParseError {
                position: self.end,
                kind: ParseErrorKind::UnexpectedEnd,
            },
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implication()?;
        while self.eat(&Token::Iff) {
            lhs = Formula::iff(lhs, self.implication()?);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Token::Implies) {
            Ok(Formula::implies(lhs, self.implication()?))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Token::Or) {
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::And) {
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.unexpected());
        };
        let wrap: fn(usize, Formula) -> Formula = match tok {
            Token::Not => |_, f| Formula::not(f),
            Token::Box => |_, f| Formula::boxed(f),
            Token::Dia => |_, f| Formula::dia(f),
            Token::BoxN(_) => Formula::box_n,
            Token::DiaN(_) => Formula::dia_n,
            Token::BoxLt(_) => Formula::box_lt,
            _ => return self.primary(),
        };
        let k = match tok {
            Token::BoxN(k) | Token::DiaN(k) | Token::BoxLt(k) => k,
            _ => 0,
        };
        self.pos += 1;
        let operand = self.unary()?;
        Ok(wrap(k, operand))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let f = match self.peek() {
            Some(Token::Atom(i)) => Formula::Atom(*i),
            Some(Token::True) => Formula::Top,
            Some(Token::False) => Formula::Bottom,
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.iff()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.unexpected());
                }
                return Ok(inner);
            }
            _ => return Err(self.unexpected()),
        };
        self.pos += 1;
        Ok(f)
    }
}

/// Parses the ASCII formula grammar.
///
/// Precedence from tightest: `~ [] <> [k] <k> [<k]`, `&`, `|`, `->` (right
/// associative), `<->`. `&`, `|` and `<->` associate to the left.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let tokens = Lexer {
        src: text.as_bytes(),
        pos: 0,
    }
    .tokenize()?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let f = parser.iff()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.unexpected());
    }
    Ok(f)
}
