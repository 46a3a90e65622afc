//! Text formats for polynomials and tame words.
//!
//! Polynomial grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := 'x' | 'y' | 'z' | INT ('/' INT)? | '(' expr ')'
//! ```
//!
//! Multiplication is always explicit. Word files hold one factor per line,
//! applied top to bottom:
//!
//! ```text
//! # (x, y, z + x*y) ∘ (x + z^3, y + z^5, z)
//! E(x, z^3)
//! E(y, z^5)
//! E(z, x*y)
//! L(1, 0, 0; 0, 0, 1; 0, 1, 0)
//! ```

use std::fmt;

use num_bigint::BigInt;

use crate::poly::{Polynomial, Var};
use crate::rational::Rational;
use crate::word::{Factor, Matrix3, TameWord, WordError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(Var),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Var(v) => write!(f, "`{v}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Lexer, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        let tok = match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(digits.parse().expect("ascii digits")), col));
                continue;
            }
            c => match Var::from_char(c) {
                Some(v) => Tok::Var(v),
                None => {
                    return Err(ParseError {
                        line,
                        column: col,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            },
        };
        toks.push((tok, col));
        i += 1;
    }
    toks.push((Tok::End, col0 + chars.len()));
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            Tok::Int(n) => {
                let n = u32::try_from(n).map_err(|_| self.error("exponent too large"))?;
                Ok(base.pow(n))
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a non-negative integer exponent"))
            }
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().clone() {
            Tok::Var(v) => {
                self.bump();
                Ok(Polynomial::var(v))
            }
            Tok::Int(n) => {
                self.bump();
                if *self.peek() != Tok::Slash {
                    return Ok(Polynomial::constant(Rational::from_integer(n)));
                }
                self.bump();
                match self.peek().clone() {
                    Tok::Int(d) if d != BigInt::from(0) => {
                        self.bump();
                        Ok(Polynomial::constant(
                            Rational::new(n, d).expect("nonzero denominator"),
                        ))
                    }
                    Tok::Int(_) => Err(self.error("zero denominator")),
                    _ => Err(self.unexpected("a denominator")),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a variable, number or `(`")),
        }
    }
}

fn parse_polynomial_at(text: &str, line: usize, col0: usize) -> Result<Polynomial, ParseError> {
    let lexer = lex(text, line, col0)?;
    let mut p = Parser {
        toks: lexer.toks,
        pos: 0,
        line,
    };
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(poly)
}

/// Parses a polynomial in `x`, `y`, `z`. Positions in errors are 1-based.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    parse_polynomial_at(text, 1, 1).map_err(|mut e| {
        (e.line, e.column) = line_col(text, e.column - 1);
        e
    })
}

fn line_col(text: &str, char_index: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, ch) in text.chars().enumerate() {
        if i == char_index {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordParseError {
    #[error("line {line}: {source}")]
    Factor { line: usize, source: WordError },
    #[error("{0}")]
    Syntax(#[from] ParseError),
}

impl WordParseError {
    pub fn line(&self) -> usize {
        match self {
            WordParseError::Factor { line, .. } => *line,
            WordParseError::Syntax(e) => e.line,
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> WordParseError {
    WordParseError::Syntax(ParseError {
        line,
        column,
        message: message.into(),
    })
}

/// Parses a word file: one `E(axis, poly)` or `L(r1; r2; r3)` per line, `#`
/// comments and blank lines ignored.
pub fn parse_word(text: &str) -> Result<TameWord, WordParseError> {
    let mut word = TameWord::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let col = |byte_off: usize| content[..byte_off].chars().count() + 1;
        let (head, rest) = trimmed.split_at(1);
        let open = rest.trim_start();
        if !open.starts_with('(') || !trimmed.ends_with(')') {
            return Err(syntax(line, col(lead), "expected `E(axis, poly)` or `L(r1; r2; r3)`"));
        }
        let body_start = lead + trimmed.find('(').expect("checked") + 1;
        let body = &content[body_start..lead + trimmed.len() - 1];
        let factor = match head {
            "E" => {
                let Some((axis_txt, poly_txt)) = body.split_once(',') else {
                    return Err(syntax(line, col(body_start), "expected `axis, poly`"));
                };
                let axis = match axis_txt.trim() {
                    "x" => Var::X,
                    "y" => Var::Y,
                    "z" => Var::Z,
                    other => {
                        return Err(syntax(
                            line,
                            col(body_start),
                            format!("unknown axis `{other}`"),
                        ))
                    }
                };
                let poly_off = body_start + axis_txt.len() + 1;
                let g = parse_polynomial_at(poly_txt, line, col(poly_off))?;
                Factor::elementary(axis, g)
                    .map_err(|source| WordParseError::Factor { line, source })?
            }
            "L" => {
                let rows: Vec<&str> = body.split(';').collect();
                if rows.len() != 3 {
                    return Err(syntax(line, col(body_start), "expected three rows"));
                }
                let mut m = Matrix3::identity();
                for (i, row) in rows.iter().enumerate() {
                    let entries: Vec<&str> = row.split(',').collect();
                    if entries.len() != 3 {
                        return Err(syntax(
                            line,
                            col(body_start),
                            format!("row {} needs three entries", i + 1),
                        ));
                    }
                    for (j, entry) in entries.iter().enumerate() {
                        m.0[i][j] = entry.trim().parse().map_err(|_| {
                            syntax(
                                line,
                                col(body_start),
                                format!("invalid matrix entry `{}`", entry.trim()),
                            )
                        })?;
                    }
                }
                Factor::linear(m).map_err(|source| WordParseError::Factor { line, source })?
            }
            other => {
                return Err(syntax(line, col(lead), format!("unknown factor kind `{other}`")))
            }
        };
        word.push(factor);
    }
    Ok(word)
}

pub fn format_factor(f: &Factor) -> String {
    match f {
        Factor::Elementary { axis, g } => format!("E({axis}, {g})"),
        Factor::Linear(m) => {
            let rows: Vec<String> = m
                .0
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|r| r.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                })
                .collect();
            format!("L({})", rows.join("; "))
        }
    }
}

/// One factor per line, in application order; parses back with [`parse_word`].
pub fn format_word(w: &TameWord) -> String {
    w.factors
        .iter()
        .map(|f| format_factor(f) + "\n")
        .collect()
}
