//! Recursive-descent parser for the S-expression formula syntax.
//!
//! Grammar (whitespace separated, `;` comments run to end of line):
//!
//! ```text
//! formula := (= term term) | (not formula) | (and formula+) | (or formula+)
//!          | (=> formula formula) | (forall var formula) | (exists var formula)
//! term    := e | var | (* term term) | (inv term)
//! var     := v<digits>
//! ```

use super::{Formula, Term};
use std::fmt;
use thiserror::Error;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{pos}: expected {expected}, found {found}")]
    Unexpected {
        pos: Pos,
        expected: &'static str,
        found: String,
    },
    #[error("{pos}: `{head}` takes {expected} argument(s), found {found}")]
    Arity {
        pos: Pos,
        head: String,
        expected: &'static str,
        found: usize,
    },
    #[error("{pos}: unknown operator `{head}`")]
    UnknownHead { pos: Pos, head: String },
    #[error("{pos}: unexpected end of input (unbalanced parenthesis?)")]
    Eof { pos: Pos },
    #[error("{pos}: trailing input after the formula")]
    Trailing { pos: Pos },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Atom(String),
}

struct Lexer<'a> {
    rest: std::str::Chars<'a>,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            rest: s.chars(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.rest.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<char> {
        self.rest.clone().next()
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn tokens(mut self) -> Vec<(Tok, Pos)> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            let pos = self.pos();
            match c {
                ';' => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                c if c.is_whitespace() => {
                    self.bump();
                }
                '(' => {
                    self.bump();
                    out.push((Tok::LParen, pos));
                }
                ')' => {
                    self.bump();
                    out.push((Tok::RParen, pos));
                }
                _ => {
                    let mut atom = String::new();
                    while let Some(c) = self.peek() {
                        if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                            break;
                        }
                        atom.push(c);
                        self.bump();
                    }
                    out.push((Tok::Atom(atom), pos));
                }
            }
        }
        out
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, Pos)> {
        self.toks.get(self.at)
    }

    fn next(&mut self) -> Result<(Tok, Pos), ParseError> {
        let t = self
            .toks
            .get(self.at)
            .cloned()
            .ok_or(ParseError::Eof { pos: self.end })?;
        self.at += 1;
        Ok(t)
    }

    fn expect_rparen(
        &mut self,
        head: &str,
        head_pos: Pos,
        expected: &'static str,
        found: usize,
    ) -> Result<(), ParseError> {
        match self.next()? {
            (Tok::RParen, _) => Ok(()),
            (_, _) => Err(ParseError::Arity {
                pos: head_pos,
                head: head.to_string(),
                expected,
                found: found + 1,
            }),
        }
    }

    fn parse_var(&mut self) -> Result<u32, ParseError> {
        let (tok, pos) = self.next()?;
        match tok {
            Tok::Atom(a) => parse_var_atom(&a, pos),
            Tok::LParen => Err(ParseError::Unexpected {
                pos,
                expected: "a variable like v0",
                found: "(".into(),
            }),
            Tok::RParen => Err(ParseError::Unexpected {
                pos,
                expected: "a variable like v0",
                found: ")".into(),
            }),
        }
    }

    fn parse_term(&mut self) -> Result<Term, ParseError> {
        let (tok, pos) = self.next()?;
        match tok {
            Tok::Atom(a) => atom_term(&a, pos),
            Tok::LParen => {
                let (head_tok, head_pos) = self.next()?;
                let head = match head_tok {
                    Tok::Atom(a) => a,
                    Tok::LParen => {
                        return Err(ParseError::Unexpected {
                            pos: head_pos,
                            expected: "`*` or `inv`",
                            found: "(".into(),
                        })
                    }
                    Tok::RParen => {
                        return Err(ParseError::Unexpected {
                            pos: head_pos,
                            expected: "`*` or `inv`",
                            found: ")".into(),
                        })
                    }
                };
                match head.as_str() {
                    "*" => {
                        let l = self.parse_term()?;
                        let r = self.parse_term()?;
                        self.expect_rparen(&head, head_pos, "2", 2)?;
                        Ok(Term::mul(l, r))
                    }
                    "inv" => {
                        let t = self.parse_term()?;
                        self.expect_rparen(&head, head_pos, "1", 1)?;
                        Ok(Term::inv(t))
                    }
                    _ => Err(ParseError::UnknownHead {
                        pos: head_pos,
                        head,
                    }),
                }
            }
            Tok::RParen => Err(ParseError::Unexpected {
                pos,
                expected: "a term",
                found: ")".into(),
            }),
        }
    }

    fn parse_formula(&mut self) -> Result<Formula, ParseError> {
        let (tok, pos) = self.next()?;
        let head_pos;
        let head = match tok {
            Tok::LParen => {
                let (t, p) = self.next()?;
                head_pos = p;
                match t {
                    Tok::Atom(a) => a,
                    Tok::LParen => {
                        return Err(ParseError::Unexpected {
                            pos: p,
                            expected: "an operator atom",
                            found: "(".into(),
                        })
                    }
                    Tok::RParen => {
                        return Err(ParseError::Unexpected {
                            pos: p,
                            expected: "an operator atom",
                            found: ")".into(),
                        })
                    }
                }
            }
            Tok::Atom(a) => {
                return Err(ParseError::Unexpected {
                    pos,
                    expected: "`(`",
                    found: a,
                });
            }
            Tok::RParen => {
                return Err(ParseError::Unexpected {
                    pos,
                    expected: "`(`",
                    found: ")".into(),
                });
            }
        };
        match head.as_str() {
            "=" => {
                let l = self.parse_term()?;
                let r = self.parse_term()?;
                self.expect_rparen(&head, head_pos, "2", 2)?;
                Ok(Formula::Eq(l, r))
            }
            "not" => {
                let f = self.parse_formula()?;
                self.expect_rparen(&head, head_pos, "1", 1)?;
                Ok(Formula::not(f))
            }
            "=>" => {
                let h = self.parse_formula()?;
                let c = self.parse_formula()?;
                self.expect_rparen(&head, head_pos, "2", 2)?;
                Ok(Formula::implies(h, c))
            }
            "and" | "or" => {
                let mut parts = Vec::new();
                loop {
                    match self.peek() {
                        Some((Tok::RParen, _)) => {
                            self.next()?;
                            break;
                        }
                        Some(_) => parts.push(self.parse_formula()?),
                        None => return Err(ParseError::Eof { pos: self.end }),
                    }
                }
                if parts.is_empty() {
                    return Err(ParseError::Arity {
                        pos: head_pos,
                        head,
                        expected: "at least 1",
                        found: 0,
                    });
                }
                if head == "and" {
                    Ok(Formula::and(parts))
                } else {
                    Ok(Formula::or(parts))
                }
            }
            "forall" | "exists" => {
                let v = self.parse_var()?;
                let body = self.parse_formula()?;
                self.expect_rparen(&head, head_pos, "2", 2)?;
                if head == "forall" {
                    Ok(Formula::forall(v, body))
                } else {
                    Ok(Formula::exists(v, body))
                }
            }
            _ => Err(ParseError::UnknownHead {
                pos: head_pos,
                head,
            }),
        }
    }
}

fn parse_var_atom(atom: &str, pos: Pos) -> Result<u32, ParseError> {
    let digits = atom
        .strip_prefix('v')
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()));
    match digits {
        Some(d) => d.parse().map_err(|_| ParseError::Unexpected {
            pos,
            expected: "a variable index that fits in u32",
            found: atom.to_string(),
        }),
        None => Err(ParseError::Unexpected {
            pos,
            expected: "a variable like v0",
            found: atom.to_string(),
        }),
    }
}

fn atom_term(atom: &str, pos: Pos) -> Result<Term, ParseError> {
    if atom == "e" {
        return Ok(Term::One);
    }
    parse_var_atom(atom, pos)
        .map(Term::Var)
        .map_err(|_| ParseError::Unexpected {
            pos,
            expected: "`e` or a variable like v0",
            found: atom.to_string(),
        })
}

fn make_parser(input: &str) -> Parser {
    let lexer = Lexer::new(input);
    let end = {
        let lines = input.lines().count().max(1) as u32;
        let last_len = input.lines().last().map_or(0, |l| l.chars().count()) as u32;
        Pos {
            line: lines,
            col: last_len + 1,
        }
    };
    Parser {
        toks: lexer.tokens(),
        at: 0,
        end,
    }
}

/// Parse a single formula. Trailing non-comment content is an error.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let mut parser = make_parser(input);
    let f = parser.parse_formula()?;
    if let Some((_, pos)) = parser.peek() {
        return Err(ParseError::Trailing { pos: *pos });
    }
    Ok(f)
}

/// Parse a single term (used by tests and the REPL-ish CLI paths).
pub fn parse_term(input: &str) -> Result<Term, ParseError> {
    let mut parser = make_parser(input);
    let t = parser.parse_term()?;
    if let Some((_, pos)) = parser.peek() {
        return Err(ParseError::Trailing { pos: *pos });
    }
    Ok(t)
}
