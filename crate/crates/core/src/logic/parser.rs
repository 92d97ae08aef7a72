//! Recursive-descent parser for the sentence surface syntax.
//!
//! ```text
//! formula := 'exists' IDENT '.' formula | 'forall' IDENT '.' formula | iff
//! iff     := imp ('<->' imp)*          left associative
//! imp     := disj ('->' disj)*         right associative
//! disj    := conj ('|' conj)*
//! conj    := neg ('&' neg)*
//! neg     := '!' neg | '(' formula ')' | quantifier | atom
//! atom    := IDENT '=' IDENT | IDENT '<' IDENT | IDENT '~' IDENT
//!          | 'F(' IDENT ',' IDENT ')' '=' IDENT
//! ```
//!
//! Precedence is `!` > `&` > `|` > `->` > `<->`, and a quantifier body extends
//! as far right as possible. A quantifier is also accepted directly after `!`
//! or a binary connective (`a & exists x. b`), where the same rule applies.
//! `#` starts a comment running to end of line.

use super::ast::{Atom, Formula, Sentence, Vocabulary};
use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Exists,
    Forall,
    Dot,
    LParen,
    RParen,
    Comma,
    Eq,
    Lt,
    Tilde,
    Bang,
    Amp,
    Bar,
    Arrow,
    DoubleArrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Exists => "`exists`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DoubleArrow => "`<->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        if is_ident_start(c) {
            let mut end = pos;
            while let Some(&(p, c)) = chars.peek() {
                if !is_ident_continue(c) {
                    break;
                }
                end = p + c.len_utf8();
                chars.next();
            }
            let word = &text[pos..end];
            let tok = match word {
                "exists" => Tok::Exists,
                "forall" => Tok::Forall,
                _ => Tok::Ident(word.to_string()),
            };
            out.push((pos, tok));
            continue;
        }
        chars.next();
        let tok = match c {
            '.' => Tok::Dot,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '=' => Tok::Eq,
            '~' => Tok::Tilde,
            '!' => Tok::Bang,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '-' => {
                if chars.next_if(|&(_, c)| c == '>').is_some() {
                    Tok::Arrow
                } else {
                    return Err(ParseError::syntax(pos + 1, "`>` after `-`"));
                }
            }
            '<' => {
                let mut look = chars.clone();
                if matches!(look.next(), Some((_, '-'))) && matches!(look.next(), Some((_, '>'))) {
                    chars.next();
                    chars.next();
                    Tok::DoubleArrow
                } else {
                    Tok::Lt
                }
            }
            _ => return Err(ParseError::syntax(pos, "a token")),
        };
        out.push((pos, tok));
    }
    out.push((text.len(), Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.pos(),
            expected: format!("{expected}, found {}", self.peek().describe()),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&tok.describe())
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(_) => match self.bump() {
                Tok::Ident(s) => Ok(s),
                _ => unreachable!(),
            },
            _ => self.fail("an identifier"),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Exists | Tok::Forall => self.quantifier(),
            _ => self.iff(),
        }
    }

    fn quantifier(&mut self) -> Result<Formula, ParseError> {
        let q = self.bump();
        let var = self.ident()?;
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(match q {
            Tok::Exists => Formula::exists(var, body),
            _ => Formula::forall(var, body),
        })
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp()?;
        while *self.peek() == Tok::DoubleArrow {
            self.bump();
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disj()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.conj()?];
        while *self.peek() == Tok::Bar {
            self.bump();
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::Or(parts)
        })
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.neg()?];
        while *self.peek() == Tok::Amp {
            self.bump();
            parts.push(self.neg()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::And(parts)
        })
    }

    fn neg(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.neg()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Exists | Tok::Forall => self.quantifier(),
            Tok::Ident(_) => self.atom(),
            _ => self.fail("`!`, `(`, a quantifier or an atom"),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        if matches!(self.peek(), Tok::Ident(s) if s == "F") && *self.peek2() == Tok::LParen {
            self.bump();
            self.bump();
            let a = self.ident()?;
            self.expect(Tok::Comma)?;
            let b = self.ident()?;
            if *self.peek() != Tok::RParen {
                // nested terms and other arities are outside the flat fragment
                return self.fail("`)` (function atoms take exactly two variables)");
            }
            self.bump();
            self.expect(Tok::Eq)?;
            let c = self.ident()?;
            return Ok(Formula::atom(Atom::FEq(a, b, c)));
        }
        let a = self.ident()?;
        let op = self.peek().clone();
        match op {
            Tok::Eq | Tok::Lt | Tok::Tilde => {
                self.bump();
            }
            _ => return self.fail("`=`, `<` or `~`"),
        }
        if matches!(self.peek(), Tok::Ident(s) if s == "F") && *self.peek2() == Tok::LParen {
            return self.fail("a variable (write `F(x,y) = z` with the function on the left)");
        }
        let b = self.ident()?;
        Ok(Formula::atom(match op {
            Tok::Eq => Atom::Eq(a, b),
            Tok::Lt => Atom::Less(a, b),
            _ => Atom::Adj(a, b),
        }))
    }
}

/// Parses a formula without closure or vocabulary checks.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.fail("end of input");
    }
    Ok(f)
}

pub fn parse_sentence(text: &str, vocabulary: Vocabulary) -> Result<Sentence, ParseError> {
    Sentence::new(parse_formula(text)?, vocabulary)
}
