//! Text input for elements of `U(R)` and vectors of induced modules.
//!
//! ```text
//! expr     := term (("+"|"-") term)*
//! term     := (rational "*")? factor ("*" factor)*
//! factor   := gen ("^" nat)? | "(" expr ")"
//! gen      := ("L"|"G") "[" int "]" | "c"
//! rational := int ("/" nat)?
//! vector   := expr "|" label (("+"|"-") expr "|" label)*
//! ```
//!
//! Whitespace is insignificant. Two conveniences are accepted on top: an
//! expression may start with a sign, and a term may be a bare rational.

use ramond_core::base::BaseVector;
use ramond_core::induced::{InducedModule, ModuleVector};
use ramond_core::pbw::{multiply, normal_form, MonomialOrder};
use ramond_core::rational::parse_rational;
use ramond_core::{AlgebraElement, Error, Generator, Result};

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(ch) = self.text[self.pos..].chars().next() {
            if !ch.is_whitespace() {
                break;
            }
            self.pos += ch.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{ch}`")))
        }
    }

    fn unexpected(&mut self, wanted: &str) -> Error {
        match self.peek() {
            Some(found) => self.error(format!("expected {wanted}, found `{found}`")),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// Digits with an optional sign; whitespace is allowed after the sign.
    fn signed_digits(&mut self) -> Result<String> {
        let mut out = String::new();
        if self.eat('-') {
            out.push('-');
        } else {
            self.eat('+');
        }
        out.push_str(&self.digits()?);
        Ok(out)
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.unexpected("a digit"));
        }
        self.pos += len;
        Ok(rest[..len].to_string())
    }

    fn rational(&mut self) -> Result<AlgebraElement> {
        let start = self.pos;
        let mut text = self.signed_digits()?;
        if self.eat('/') {
            text.push('/');
            let den = self.digits()?;
            if den.bytes().all(|b| b == b'0') {
                self.pos = start;
                return Err(self.error("zero denominator"));
            }
            text.push_str(&den);
        }
        let value = parse_rational(&text).map_err(|_| Error::Parse {
            offset: start,
            message: format!("invalid rational `{text}`"),
        })?;
        Ok(AlgebraElement::scalar(value))
    }

    fn index(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let text = self.signed_digits()?;
        text.parse().map_err(|_| Error::Parse {
            offset: start,
            message: format!("generator index `{text}` out of range"),
        })
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let text = self.digits()?;
        text.parse().map_err(|_| Error::Parse {
            offset: start,
            message: format!("exponent `{text}` out of range"),
        })
    }

    fn generator(&mut self) -> Result<Option<Generator>> {
        let g = match self.peek() {
            Some('c') => {
                self.pos += 1;
                return Ok(Some(Generator::C));
            }
            Some('L') => Generator::L(0),
            Some('G') => Generator::G(0),
            _ => return Ok(None),
        };
        self.pos += 1;
        self.expect('[')?;
        let m = self.index()?;
        self.expect(']')?;
        Ok(Some(g.with_index(m)))
    }

    fn factor(&mut self) -> Result<AlgebraElement> {
        if self.eat('(') {
            let inner = self.expr()?;
            self.expect(')')?;
            return Ok(inner);
        }
        match self.generator()? {
            Some(g) => {
                let e = if self.eat('^') { self.exponent()? } else { 1 };
                Ok(normal_form(MonomialOrder::Canonical, &vec![g; e as usize]))
            }
            None => Err(self.unexpected("a generator or `(`")),
        }
    }

    fn starts_rational(&mut self) -> bool {
        matches!(self.peek(), Some(ch) if ch.is_ascii_digit() || ch == '-' || ch == '+')
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        let mut acc = if self.starts_rational() {
            let r = self.rational()?;
            if !self.eat('*') {
                return Ok(r);
            }
            multiply(&r, &self.factor()?)
        } else {
            self.factor()?
        };
        while self.eat('*') {
            acc = multiply(&acc, &self.factor()?);
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<AlgebraElement> {
        let mut acc = if self.eat('-') {
            self.term()?.scaled(&ramond_core::rational::q(-1))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn label(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[self.pos..];
        let len: usize = rest
            .chars()
            .take_while(|ch| !ch.is_whitespace() && *ch != '+' && *ch != '-' && *ch != '|')
            .map(char::len_utf8)
            .sum();
        if len == 0 {
            return Err(self.unexpected("a basis label"));
        }
        self.pos += len;
        Ok((start, rest[..len].to_string()))
    }
}

/// Parses and normal-orders an element of `U(R)`.
pub fn parse_expression(text: &str) -> Result<AlgebraElement> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    if !p.at_end() {
        return Err(p.unexpected("`+`, `-`, `*` or end of input"));
    }
    Ok(e)
}

/// Parses `u_1 | b_1 + u_2 | b_2 ...` as `Σ u_j (1 ⊗ b_j)` in `m`.
pub fn parse_vector(text: &str, m: &InducedModule) -> Result<ModuleVector> {
    let mut p = Parser::new(text);
    let mut out = ModuleVector::zero();
    loop {
        let u = p.expr()?;
        p.expect('|')?;
        let (offset, label) = p.label()?;
        let b = m.base().index_of_label(&label).ok_or_else(|| Error::Parse {
            offset,
            message: format!("unknown basis label `{label}` for {}", m.base().label()),
        })?;
        let part = m.act(&u, &ModuleVector::from_base(BaseVector::basis(b)))?;
        out.add_vector(&part, &ramond_core::rational::q(1));
        match p.peek() {
            None => return Ok(out),
            Some('+') | Some('-') => {}
            Some(_) => return Err(p.unexpected("`+`, `-` or end of input")),
        }
    }
}
