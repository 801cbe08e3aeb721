//! Text syntax for groupoid expressions, species expressions and
//! hypergeometric parameter lists.
//!
//! ```text
//! groupoid := empty | unit | discrete(N) | cyclic(N) | u(g, ...) | x(g, ...)
//! species  := zero | one | singleton | sets | Z
//!           | sum(s,s) | had(s,s) | prod(s,s) | comp(s,s)
//!           | H(params;params) | Halt(params;params)
//! params   := p/q, ...          (possibly empty)
//! ```
//!
//! Whitespace between tokens is ignored. Errors carry a byte offset.

use crate::error::{Error, Result};
use crate::groupoid::GroupoidExpr;
use crate::hyper::{species_h, HyperParams, Interpretation};
use crate::species::{builtin_species, Species};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected '{c}', found '{found}'")),
                None => self.error(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 || !rest.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return self.error("expected a name");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return self.error("expected a non-negative integer");
        }
        match rest[..len].parse() {
            Ok(n) => {
                self.pos += len;
                Ok(n)
            }
            Err(_) => self.error("integer out of range"),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected trailing '{c}'")),
        }
    }

    /// Comma-separated items up to and including `close`.
    fn list<T>(&mut self, close: char, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }
}

pub fn parse_groupoid(text: &str) -> Result<GroupoidExpr> {
    let mut cur = Cursor::new(text);
    let e = groupoid(&mut cur)?;
    cur.finish()?;
    Ok(e)
}

fn groupoid(cur: &mut Cursor<'_>) -> Result<GroupoidExpr> {
    let start = cur.pos;
    match cur.ident()? {
        "empty" => Ok(GroupoidExpr::empty()),
        "unit" => Ok(GroupoidExpr::unit()),
        "discrete" => {
            cur.expect('(')?;
            let n = cur.number()?;
            cur.expect(')')?;
            Ok(GroupoidExpr::discrete(n))
        }
        "cyclic" => {
            cur.expect('(')?;
            let at = cur.pos;
            let m = cur.number()?;
            cur.expect(')')?;
            GroupoidExpr::try_cyclic(m).ok_or(Error::Parse {
                position: at,
                message: "cyclic order must be at least 1".into(),
            })
        }
        "u" => {
            cur.expect('(')?;
            Ok(GroupoidExpr::union(cur.list(')', groupoid)?))
        }
        "x" => {
            cur.expect('(')?;
            Ok(GroupoidExpr::product(cur.list(')', groupoid)?))
        }
        other => {
            cur.pos = start;
            cur.error(format!("unknown groupoid form '{other}'"))
        }
    }
}

pub fn parse_species(text: &str) -> Result<Species> {
    let mut cur = Cursor::new(text);
    let s = species(&mut cur)?;
    cur.finish()?;
    Ok(s)
}

fn species(cur: &mut Cursor<'_>) -> Result<Species> {
    let start = cur.pos;
    let name = cur.ident()?;
    let binary = |cur: &mut Cursor<'_>| -> Result<(Species, Species)> {
        cur.expect('(')?;
        let f = species(cur)?;
        cur.expect(',')?;
        let g = species(cur)?;
        cur.expect(')')?;
        Ok((f, g))
    };
    match name {
        "sum" => binary(cur).map(|(f, g)| Species::sum(&f, &g)),
        "had" => binary(cur).map(|(f, g)| Species::hadamard(&f, &g)),
        "prod" => binary(cur).map(|(f, g)| Species::prod(&f, &g)),
        "comp" => {
            let (f, g) = binary(cur)?;
            Species::compose(&f, &g).map_err(|e| Error::Parse {
                position: start,
                message: e.to_string(),
            })
        }
        "H" | "Halt" => {
            let interpretation = if name == "H" {
                Interpretation::Product
            } else {
                Interpretation::Alternative
            };
            cur.expect('(')?;
            let upper = cur.list(';', fraction)?;
            let lower = cur.list(')', fraction)?;
            Ok(species_h(&HyperParams { upper, lower }, interpretation))
        }
        _ => builtin_species(name).map_err(|e| Error::Parse {
            position: start,
            message: e.to_string(),
        }),
    }
}

/// `p/q` (or `p`, meaning `p/1`) with positive integers, kept unreduced.
fn fraction(cur: &mut Cursor<'_>) -> Result<(u64, u64)> {
    let at = cur.pos;
    let p = cur.number()?;
    let q = if cur.eat('/') { cur.number()? } else { 1 };
    if p == 0 || q == 0 {
        cur.pos = at;
        return cur.error("parameters must be positive p/q");
    }
    Ok((p, q))
}

/// Comma-separated positive `p/q` list; the empty string is the empty list.
pub fn parse_params(text: &str) -> Result<Vec<(u64, u64)>> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    if cur.peek().is_none() {
        return Ok(out);
    }
    loop {
        out.push(fraction(&mut cur)?);
        if cur.peek().is_none() {
            return Ok(out);
        }
        cur.expect(',')?;
    }
}
