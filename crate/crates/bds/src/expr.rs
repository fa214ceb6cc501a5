//! Text syntax for elements and semigroup expressions.
//!
//! Elements: `{u,v}` lists atoms (or indices on the cofinite backend), `~{..}`
//! is a complement, `top` is the unit. Expressions multiply factors left to
//! right, optionally separated by ` * `:
//!
//! ```text
//! s(ab) p{u} s(c)*      s(b) p{w} s(b)* * s(c) p{w} s(c)*      0
//! ```
//!
//! A `*` written directly after `)` is the involution.

use std::fmt;

use bds_core::boolean::BoolElem;
use bds_core::dynamics::System;
use bds_core::semigroup::{mul, SemiElem};

/// A parse failure at a 1-based character column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Column of the offending character.
    pub column: usize,
    /// What was expected.
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    sys: &'a System,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(sys: &'a System, text: &str) -> Parser<'a> {
        Parser { sys, chars: text.chars().collect(), pos: 0 }
    }

    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: at + 1, message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(self.pos, format!("expected `{c}`"))
        }
    }

    fn at_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(self.pos, format!("unexpected `{c}`")),
        }
    }

    fn element(&mut self) -> Result<BoolElem, ParseError> {
        self.skip_ws();
        if self.chars[self.pos..].starts_with(&['t', 'o', 'p']) {
            self.pos += 3;
            return Ok(self.sys.top());
        }
        let negate = self.peek() == Some('~');
        if negate {
            self.pos += 1;
        }
        self.expect('{')?;
        // items are split on commas outside square brackets, since atom names may contain `[a,b]`
        let mut items: Vec<(usize, String)> = Vec::new();
        let mut cur = String::new();
        let mut cur_at = self.pos;
        let mut depth = 0usize;
        loop {
            let Some(c) = self.peek() else { return self.err(self.pos, "unclosed `{`") };
            self.pos += 1;
            match c {
                '}' if depth == 0 => break,
                ',' if depth == 0 => {
                    items.push((cur_at, std::mem::take(&mut cur)));
                    cur_at = self.pos;
                }
                '[' => {
                    depth += 1;
                    cur.push(c);
                }
                ']' => {
                    depth = depth.saturating_sub(1);
                    cur.push(c);
                }
                _ => cur.push(c),
            }
        }
        items.push((cur_at, cur));
        let items: Vec<(usize, String)> =
            items.into_iter().map(|(at, s)| (at, s.trim().to_string())).filter(|(_, s)| !s.is_empty()).collect();
        let backend = self.sys.backend();
        let set = if self.sys.is_finite() {
            let mut idx = Vec::new();
            for (at, name) in &items {
                match backend.atom_index(name) {
                    Some(i) => idx.push(i),
                    None => return self.err(*at, format!("unknown atom `{name}`")),
                }
            }
            BoolElem::atoms(idx)
        } else {
            let mut idx = Vec::new();
            for (at, s) in &items {
                match s.parse::<i64>() {
                    Ok(i) if backend.universe().is_some_and(|u| u.contains(i)) => idx.push(i),
                    _ => return self.err(*at, format!("`{s}` is not an index of the universe")),
                }
            }
            if negate {
                return Ok(BoolElem::cofinite(idx));
            }
            BoolElem::finite(idx)
        };
        if negate {
            return Ok(backend.complement(&set));
        }
        Ok(set)
    }

    fn factor(&mut self) -> Result<SemiElem, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let value = match self.peek() {
            Some('0') => {
                self.pos += 1;
                SemiElem::Zero
            }
            Some('s') => {
                self.pos += 1;
                self.expect('(')?;
                let start = self.pos;
                while self.peek().is_some_and(|c| c != ')') {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                self.expect(')')?;
                match self.sys.parse_word(&text) {
                    Ok(w) => SemiElem::s(self.sys, w),
                    Err(e) => return self.err(start, e.to_string()),
                }
            }
            Some('p') => {
                self.pos += 1;
                let a = self.element()?;
                SemiElem::p(self.sys, &a)
            }
            Some('(') => {
                self.pos += 1;
                let v = self.product()?;
                self.skip_ws();
                self.expect(')')?;
                v
            }
            Some(c) => return self.err(at, format!("unexpected `{c}`")),
            None => return self.err(at, "expected a factor"),
        };
        if self.peek() == Some('*') && self.chars.get(self.pos.wrapping_sub(1)) == Some(&')') {
            self.pos += 1;
            return Ok(value.star());
        }
        Ok(value)
    }

    fn product(&mut self) -> Result<SemiElem, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = mul(self.sys, &acc, &f);
                }
                Some('0' | 's' | 'p' | '(') => {
                    let f = self.factor()?;
                    acc = mul(self.sys, &acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }
}

/// Parse an element of the system's algebra.
pub fn parse_elem(sys: &System, text: &str) -> Result<BoolElem, ParseError> {
    let mut p = Parser::new(sys, text);
    let e = p.element()?;
    p.at_end()?;
    Ok(e)
}

/// Parse and evaluate a semigroup expression.
pub fn parse_expr(sys: &System, text: &str) -> Result<SemiElem, ParseError> {
    let mut p = Parser::new(sys, text);
    let e = p.product()?;
    p.at_end()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bds_core::presets::examples::{s1, s2, s4};

    #[test]
    fn elements() {
        let s = s1();
        assert_eq!(parse_elem(&s, "{u, v}").unwrap(), s.top());
        assert_eq!(parse_elem(&s, "~{u}").unwrap(), BoolElem::atoms([1]));
        assert_eq!(parse_elem(&s, "{}").unwrap(), s.bottom());
        let e = parse_elem(&s, "{u,x}").unwrap_err();
        assert_eq!(e.column, 4);
        let s = s4();
        assert_eq!(parse_elem(&s, "~{0, 1}").unwrap(), BoolElem::cofinite([0, 1]));
        assert_eq!(parse_elem(&s, "top").unwrap(), s.top());
    }

    #[test]
    fn orthogonal_branches() {
        let s = s2();
        assert_eq!(parse_expr(&s, "s(b) p{w} s(b)* * s(c) p{w} s(c)*").unwrap(), SemiElem::Zero);
        let e = parse_expr(&s, "s(b) p{w} s(b)*").unwrap();
        assert_eq!(e.show(&s), "s(b) p{w} s(b)*");
        assert_eq!(parse_expr(&s, "s(b)* s(b)").unwrap(), SemiElem::p(&s, &s.top()));
        assert_eq!(parse_expr(&s, "(s(b) s(c))*").unwrap().show(&s), "s() p{w} s(bc)*");
        assert_eq!(parse_expr(&s, "0").unwrap(), SemiElem::Zero);
    }

    #[test]
    fn errors_carry_columns() {
        let s = s2();
        assert_eq!(parse_expr(&s, "s(b) q").unwrap_err().column, 6);
        assert_eq!(parse_expr(&s, "s(x)").unwrap_err().column, 3);
        assert_eq!(parse_expr(&s, "p{w").unwrap_err().column, 4);
    }
}
