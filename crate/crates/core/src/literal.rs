//! Text notation for diagonal groups.
//!
//! `dim=N; gens=<sign>:<trans>[,<sign>:<trans>...]` where `<sign>` has `N`
//! characters from `+`/`-` (the minus sign `U+2212` is accepted too) and
//! `<trans>` has `N` characters from `0`/`H`. The didicosm reads
//! `dim=3; gens=+--:HH0,-+-:0HH`. A representation (signs only) omits the
//! `:<trans>` parts.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::constructions::RepresentationSpec;
use crate::error::Error;
use crate::group::{DiagonalGroup, Generator, SignVector};
use crate::{Result, MAX_DIM};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.error(self.pos, format!("expected `{token}`")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| self.error(start, "expected a dimension"))
    }

    /// Reads a fixed-width mask over a two-letter alphabet.
    fn mask(&mut self, n: usize, zero: &[char], one: &[char], what: &str) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut mask = 0u64;
        let mut count = 0;
        while let Some(c) = self.peek() {
            if zero.contains(&c) || one.contains(&c) {
                if count < 64 && one.contains(&c) {
                    mask |= 1 << count;
                }
                count += 1;
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        if count != n {
            return Err(self.error(start, format!("{what} must have exactly {n} characters, found {count}")));
        }
        Ok(mask)
    }
}

const PLUS: &[char] = &['+'];
const MINUS: &[char] = &['-', '\u{2212}'];
const ZERO: &[char] = &['0'];
const HALF: &[char] = &['H', 'h'];

fn parse_entries(src: &str, with_translation: bool) -> Result<(usize, Vec<Generator>)> {
    let mut cur = Cursor { src, pos: 0 };
    cur.expect("dim")?;
    cur.expect("=")?;
    let dim_at = cur.pos;
    let dim = cur.number()?;
    if !(1..=MAX_DIM).contains(&dim) {
        return Err(cur.error(dim_at, format!("dimension must lie in 1..={MAX_DIM}")));
    }
    cur.expect(";")?;
    cur.expect("gens")?;
    cur.expect("=")?;
    let mut gens = Vec::new();
    cur.skip_ws();
    if cur.peek().is_some() {
        loop {
            let sign = cur.mask(dim, PLUS, MINUS, "sign vector")?;
            let halves = if with_translation {
                cur.expect(":")?;
                cur.mask(dim, ZERO, HALF, "translation")?
            } else {
                0
            };
            gens.push(Generator::new(sign, halves));
            if !cur.eat(',') {
                break;
            }
        }
    }
    cur.skip_ws();
    if cur.pos != src.len() {
        return Err(cur.error(cur.pos, "unexpected trailing input"));
    }
    Ok((dim, gens))
}

/// Parses `dim=N; gens=<sign>:<trans>,...`.
pub fn parse_group(src: &str) -> Result<DiagonalGroup> {
    let (dim, gens) = parse_entries(src, true)?;
    Ok(DiagonalGroup::new(dim, gens))
}

/// Parses `dim=N; gens=<sign>,...`.
pub fn parse_representation(src: &str) -> Result<RepresentationSpec> {
    let (dim, gens) = parse_entries(src, false)?;
    Ok(RepresentationSpec::new(dim, gens.into_iter().map(|g| g.sign).collect()))
}

fn push_mask(out: &mut String, n: usize, mask: u64, zero: char, one: char) {
    for i in 0..n {
        out.push(if mask >> i & 1 == 1 { one } else { zero });
    }
}

pub fn format_group(group: &DiagonalGroup) -> String {
    let mut out = format!("dim={}; gens=", group.dim);
    for (idx, g) in group.gens.iter().enumerate() {
        if idx > 0 {
            out.push(',');
        }
        push_mask(&mut out, group.dim, g.sign.0, '+', '-');
        out.push(':');
        push_mask(&mut out, group.dim, g.translation.0, '0', 'H');
    }
    out
}

pub fn format_representation(spec: &RepresentationSpec) -> String {
    let mut out = format!("dim={}; gens=", spec.dim);
    for (idx, s) in spec.gens.iter().enumerate() {
        if idx > 0 {
            out.push(',');
        }
        push_mask(&mut out, spec.dim, s.0, '+', '-');
    }
    out
}

/// Formats a single sign vector as `+`/`-` characters.
pub fn format_sign(n: usize, sign: SignVector) -> String {
    let mut out = String::new();
    push_mask(&mut out, n, sign.0, '+', '-');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn didicosm_literal() {
        let g = parse_group("dim=3; gens=+--:HH0,-+-:0HH").unwrap();
        assert_eq!(g.dim, 3);
        assert_eq!(g.gens, [Generator::new(0b110, 0b011), Generator::new(0b101, 0b110)]);
        assert_eq!(format_group(&g), "dim=3; gens=+--:HH0,-+-:0HH");
    }

    #[test]
    fn unicode_minus_and_spacing() {
        let g = parse_group(" dim = 3 ;gens= +\u{2212}\u{2212}:HH0 , -+-:0HH ").unwrap();
        assert_eq!(g.gens[0].sign, SignVector(0b110));
    }

    #[test]
    fn errors_carry_position() {
        match parse_group("dim=3; gens=+--:HH0,-+:0HH") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 21)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_group("dim=3;\ngens=+--:HX0") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 10)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_group("dim=99; gens=").is_err());
        assert!(parse_group("dim=3; gens=+--:HH0 junk").is_err());
    }

    #[test]
    fn representation_literal() {
        let spec = parse_representation("dim=3; gens=--+").unwrap();
        assert_eq!(spec.gens, [SignVector(0b011)]);
        assert_eq!(format_representation(&spec), "dim=3; gens=--+");
    }
}
