//! Plain-text expression syntax.
//!
//! Identifiers: `t y x z th10 th01`, parameters `e00 e11 e10 e01 eL dz alpha` (suffix `_1`
//! for the second parameter copy), fields `phi00 phi11 A00 A11 psi10 lam10 psi01 lam01`
//! with jet suffixes such as `phi00_tx`, function jets `F0 F1 ...`, `V00`, `V00_2`, `V11_1`,
//! `sin_phi00`, `cos_phi11`. Operators `+ - * / ^` with `y^(-1/2)` style rational powers.

use num_rational::Rational64;
use thiserror::Error;

use super::coeff::Coeff;
use super::expr::Expr;
use super::generator::{Field, FuncKind, Gen, Jet, Param, ParamKind, Space, TrigArg};

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected character '{0}' at {1}")]
    Char(char, usize),
    #[error("unknown identifier '{0}'")]
    Ident(String),
    #[error("invalid exponent at {0}")]
    Exponent(usize),
    #[error("division by a non-constant or zero at {0}")]
    Division(usize),
}

/// Parses `src`, resolving unsuffixed fields and function jets in `space`.
pub fn parse_expr(src: &str, space: Space) -> Result<Expr, ParseError> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, space };
    let e = p.sum()?;
    p.ws();
    if p.pos < p.s.len() {
        return Err(ParseError::Char(p.s[p.pos] as char, p.pos));
    }
    Ok(e)
}

/// Resolves a single identifier to a generator.
pub fn parse_gen(name: &str, space: Space) -> Option<Gen> {
    let coord = match name {
        "t" => Some(Gen::T),
        "y" => Some(Gen::Y),
        "x" => Some(Gen::X),
        "z" => Some(Gen::Z),
        "th10" => Some(Gen::Theta10),
        "th01" => Some(Gen::Theta01),
        _ => None,
    };
    if coord.is_some() {
        return coord;
    }
    let (base, suffix) = match name.split_once('_') {
        Some((b, s)) => (b, Some(s)),
        None => (name, None),
    };
    let kind = match base {
        "e00" => Some(ParamKind::E00),
        "e11" => Some(ParamKind::E11),
        "e10" => Some(ParamKind::E10),
        "e01" => Some(ParamKind::E01),
        "eL" => Some(ParamKind::EL),
        "dz" => Some(ParamKind::Dz),
        "alpha" if suffix.is_none() => Some(ParamKind::Alpha),
        _ => None,
    };
    if let Some(kind) = kind {
        let copy = match suffix {
            None => 0,
            Some(s) => s.parse().ok()?,
        };
        return Some(Gen::Param(Param { kind, copy }));
    }
    if let Some(field) = Field::from_name(base) {
        let mut jet = Jet::new(field, space);
        for ch in suffix.unwrap_or("").chars() {
            match ch {
                't' => jet.dt += 1,
                'y' => {
                    jet.space = Space::Y;
                    jet.ds += 1
                }
                'x' => {
                    jet.space = Space::X;
                    jet.ds += 1
                }
                _ => return None,
            }
        }
        return Some(Gen::Field(jet));
    }
    let kind = match (base, suffix) {
        ("V00", None) => FuncKind::V00(0),
        ("V11", None) => FuncKind::V11(0),
        ("V00", Some(n)) => FuncKind::V00(n.parse().ok()?),
        ("V11", Some(n)) => FuncKind::V11(n.parse().ok()?),
        ("sin", Some("phi00")) => FuncKind::Sin(TrigArg::Phi00),
        ("sin", Some("phi11")) => FuncKind::Sin(TrigArg::Phi11),
        ("cos", Some("phi00")) => FuncKind::Cos(TrigArg::Phi00),
        ("cos", Some("phi11")) => FuncKind::Cos(TrigArg::Phi11),
        (b, None) if b.len() > 1 && b.starts_with('F') => FuncKind::F(b[1..].parse().ok()?),
        _ => return None,
    };
    Some(Gen::func(kind, space))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    space: Space,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut acc = if self.eat(b'-') { -self.product()? } else { self.product()? };
        loop {
            if self.eat(b'+') {
                acc = acc + self.product()?;
            } else if self.eat(b'-') {
                acc = acc - self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                let cst = constant_of(&d).and_then(|c| c.inv()).ok_or(ParseError::Division(at))?;
                acc = acc.scale(&cst);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let (base, gen) = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let e = self.exponent()?;
        match gen {
            Some(g) if g.allows_rational_exponent() => Ok(Expr::power_of(g, e)),
            _ if e.is_integer() && e >= Rational64::from(0) => Ok(base.pow(e.to_integer() as u32)),
            _ => Err(ParseError::Exponent(at)),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.s.get(self.pos) {
                Some(c) => ParseError::Char(*c as char, self.pos),
                None => ParseError::Eof,
            });
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| ParseError::Exponent(start))
    }

    fn exponent(&mut self) -> Result<Rational64, ParseError> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let n = self.integer()?;
            let d = if self.eat(b'/') { self.integer()? } else { 1 };
            if !self.eat(b')') || d == 0 {
                return Err(ParseError::Exponent(self.pos));
            }
            let r = Rational64::new(n, d);
            Ok(if neg { -r } else { r })
        } else {
            let neg = self.eat(b'-');
            let n = self.integer()?;
            Ok(Rational64::from(if neg { -n } else { n }))
        }
    }

    fn atom(&mut self) -> Result<(Expr, Option<Gen>), ParseError> {
        match self.peek() {
            None => Err(ParseError::Eof),
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.peek().map_or(ParseError::Eof, |c| ParseError::Char(c as char, self.pos)));
                }
                Ok((e, None))
            }
            Some(c) if c.is_ascii_digit() => Ok((Expr::int(self.integer()?), None)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                if name == "i" {
                    return Ok((Expr::i(), None));
                }
                let g = parse_gen(name, self.space).ok_or_else(|| ParseError::Ident(name.to_string()))?;
                Ok((Expr::gen(g), Some(g)))
            }
            Some(c) => Err(ParseError::Char(c as char, self.pos)),
        }
    }
}

fn constant_of(e: &Expr) -> Option<Coeff> {
    if e.is_zero() {
        return None;
    }
    let mut it = e.terms();
    let (m, c) = it.next()?;
    (m.is_one() && it.next().is_none()).then(|| c.clone())
}
