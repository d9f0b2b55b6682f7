//! Text syntax for superfield expressions.
//!
//! ```text
//! sum    := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := number | 'i' | 'vac' | 'h[' n ']' | 'Gamma[' v, … ']'
//!         | 'T(' sum ')' | 'S(' sum ')' | ':' ['-'] term ['-'] term ':' | '(' sum ')'
//! ```
//! Indices of `h` start at 1; a bare scalar `c` means `c·vac`.

use alloc::format;
use alloc::vec::Vec;
use core::str::FromStr;

use super::FieldExpr;
use crate::exactnum::Scalar;
use crate::lattice::Lattice;
use crate::Error;

enum Piece {
    Num(Scalar),
    Field(FieldExpr),
}

impl Piece {
    fn into_field(self) -> FieldExpr {
        match self {
            Piece::Num(c) => FieldExpr::Vacuum.scale(c),
            Piece::Field(e) => e,
        }
    }
}

struct Parser<'s> {
    src: &'s str,
    pos: usize,
    rank: usize,
}

impl<'s> Parser<'s> {
    fn error(&self, msg: &str) -> Error {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse(format!("{msg} at line {line}, column {col}"))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if rest.starts_with(kw) {
            let next = rest[kw.len()..].chars().next();
            if !next.is_some_and(|c| c.is_ascii_alphanumeric()) {
                self.pos += kw.len();
                return true;
            }
        }
        false
    }

    fn integer(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let mut len = 0;
        for (k, c) in rest.char_indices() {
            if c.is_ascii_digit() || (k == 0 && c == '-') {
                len = k + 1;
            } else {
                break;
            }
        }
        let s = &rest[..len];
        let v = i64::from_str(s).map_err(|_| self.error("expected an integer"))?;
        self.pos = start + len;
        Ok(v)
    }

    fn number(&mut self) -> Result<Scalar, Error> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let mut len = 0;
        let mut slash = false;
        for (k, c) in rest.char_indices() {
            if c.is_ascii_digit() {
                len = k + 1;
            } else if c == '/' && !slash && len == k {
                slash = true;
            } else {
                break;
            }
        }
        let s = &rest[..len];
        let v = Scalar::from_str(s).map_err(|_| self.error("invalid number"))?;
        self.pos += len;
        Ok(v)
    }

    fn sum(&mut self) -> Result<Piece, Error> {
        let mut items = Vec::new();
        let neg = self.eat('-');
        items.push(negate(self.term()?, neg));
        loop {
            if self.eat('+') {
                items.push(self.term()?);
            } else if self.eat('-') {
                items.push(negate(self.term()?, true));
            } else {
                break;
            }
        }
        if items.len() == 1 {
            return Ok(items.pop().expect("one item"));
        }
        if items.iter().all(|p| matches!(p, Piece::Num(_))) {
            let mut c = Scalar::zero();
            for p in items {
                if let Piece::Num(x) = p {
                    c = c + x;
                }
            }
            return Ok(Piece::Num(c));
        }
        Ok(Piece::Field(FieldExpr::Sum(items.into_iter().map(Piece::into_field).collect())))
    }

    fn signed_term(&mut self) -> Result<Piece, Error> {
        let neg = self.eat('-');
        Ok(negate(self.term()?, neg))
    }

    fn term(&mut self) -> Result<Piece, Error> {
        let mut coeff = Scalar::one();
        let mut field: Option<FieldExpr> = None;
        loop {
            match self.factor()? {
                Piece::Num(c) => coeff = coeff * c,
                Piece::Field(e) => {
                    if field.is_some() {
                        return Err(self.error("product of two fields, write `:a b:`"));
                    }
                    field = Some(e);
                }
            }
            if !self.eat('*') {
                break;
            }
        }
        Ok(match field {
            None => Piece::Num(coeff),
            Some(e) if coeff.is_one() => Piece::Field(e),
            Some(e) => Piece::Field(e.scale(coeff)),
        })
    }

    fn factor(&mut self) -> Result<Piece, Error> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(c) if c.is_ascii_digit() => Ok(Piece::Num(self.number()?)),
            Some('(') => {
                self.expect('(')?;
                let p = self.sum()?;
                self.expect(')')?;
                Ok(p)
            }
            Some(':') => {
                self.expect(':')?;
                let a = self.signed_term()?.into_field();
                let b = self.signed_term()?.into_field();
                self.expect(':')?;
                Ok(Piece::Field(FieldExpr::norm(a, b)))
            }
            Some(_) => {
                if self.keyword("vac") {
                    Ok(Piece::Field(FieldExpr::Vacuum))
                } else if self.keyword("i") {
                    Ok(Piece::Num(Scalar::i()))
                } else if self.keyword("h") {
                    self.expect('[')?;
                    let at = self.pos;
                    let i = self.integer()?;
                    if i < 1 || i as usize > self.rank {
                        self.pos = at;
                        return Err(self.error(&format!("unknown generator h[{i}]")));
                    }
                    self.expect(']')?;
                    Ok(Piece::Field(FieldExpr::h(self.rank, i as usize - 1)))
                } else if self.keyword("Gamma") {
                    self.expect('[')?;
                    let mut v = alloc::vec![self.integer()?];
                    while self.eat(',') {
                        v.push(self.integer()?);
                    }
                    self.expect(']')?;
                    if v.len() != self.rank {
                        return Err(Error::RankMismatch { expected: self.rank, got: v.len() });
                    }
                    Ok(Piece::Field(FieldExpr::Gamma(v)))
                } else if self.keyword("T") || self.keyword("S") {
                    let op = self.src[..self.pos].chars().last();
                    self.expect('(')?;
                    let inner = self.sum()?.into_field();
                    self.expect(')')?;
                    Ok(Piece::Field(if op == Some('T') { inner.t() } else { inner.s() }))
                } else {
                    Err(self.error("unexpected token"))
                }
            }
        }
    }
}

fn negate(p: Piece, neg: bool) -> Piece {
    if !neg {
        return p;
    }
    match p {
        Piece::Num(c) => Piece::Num(-c),
        Piece::Field(FieldExpr::Smul(c, e)) => Piece::Field(FieldExpr::Smul(-c, e)),
        Piece::Field(e) => Piece::Field(e.scale(Scalar::int(-1))),
    }
}

/// Parse an expression over the lattice `lat`.
pub fn parse_expr(src: &str, lat: &Lattice) -> Result<FieldExpr, Error> {
    let mut p = Parser { src, pos: 0, rank: lat.rank() };
    let e = p.sum()?.into_field();
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rank(r: usize) -> Lattice {
        let g = (0..r).map(|i| (0..r).map(|j| if i == j { 2 } else { 0 }).collect()).collect();
        Lattice::new(g).unwrap()
    }

    #[test]
    fn grammar_examples() {
        let l = rank(1);
        let h = FieldExpr::h(1, 0);
        assert_eq!(parse_expr(":h[1] S(Gamma[1]):", &l).unwrap(), FieldExpr::norm(h.clone(), FieldExpr::gamma(&[1]).s()));
        assert_eq!(
            parse_expr("1/2*:h[1] h[1]:", &l).unwrap(),
            FieldExpr::norm(h.clone(), h.clone()).scale(Scalar::ratio(1, 2))
        );
        assert!(matches!(parse_expr("Gamma[1,0]", &l), Err(Error::RankMismatch { expected: 1, got: 2 })));
        assert!(matches!(parse_expr("h[2]", &l), Err(Error::Parse(_))));
        assert!(matches!(parse_expr("h[1] *", &l), Err(Error::Parse(_))));
        assert_eq!(parse_expr("i*h[1]", &l).unwrap(), h.clone().scale(Scalar::i()));
        assert_eq!(
            parse_expr("T(h[1]) - 2", &l).unwrap(),
            FieldExpr::Sum(vec![h.t(), FieldExpr::Vacuum.scale(Scalar::int(-2))])
        );
    }
}
