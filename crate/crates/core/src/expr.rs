//! Lattice expressions such as `2*U + U(2) + 2*E8 + <-8>`.
//!
//! ```text
//! Expr := Term ("+" Term)*
//! Term := [Int "*"] Atom
//! Atom := "U" ["(" Int ")"] | "E8" ["(" Int ")"] | "<" Int ">" | "L[" Int "]" | "M"
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::Lattice;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `U` or `U(m)`.
    U(Option<i64>),
    /// `E8` or `E8(m)`, negative definite before scaling.
    E8(Option<i64>),
    /// `<t>`.
    Diag(i64),
    /// `L[n]`.
    K3n(i64),
    /// Mukai lattice.
    Mukai,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub multiplicity: Option<u64>,
    pub atom: Atom,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeExpr {
    pub terms: Vec<Term>,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::U(None) => f.write_str("U"),
            Atom::U(Some(m)) => write!(f, "U({m})"),
            Atom::E8(None) => f.write_str("E8"),
            Atom::E8(Some(m)) => write!(f, "E8({m})"),
            Atom::Diag(t) => write!(f, "<{t}>"),
            Atom::K3n(n) => write!(f, "L[{n}]"),
            Atom::Mukai => f.write_str("M"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.multiplicity {
            write!(f, "{k}*")?;
        }
        write!(f, "{}", self.atom)
    }
}

impl fmt::Display for LatticeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.err("expected integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse().map_err(|_| Error::Parse { pos: start, msg: "integer out of range".into() })
    }

    fn scale(&mut self) -> Result<Option<i64>> {
        if !self.eat("(") {
            return Ok(None);
        }
        let at = self.pos;
        let m = self.int()?;
        self.expect(")")?;
        if m == 0 {
            return Err(Error::InvalidParameter(format!("zero scale at byte {at}")));
        }
        Ok(Some(m))
    }

    fn atom(&mut self) -> Result<Atom> {
        if self.eat("E8") {
            return Ok(Atom::E8(self.scale()?));
        }
        if self.eat("U") {
            return Ok(Atom::U(self.scale()?));
        }
        if self.eat("L[") {
            let at = self.pos;
            let n = self.int()?;
            self.expect("]")?;
            if n < 2 {
                return Err(Error::InvalidParameter(format!("L[{n}] at byte {at} needs n >= 2")));
            }
            return Ok(Atom::K3n(n));
        }
        if self.eat("M") {
            return Ok(Atom::Mukai);
        }
        if self.eat("<") {
            let at = self.pos;
            let t = self.int()?;
            self.expect(">")?;
            if t == 0 || t % 2 != 0 {
                return Err(Error::InvalidParameter(format!("<{t}> at byte {at} must be even and nonzero")));
            }
            return Ok(Atom::Diag(t));
        }
        self.err("expected U, E8, <t>, L[n] or M")
    }

    fn term(&mut self) -> Result<Term> {
        let multiplicity = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                let k = self.int()?;
                self.expect("*")?;
                if k <= 0 {
                    return Err(Error::InvalidParameter(format!("multiplicity at byte {at} must be positive")));
                }
                Some(k as u64)
            }
            _ => None,
        };
        Ok(Term { multiplicity, atom: self.atom()? })
    }

    fn expr(&mut self) -> Result<LatticeExpr> {
        let mut terms = vec![self.term()?];
        while self.eat("+") {
            terms.push(self.term()?);
        }
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(LatticeExpr { terms })
    }
}

pub fn parse_lattice(text: &str) -> Result<LatticeExpr> {
    Parser { src: text.as_bytes(), pos: 0 }.expr()
}

impl FromStr for LatticeExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_lattice(s)
    }
}

impl Atom {
    pub fn lattice(&self) -> Result<Lattice> {
        match *self {
            Atom::U(m) => Ok(Lattice::scaled_u(m.unwrap_or(1))),
            Atom::E8(m) => Lattice::e8().rescale(m.unwrap_or(1)),
            Atom::Diag(t) => Lattice::diagonal(t),
            Atom::K3n(n) => Lattice::k3n(n),
            Atom::Mukai => Ok(Lattice::mukai()),
        }
    }
}

impl LatticeExpr {
    /// The orthogonal direct sum of all terms.
    pub fn lattice(&self) -> Result<Lattice> {
        let mut parts = Vec::new();
        for t in &self.terms {
            let l = t.atom.lattice()?;
            for _ in 0..t.multiplicity.unwrap_or(1) {
                parts.push(l.clone());
            }
        }
        Ok(Lattice::sum(&parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let e = parse_lattice("2*U + 2*E8 + <-2>").unwrap();
        let l = e.lattice().unwrap();
        assert_eq!(l.rank(), 21);
        assert_eq!(e.to_string(), "2*U + 2*E8 + <-2>");
        let s = parse_lattice("U + U(2) + 2*E8 + <-8>").unwrap();
        assert_eq!(s.lattice().unwrap().rank(), 21);
        assert_eq!(parse_lattice("L[3]").unwrap().lattice().unwrap(), Lattice::k3n(3).unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_lattice("<3>"), Err(Error::InvalidParameter(_))));
        assert!(matches!(parse_lattice("U(0)"), Err(Error::InvalidParameter(_))));
        assert_eq!(parse_lattice("U + "), Err(Error::Parse { pos: 4, msg: "expected U, E8, <t>, L[n] or M".into() }));
        assert!(matches!(parse_lattice("U V"), Err(Error::Parse { pos: 2, .. })));
    }
}
