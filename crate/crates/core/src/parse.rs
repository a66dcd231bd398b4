//! Text syntax for polynomials on either side.
//!
//! ```text
//! expr   := sign? term (sign term)*
//! term   := coeff? factor ('*'? factor)*  |  coeff
//! factor := name ('^' exp)?
//! coeff  := int ('/' int)?
//! ```
//!
//! On the `Γ` side exponents are written `X^[3]`; a plain `X^3` is accepted
//! there as the same monomial. Brackets on the `R` side are rejected.
//! Juxtaposed names (`XZ`, `yz`) are split by longest match against the ring.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::monomial::Exponents;
use crate::poly::{Poly, Side};
use crate::ring::Ring;
use crate::scalar::Scalar;

impl<S: Side> Poly<S> {
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        parse_poly(ring, text)
    }
}

pub fn parse_poly<S: Side>(ring: &Ring, text: &str) -> Result<Poly<S>> {
    Parser::new(ring, text, S::DIVIDED)
        .expr()
        .map(|t| Poly::from_terms(ring, t))
}

/// Comma separated list, e.g. `"xy, y^2-x^3"`.
pub fn parse_list<S: Side>(ring: &Ring, text: &str) -> Result<Vec<Poly<S>>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let p = parse_poly::<S>(ring, piece).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
            other => other,
        })?;
        out.push(p);
        offset += piece.chars().count() + 1;
    }
    Ok(out)
}

/// Canonical text form; inverse of [`parse_poly`] on canonical strings.
pub fn format_poly<S: Side>(p: &Poly<S>) -> String {
    p.to_string()
}

/// Joins with `", "`.
pub fn format_list<S: Side>(ps: &[Poly<S>]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

struct Parser<'a> {
    ring: &'a Ring,
    chars: Vec<char>,
    pos: usize,
    divided: bool,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a Ring, text: &str, divided: bool) -> Self {
        Parser {
            ring,
            chars: text.chars().collect(),
            pos: 0,
            divided,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn names(&self) -> &'a [String] {
        if self.divided {
            self.ring.dual_names()
        } else {
            self.ring.var_names()
        }
    }

    fn expr(&mut self) -> Result<Vec<(Exponents, Scalar)>> {
        let mut terms = Vec::new();
        if self.peek().is_none() {
            return self.err("empty expression");
        }
        let mut first = true;
        while self.peek().is_some() {
            let mut negative = false;
            let mut saw_sign = false;
            while let Some(c) = self.peek() {
                match c {
                    '+' => {}
                    '-' | '\u{2212}' => negative = !negative,
                    _ => break,
                }
                saw_sign = true;
                self.pos += 1;
            }
            if !first && !saw_sign {
                return self.err(format!("unexpected `{}`", self.chars[self.pos]));
            }
            first = false;
            let (e, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            terms.push((e, c));
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(Exponents, Scalar)> {
        let field = self.ring.field();
        let mut coeff = field.one();
        let mut exps = vec![0u32; self.ring.n()];
        let mut any = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.integer()?;
            let den = if self.peek() == Some('/') {
                self.pos += 1;
                self.skip_ws();
                self.integer()?
            } else {
                BigInt::from(1)
            };
            let at = self.pos;
            coeff = field.from_ratio(&num, &den).map_err(|e| Error::Parse {
                pos: at,
                msg: e.to_string(),
            })?;
            any = true;
        }
        loop {
            let star = self.peek() == Some('*');
            if star {
                self.pos += 1;
                self.skip_ws();
            }
            match self.chars.get(self.pos) {
                Some(c) if c.is_alphabetic() => {
                    let (i, k) = self.factor()?;
                    exps[i] = exps[i].checked_add(k).ok_or_else(|| Error::Parse {
                        pos: self.pos,
                        msg: "exponent overflow".into(),
                    })?;
                    any = true;
                }
                _ if star => return self.err("expected a variable after `*`"),
                _ => break,
            }
        }
        if !any {
            return match self.chars.get(self.pos) {
                Some(c) => self.err(format!("expected a term, found `{c}`")),
                None => self.err("expected a term"),
            };
        }
        Ok((Exponents::new(exps), coeff))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        let rest = &self.chars[self.pos..];
        let best = self
            .names()
            .iter()
            .enumerate()
            .filter(|(_, name)| starts_with(rest, name))
            .max_by_key(|(_, name)| name.chars().count());
        let Some((i, name)) = best else {
            let word: String = rest.iter().take_while(|c| c.is_alphanumeric() || **c == '_').collect();
            let other = if self.divided {
                self.ring.var_names()
            } else {
                self.ring.dual_names()
            };
            if other.iter().any(|n| starts_with(rest, n)) {
                let side = if self.divided { "dual" } else { "ring" };
                return self.err(format!("`{word}` is not a {side} variable here"));
            }
            return self.err(format!("unknown variable `{word}`"));
        };
        self.pos += name.chars().count();
        if self.peek() != Some('^') {
            return Ok((i, 1));
        }
        self.pos += 1;
        if self.peek() == Some('[') {
            if !self.divided {
                return self.err("divided power bracket on the R side");
            }
            self.pos += 1;
            self.skip_ws();
            let k = self.small_integer()?;
            if self.peek() != Some(']') {
                return self.err("expected `]`");
            }
            self.pos += 1;
            Ok((i, k))
        } else {
            self.skip_ws();
            Ok((i, self.small_integer()?))
        }
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn integer(&mut self) -> Result<BigInt> {
        let s = self.digits()?;
        Ok(s.parse().expect("digit string"))
    }

    fn small_integer(&mut self) -> Result<u32> {
        let start = self.pos;
        let s = self.digits()?;
        s.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("exponent `{s}` too large"),
        })
    }
}

fn starts_with(rest: &[char], name: &str) -> bool {
    let mut it = rest.iter();
    name.chars().all(|c| it.next() == Some(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{DPPolynomial, Polynomial};
    use crate::ring::{Mode, RingContext};
    use crate::scalar::Field;

    fn ring() -> Ring {
        RingContext::with_vars(&["x", "y", "z"], Field::Rational, Mode::Graded).unwrap()
    }

    #[test]
    fn dual_terms() {
        let r = ring();
        let f = DPPolynomial::parse(&r, "Y^[3]-Z^[3]").unwrap();
        let q = Field::Rational;
        assert_eq!(f.coeff(&Exponents::new(vec![0, 3, 0])), Some(&q.one()));
        assert_eq!(f.coeff(&Exponents::new(vec![0, 0, 3])), Some(&q.from_i64(-1)));
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn ring_terms() {
        let r = RingContext::with_vars(&["x", "y"], Field::Rational, Mode::Graded).unwrap();
        let f = Polynomial::parse(&r, "y^2-x^3").unwrap();
        assert_eq!(f.to_string(), "-x^3+y^2");
    }

    #[test]
    fn juxtaposition_and_coefficients() {
        let r = ring();
        let f = DPPolynomial::parse(&r, "2X^[4] + XZ - 1/2 * Y").unwrap();
        assert_eq!(f.to_string(), "2*X^[4]+X*Z-1/2*Y");
        let g = Polynomial::parse(&r, "3yz - x").unwrap();
        assert_eq!(g.to_string(), "3*y*z-x");
    }

    #[test]
    fn unicode_minus_and_constants() {
        let r = ring();
        let f = Polynomial::parse(&r, "x\u{2212}1").unwrap();
        assert_eq!(f.to_string(), "x-1");
        assert!(Polynomial::parse(&r, "0").unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        let e = Polynomial::parse(&r, "x^[2]").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 2, .. }));
        let e = Polynomial::parse(&r, "x + q").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 4, .. }));
        assert!(DPPolynomial::parse(&r, "x").is_err());
        assert!(Polynomial::parse(&r, "x +").is_err());
        assert!(Polynomial::parse(&r, "").is_err());
        assert!(Polynomial::parse(&r, "x y").is_ok());
        assert!(Polynomial::parse(&r, "x*").is_err());
    }

    #[test]
    fn longest_name_wins() {
        let r = RingContext::new(
            vec!["x".into(), "x1".into()],
            vec!["X".into(), "X1".into()],
            Field::Rational,
            Mode::Graded,
        )
        .unwrap();
        let f = Polynomial::parse(&r, "x1x").unwrap();
        assert_eq!(f.terms().next().unwrap().0.as_slice(), &[1, 1]);
    }

    #[test]
    fn list_offsets() {
        let r = ring();
        let v = parse_list::<crate::poly::Ordinary>(&r, "xy, y^2-x^3").unwrap();
        assert_eq!(format_list(&v), "x*y, -x^3+y^2");
        let e = parse_list::<crate::poly::Ordinary>(&r, "x, q").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 3, .. }));
    }
}
