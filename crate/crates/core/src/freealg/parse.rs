//! Recursive-descent parser for the expression language
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' '-'? uint)?
//! atom   := 'x[' uint ',' uint ']' | 'q' | rational | '(' expr ')'
//! ```
//!
//! Negative exponents are accepted only on units `c*q^e`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{GenIndex, NCPolynomial};
use crate::coeff::LaurentScalar;
use crate::error::{Error, Result};

/// Caps on input complexity so hostile input cannot exhaust memory.
const MAX_DEPTH: usize = 64;
const MAX_POWER: u64 = 64;
const MAX_TERMS: usize = 100_000;
const MAX_WORK: usize = 4_000_000;
const MAX_BITS: u64 = 65_536;
const MAX_DIGITS: usize = 4_096;
const MAX_Q_EXP: i32 = 1_000_000;

pub fn parse_expr(text: &str, n: usize) -> Result<NCPolynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
        depth: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

/// Parses an expression that must reduce to a scalar in `Q[q, q^-1]`.
pub(crate) fn parse_scalar(text: &str) -> Result<LaurentScalar> {
    // n = 0 admits no generators at all.
    let p = parse_expr(text, 0)?;
    p.as_scalar().ok_or(Error::Syntax {
        pos: 0,
        msg: "expected a scalar".into(),
    })
}

fn cost(p: &NCPolynomial) -> usize {
    p.terms().map(|(w, c)| (w.len() + 1) * c.len()).sum()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
    depth: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an unsigned integer"));
        }
        if self.pos - start > MAX_DIGITS {
            return Err(Error::Syntax {
                pos: start,
                msg: "integer literal too long".into(),
            });
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn small_uint(&mut self) -> Result<u64> {
        let start = self.pos;
        let v = self.uint()?;
        u64::try_from(v).map_err(|_| Error::Syntax {
            pos: start,
            msg: "integer too large".into(),
        })
    }

    fn check_size(&self, p: &NCPolynomial) -> Result<()> {
        if p.len() > MAX_TERMS {
            return Err(self.err("expression too large"));
        }
        let too_wide = p.terms().any(|(_, c)| {
            c.terms().iter().any(|(e, r)| {
                e.abs() > MAX_Q_EXP || r.numer().bits() > MAX_BITS || r.denom().bits() > MAX_BITS
            })
        });
        if too_wide {
            return Err(self.err("coefficient too large"));
        }
        Ok(())
    }

    fn product(&self, a: &NCPolynomial, b: &NCPolynomial) -> Result<NCPolynomial> {
        if cost(a).saturating_mul(cost(b)) > MAX_WORK {
            return Err(self.err("expression too large"));
        }
        let p = a.free_mul(b);
        self.check_size(&p)?;
        Ok(p)
    }

    fn expr(&mut self) -> Result<NCPolynomial> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("nesting too deep"));
        }
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            let sign = match self.peek() {
                Some(b'+') => LaurentScalar::one(),
                Some(b'-') => -LaurentScalar::one(),
                _ => break,
            };
            self.pos += 1;
            let t = self.term()?;
            acc.add_scaled(&t, &sign);
            self.check_size(&acc)?;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<NCPolynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = self.product(&acc, &f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NCPolynomial> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        let exp_pos = self.pos;
        let k = self.small_uint()?;
        if k > MAX_POWER {
            return Err(Error::Syntax {
                pos: exp_pos,
                msg: format!("exponent larger than {MAX_POWER}"),
            });
        }
        let base = if negative {
            let unit = base
                .as_scalar()
                .and_then(|c| c.inverse())
                .ok_or_else(|| self.err("negative exponent on a non-unit"))?;
            NCPolynomial::scalar(self.n, unit)
        } else {
            base
        };
        let mut acc = NCPolynomial::one(self.n);
        for _ in 0..k {
            acc = self.product(&acc, &base)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<NCPolynomial> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                self.expect(b'[')?;
                let start = self.pos;
                let i = self.small_uint()?;
                self.expect(b',')?;
                let j = self.small_uint()?;
                self.expect(b']')?;
                let g = GenIndex::new(i as usize, j as usize, self.n).map_err(|e| match e {
                    Error::IndexOutOfRange { .. } => Error::Syntax {
                        pos: start,
                        msg: format!("index ({i},{j}) out of range 1..{}", self.n),
                    },
                    other => other,
                })?;
                Ok(NCPolynomial::generator(g))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(NCPolynomial::scalar(self.n, LaurentScalar::q_pow(1)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let den = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.uint()?;
                    if d.is_zero() {
                        return Err(Error::Syntax {
                            pos: at,
                            msg: "zero denominator".into(),
                        });
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(NCPolynomial::scalar(
                    self.n,
                    LaurentScalar::from_rational(BigRational::new(num, den)),
                ))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
