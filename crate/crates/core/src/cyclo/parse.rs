//! Parser for `E(n)`-notation sums.
//!
//! Accepted forms, whitespace ignored:
//!
//! ```text
//! expr  := ['-'] term (('+'|'-') term)*
//! term  := coeff ['*' atom] | atom
//! coeff := integer ['/' positive-integer]
//! atom  := 'E(' positive-integer ')' ['^' ['-'] integer]
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::CycloNum;
use crate::error::{Error, Result};
use crate::numtheory::lcm;

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
}

struct Term {
    coeff: BigRational,
    root: Option<(u64, i64)>,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Lexer { chars, at: 0, src }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.src.len(), |c| c.0)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|c| c.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
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
                Some(got) => self.err(format!("expected '{c}', found '{got}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.at;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return match self.peek() {
                Some(c) => self.err(format!("expected digit, found '{c}'")),
                None => self.err("expected digit, found end of input"),
            };
        }
        let s: String = self.chars[start..self.at].iter().map(|c| c.1).collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn small(&mut self, what: &str) -> Result<u64> {
        let pos = self.pos();
        let n = self.digits()?;
        u64::try_from(&n).map_err(|_| Error::Parse {
            pos,
            msg: format!("{what} {n} is too large"),
        })
    }

    fn atom(&mut self) -> Result<(u64, i64)> {
        self.expect('E')?;
        self.expect('(')?;
        if self.peek() == Some('-') {
            return self.err("root order must be positive");
        }
        let pos = self.pos();
        let n = self.small("root order")?;
        if n == 0 {
            return Err(Error::Parse {
                pos,
                msg: "E(0) is not a root of unity".into(),
            });
        }
        self.expect(')')?;
        let mut e = 1i64;
        if self.eat('^') {
            let neg = self.eat('-');
            let k = self.small("exponent")? % n;
            e = if neg { -(k as i64) } else { k as i64 };
        }
        Ok((n, e.rem_euclid(n as i64)))
    }

    fn term(&mut self) -> Result<Term> {
        if self.peek() == Some('E') {
            return Ok(Term {
                coeff: BigRational::one(),
                root: Some(self.atom()?),
            });
        }
        let num = self.digits()?;
        let coeff = if self.eat('/') {
            let pos = self.pos();
            let den = self.digits()?;
            if den.is_zero() {
                return Err(Error::Parse {
                    pos,
                    msg: "zero denominator".into(),
                });
            }
            BigRational::new(num, den)
        } else {
            BigRational::from_integer(num)
        };
        let root = if self.eat('*') { Some(self.atom()?) } else { None };
        Ok(Term { coeff, root })
    }
}

/// Parses a cyclotomic expression into canonical form.
pub fn parse_cyclo(src: &str) -> Result<CycloNum> {
    let mut lx = Lexer::new(src);
    if lx.peek().is_none() {
        return lx.err("empty expression");
    }
    let mut terms = Vec::new();
    let mut neg = lx.eat('-');
    loop {
        let mut t = lx.term()?;
        if neg {
            t.coeff = -t.coeff;
        }
        terms.push(t);
        match lx.peek() {
            None => break,
            Some('+') => neg = false,
            Some('-') => neg = true,
            Some(c) => return lx.err(format!("unexpected '{c}'")),
        }
        lx.at += 1;
    }
    let n = terms.iter().filter_map(|t| t.root.map(|r| r.0)).fold(1, lcm);
    let n = if n % 4 == 2 { 2 * n } else { n };
    let mut v = vec![BigRational::zero(); n as usize];
    for t in terms {
        let e = match t.root {
            None => 0,
            Some((m, e)) => e as u64 * (n / m),
        };
        v[e as usize] += t.coeff;
    }
    Ok(CycloNum::from_dense(n, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> CycloNum {
        parse_cyclo(s).unwrap()
    }

    #[test]
    fn atoms_and_rationals() {
        assert_eq!(p("E(4)"), CycloNum::root_of_unity(4, 1));
        assert_eq!(p("E(4)").order(), 4);
        assert_eq!(p("3"), CycloNum::from_integer(3));
        assert_eq!(p("3").order(), 1);
        assert_eq!(
            p("-7/14"),
            CycloNum::from_rational(BigRational::new((-1).into(), 2.into()))
        );
        assert_eq!(p("E(5)^7"), p("E(5)^2"));
        assert_eq!(p("E(5)^-1"), p("E(5)^4"));
        assert_eq!(p(" 2 * E(3) ^ 2 "), p("2*E(3)^2"));
    }

    #[test]
    fn golden_ratio_expression() {
        // (1 - sqrt5)/2, cross-checked numerically
        let x = p("-E(5)-E(5)^4");
        let angle = 2.0 * std::f64::consts::PI / 5.0;
        let numeric = -2.0 * angle.cos();
        assert!((numeric - (1.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
        // minimal polynomial x^2 - x - 1 of (1 ± sqrt5)/2
        let mp = &(&(&x * &x) - &x) - &CycloNum::one();
        assert!(mp.is_zero());
        assert_eq!(x.order(), 5);
    }

    #[test]
    fn round_trip_printing() {
        for s in ["E(4)", "-E(5)-E(5)^4", "1+2*E(4)", "1/2*E(8)-E(8)^3", "-3", "0"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("E(6)").to_string(), "-E(3)^2");
    }

    #[test]
    fn errors_report_positions() {
        let cases = [
            ("E(0)", 2),
            ("E(-3)", 2),
            ("E(4", 3),
            ("1+", 2),
            ("2*", 2),
            ("E(4)x", 4),
            ("", 0),
            ("1/0", 2),
            ("--1", 1),
        ];
        for (s, pos) in cases {
            match parse_cyclo(s) {
                Err(Error::Parse { pos: got, .. }) => assert_eq!(got, pos, "{s}"),
                other => panic!("{s}: {other:?}"),
            }
        }
    }
}
