//! Parser for the polynomial text grammar.
//!
//! ```text
//! poly   := ws [sign] term (sign term)* ws
//! term   := factor ('*' factor)*
//! factor := integer ['/' integer] | name ['^' integer]
//! ```
//!
//! Names are resolved against the variable list of the owning algebra. Error
//! columns are 1-based character positions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{MPoly, Rational};
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { column, message: message.into() })
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn factor(&mut self, acc: &mut MPoly) -> Result<()> {
        self.skip_ws();
        let col = self.column();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer().expect("digit present");
                let mut value = Rational::from_integer(num);
                if self.peek() == Some('/') {
                    let slash = self.column();
                    self.pos += 1;
                    match self.integer() {
                        Some(d) if !d.is_zero() => value /= Rational::from_integer(d),
                        Some(_) => return err(slash, "zero denominator"),
                        None => return err(slash, "`/` must be followed by a positive integer"),
                    }
                }
                *acc = acc.scale(&value);
                Ok(())
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_' || c == '\'') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let Some(i) = self.names.iter().position(|n| *n == name) else {
                    return err(col, format!("unknown variable `{name}`"));
                };
                let mut exp = 1u32;
                self.skip_ws();
                if self.peek() == Some('^') {
                    let caret = self.column();
                    self.pos += 1;
                    self.skip_ws();
                    match self.integer().and_then(|e| u32::try_from(e).ok()) {
                        Some(e) => exp = e,
                        None => return err(caret, "`^` must be followed by a non-negative integer exponent"),
                    }
                }
                *acc = &*acc * &MPoly::var(self.names.len(), i).pow(exp);
                Ok(())
            }
            Some(c) => err(col, format!("unexpected character `{c}`")),
            None => err(col, "unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = MPoly::one(self.names.len());
        self.factor(&mut acc)?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                self.factor(&mut acc)?;
            } else {
                return Ok(acc);
            }
        }
    }
}

/// Parses `text` as a polynomial in the variables `names`.
pub fn parse_poly(text: &str, names: &[String]) -> Result<MPoly> {
    let mut cur = Cursor { chars: text.chars().collect(), pos: 0, names };
    let n = names.len();
    let mut total = MPoly::zero(n);
    cur.skip_ws();
    let mut sign = Rational::one();
    match cur.peek() {
        Some('-') => {
            sign = -sign;
            cur.pos += 1;
        }
        Some('+') => cur.pos += 1,
        _ => {}
    }
    loop {
        let t = cur.term()?;
        total = &total + &t.scale(&sign);
        cur.skip_ws();
        match cur.peek() {
            Some('+') => sign = Rational::one(),
            Some('-') => sign = -Rational::one(),
            None => return Ok(total),
            Some(c) => return err(cur.column(), format!("unexpected character `{c}`")),
        }
        cur.pos += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::poly::{rat, ratio};

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn parses_grammar() {
        let p = parse_poly("2*x^2*y - 3/2*y + 1", &xy()).unwrap();
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let q = &(&(&x.pow(2) * &y).scale(&rat(2)) - &y.scale(&ratio(3, 2))) + &MPoly::one(2);
        assert_eq!(p, q);
        assert_eq!(parse_poly("  -x*y*2 ", &xy()).unwrap(), (&x * &y).scale(&rat(-2)));
        assert_eq!(parse_poly("0", &xy()).unwrap(), MPoly::zero(2));
        assert_eq!(parse_poly("x - x", &xy()).unwrap(), MPoly::zero(2));
    }

    #[test]
    fn dangling_caret_reports_its_column() {
        match parse_poly("2*x^", &xy()) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_names_and_garbage() {
        assert!(matches!(parse_poly("x + z", &xy()), Err(Error::Parse { column: 5, .. })));
        assert!(matches!(parse_poly("x +", &xy()), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x ** y", &xy()), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(parse_poly("1/0", &xy()), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("", &xy()), Err(Error::Parse { column: 1, .. })));
    }

    #[test]
    fn constants_in_zero_variables() {
        let p = parse_poly("-7/3", &[]).unwrap();
        assert_eq!(p.as_constant(), Some(ratio(-7, 3)));
    }
}
