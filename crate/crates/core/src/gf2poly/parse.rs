//! Text form: terms `1 | z | z^<int>` (and `0`, contributing nothing) joined by
//! `+`. Duplicate terms cancel. Formatting lists exponents in ascending order.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{LaurentPoly, MAX_EXPONENT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {position}")]
pub struct ParsePolyError {
    pub position: usize,
    pub message: String,
}

impl ParsePolyError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParsePolyError {
            position,
            message: message.into(),
        }
    }
}

pub(crate) struct Scanner<'a> {
    src: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> Scanner<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Scanner {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub(crate) fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Next byte without skipping whitespace.
    pub(crate) fn peek_raw(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// Optionally signed decimal integer.
    pub(crate) fn int(&mut self) -> Result<i64, ParsePolyError> {
        self.skip_ws();
        let start = self.pos;
        let neg = match self.src.get(self.pos) {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            return Err(ParsePolyError::new(start, "expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[digits..self.pos]).unwrap();
        let v: i64 = text
            .parse()
            .ok()
            .filter(|v: &i64| *v <= MAX_EXPONENT)
            .ok_or_else(|| ParsePolyError::new(start, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }
}

impl FromStr for LaurentPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut sc = Scanner::new(s);
        let mut exps = Vec::new();
        loop {
            let at = {
                sc.skip_ws();
                sc.pos
            };
            match sc.peek() {
                Some(b'0') => {
                    sc.pos += 1;
                }
                Some(b'1') => {
                    sc.pos += 1;
                    exps.push(0);
                }
                Some(b'z') => {
                    sc.pos += 1;
                    if sc.eat(b'^') {
                        let paren = sc.eat(b'(');
                        exps.push(sc.int()?);
                        if paren && !sc.eat(b')') {
                            return Err(ParsePolyError::new(sc.pos, "expected ')'"));
                        }
                    } else {
                        exps.push(1);
                    }
                }
                Some(_) => return Err(ParsePolyError::new(at, "expected a term 1, z or z^k")),
                None => return Err(ParsePolyError::new(at, "expected a term")),
            }
            // a digit glued to a constant term, e.g. "10", is not a term
            if matches!(sc.src.get(sc.pos), Some(c) if c.is_ascii_alphanumeric()) {
                return Err(ParsePolyError::new(sc.pos, "unexpected character"));
            }
            if sc.at_end() {
                break;
            }
            if !sc.eat(b'+') {
                return Err(ParsePolyError::new(sc.pos, "expected '+'"));
            }
        }
        Ok(LaurentPoly::from_exponents(exps))
    }
}

pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, e: i64) -> fmt::Result {
    match e {
        0 => write!(f, "1"),
        1 => write!(f, "z"),
        _ => write!(f, "z^{e}"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, e) in self.exponents().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write_monomial(f, e)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_terms() {
        let f: LaurentPoly = "z^-2 + 1 + z^3".parse().unwrap();
        assert_eq!(f.exponents().collect::<Vec<_>>(), vec![-2, 0, 3]);
        assert_eq!(f.to_string(), "z^-2 + 1 + z^3");
    }

    #[test]
    fn duplicate_terms_cancel() {
        assert!("z + z".parse::<LaurentPoly>().unwrap().is_zero());
        assert!("0".parse::<LaurentPoly>().unwrap().is_zero());
    }

    #[test]
    fn formats_ascending() {
        let f: LaurentPoly = "1+z^2".parse().unwrap();
        assert_eq!(f.to_string(), "1 + z^2");
        let g: LaurentPoly = "z^3+z+1".parse().unwrap();
        assert_eq!(g.to_string(), "1 + z + z^3");
        assert_eq!("z^(-4)".parse::<LaurentPoly>().unwrap().to_string(), "z^-4");
    }

    #[test]
    fn reports_error_positions() {
        let e = "1 + y".parse::<LaurentPoly>().unwrap_err();
        assert_eq!(e.position, 4);
        let e = "1 + ".parse::<LaurentPoly>().unwrap_err();
        assert_eq!(e.position, 4);
        let e = "z^".parse::<LaurentPoly>().unwrap_err();
        assert_eq!(e.position, 2);
        let e = "1 z".parse::<LaurentPoly>().unwrap_err();
        assert_eq!(e.position, 2);
        assert!("12".parse::<LaurentPoly>().is_err());
        assert!("z^99999999999999999999".parse::<LaurentPoly>().is_err());
    }
}
