//! Group words over the alphabet `{a, t, x}` and their inverses.
//!
//! Text form: atoms `a t x` with capitals `A T X` for inverses, an optional
//! exponent `^k` on any atom or parenthesized group, and whitespace anywhere.
//! `"t^2 a x t^-1 x^-2 a"` and `"(x t)^2"` are valid words.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

/// Parsed words may not expand beyond this many letters.
pub const MAX_WORD_LEN: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    T,
    X,
}

impl Generator {
    fn symbol(self) -> char {
        match self {
            Generator::A => 'a',
            Generator::T => 't',
            Generator::X => 'x',
        }
    }
}

/// A generator with a sign: `inverse = true` is `g^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const A: Letter = Letter::new(Generator::A, false);
    pub const A_INV: Letter = Letter::new(Generator::A, true);
    pub const T: Letter = Letter::new(Generator::T, false);
    pub const T_INV: Letter = Letter::new(Generator::T, true);
    pub const X: Letter = Letter::new(Generator::X, false);
    pub const X_INV: Letter = Letter::new(Generator::X, true);

    /// All six letters, in the order `a A t T x X`.
    pub const ALL: [Letter; 6] = [
        Letter::A,
        Letter::A_INV,
        Letter::T,
        Letter::T_INV,
        Letter::X,
        Letter::X_INV,
    ];

    pub const fn new(generator: Generator, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Exponent sums `(σ_a, σ_t, σ_x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExponentSums {
    pub a: i64,
    pub t: i64,
    pub x: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {position}")]
pub struct ParseWordError {
    pub position: usize,
    pub message: String,
}

/// A finite sequence of letters, not necessarily freely reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    /// Appends `g^k` (|k| letters of `g` or `g^{-1}`).
    pub fn push_power(&mut self, g: Generator, k: i64) {
        let l = Letter::new(g, k < 0);
        self.letters
            .extend(std::iter::repeat_n(l, k.unsigned_abs() as usize));
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// The formal inverse: reversed order, each letter inverted.
    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn contains_x(&self) -> bool {
        self.letters.iter().any(|l| l.generator == Generator::X)
    }

    /// Cancels adjacent `g g^{-1}` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inv())
    }

    pub fn exponent_sums(&self) -> ExponentSums {
        let mut s = ExponentSums::default();
        for l in &self.letters {
            match l.generator {
                Generator::A => s.a += l.sign(),
                Generator::T => s.t += l.sign(),
                Generator::X => s.x += l.sign(),
            }
        }
        s
    }

    /// Uniformly random element of the sphere `S_m` of freely reduced words of
    /// length `m`.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Word {
        Word {
            letters: RandomLetters::new(rng).take(m).collect(),
        }
    }
}

/// Endless stream of letters forming a freely reduced word: the first letter
/// is uniform over all six, each later one uniform over the five that do not
/// cancel its predecessor.
pub struct RandomLetters<'r, R: Rng + ?Sized> {
    rng: &'r mut R,
    prev: Option<Letter>,
}

impl<'r, R: Rng + ?Sized> RandomLetters<'r, R> {
    pub fn new(rng: &'r mut R) -> Self {
        RandomLetters { rng, prev: None }
    }
}

impl<R: Rng + ?Sized> Iterator for RandomLetters<'_, R> {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        let l = match self.prev {
            None => Letter::ALL[self.rng.random_range(0..6)],
            Some(p) => {
                let banned = p.inv();
                let mut k = self.rng.random_range(0..5);
                let bi = Letter::ALL.iter().position(|&l| l == banned).unwrap();
                if k >= bi {
                    k += 1;
                }
                Letter::ALL[k]
            }
        };
        self.prev = Some(l);
        Some(l)
    }
}

impl fmt::Display for Word {
    /// Runs of equal letters are written as powers; letters are separated by
    /// spaces. The empty word prints as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i + 1;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let k = (j - i) as i64 * l.sign();
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{}", l.generator.symbol())?;
            } else {
                write!(f, "{}^{}", l.generator.symbol(), k)?;
            }
            i = j;
        }
        Ok(())
    }
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl WordParser<'_> {
    fn err<T>(&self, position: usize, message: &str) -> Result<T, ParseWordError> {
        Err(ParseWordError {
            position,
            message: message.to_string(),
        })
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

    fn exponent(&mut self) -> Result<i64, ParseWordError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let neg = self.src.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            return self.err(start, "expected an integer exponent");
        }
        let text = std::str::from_utf8(&self.src[digits..self.pos]).unwrap();
        match text.parse::<i64>() {
            Ok(v) if v as u64 <= MAX_WORD_LEN as u64 => Ok(if neg { -v } else { v }),
            _ => self.err(start, "exponent out of range"),
        }
    }

    /// sequence := item*; stops at ')' or end of input
    fn sequence(&mut self, out: &mut Vec<Letter>) -> Result<(), ParseWordError> {
        loop {
            let at = {
                self.skip_ws();
                self.pos
            };
            let Some(c) = self.peek() else {
                return Ok(());
            };
            let mut item = Vec::new();
            match c {
                b')' => return Ok(()),
                b'(' => {
                    self.pos += 1;
                    self.sequence(&mut item)?;
                    if self.peek() != Some(b')') {
                        return self.err(self.pos, "expected ')'");
                    }
                    self.pos += 1;
                }
                b'a' | b't' | b'x' | b'A' | b'T' | b'X' => {
                    self.pos += 1;
                    let g = match c.to_ascii_lowercase() {
                        b'a' => Generator::A,
                        b't' => Generator::T,
                        _ => Generator::X,
                    };
                    item.push(Letter::new(g, c.is_ascii_uppercase()));
                }
                _ => return self.err(at, "unexpected character"),
            }
            let k = self.exponent()?;
            let total = out.len() as u64 + item.len() as u64 * k.unsigned_abs();
            if total > MAX_WORD_LEN as u64 {
                return self.err(at, "word too long");
            }
            let piece: Vec<Letter> = if k < 0 {
                item.iter().rev().map(|l| l.inv()).collect()
            } else {
                item
            };
            for _ in 0..k.unsigned_abs() {
                out.extend_from_slice(&piece);
            }
        }
    }
}

impl FromStr for Word {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = WordParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let mut letters = Vec::new();
        p.sequence(&mut letters)?;
        if p.peek().is_some() {
            return p.err(p.pos, "unbalanced ')'");
        }
        Ok(Word { letters })
    }
}
