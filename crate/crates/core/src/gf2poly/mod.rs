//! Laurent polynomials over GF(2).
//!
//! A [`LaurentPoly`] is kept in strict form: an `order` (the exponent of the
//! trailing monomial) and a bit-packed coefficient string that starts and ends
//! with a one. The zero polynomial has an empty string and order 0, so derived
//! equality is structural equality.
//!
//! Arithmetic reduces to plain polynomials in `GF(2)[z]` by factoring out the
//! trailing monomial, which is a unit.

mod kernel;
pub(crate) mod parse;

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use parse::ParsePolyError;

/// Exponents must stay within `±MAX_EXPONENT`.
pub const MAX_EXPONENT: i64 = 1 << 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("exponent arithmetic exceeds the supported range (±2^60)")]
    Capacity,
}

/// A Laurent polynomial over GF(2) in strict `(order, bits)` form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    order: i64,
    len: usize,
    words: Vec<u64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// The monomial `z^k`.
    pub fn monomial(k: i64) -> Self {
        LaurentPoly {
            order: k,
            len: 1,
            words: vec![1],
        }
    }

    /// Builds the polynomial `Σ bits[k]·z^{order+k}`, stripping zeros on both
    /// ends.
    pub fn normalize<I>(order: i64, bits: I) -> Self
    where
        I: IntoIterator<Item = bool>,
    {
        let mut words = Vec::new();
        let mut nbits = 0usize;
        for b in bits {
            if nbits.is_multiple_of(64) {
                words.push(0);
            }
            if b {
                words[nbits / 64] |= 1 << (nbits % 64);
            }
            nbits += 1;
        }
        Self::from_limbs(order, &words, nbits)
    }

    /// Like [`normalize`](Self::normalize) with the bits given as a `'0'/'1'`
    /// string, lowest exponent first. Other characters are rejected.
    pub fn from_bit_str(order: i64, bits: &str) -> Option<Self> {
        if !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return None;
        }
        Some(Self::normalize(order, bits.bytes().map(|b| b == b'1')))
    }

    /// Sum of `z^e` over the given exponents; repeated exponents cancel in
    /// pairs.
    pub fn from_exponents<I>(exps: I) -> Self
    where
        I: IntoIterator<Item = i64>,
    {
        let mut exps: Vec<i64> = exps.into_iter().collect();
        if exps.is_empty() {
            return Self::zero();
        }
        exps.sort_unstable();
        let lo = exps[0];
        let hi = *exps.last().unwrap();
        let nbits = (hi - lo) as usize + 1;
        let mut words = vec![0u64; kernel::limbs_for(nbits)];
        for e in exps {
            kernel::flip_bit(&mut words, (e - lo) as usize);
        }
        Self::from_limbs(lo, &words, nbits)
    }

    /// Canonicalizes bits `0..nbits` of `words` placed at exponent `order`.
    pub(crate) fn from_limbs(order: i64, words: &[u64], nbits: usize) -> Self {
        let n = kernel::limbs_for(nbits).min(words.len());
        let mut words = words[..n].to_vec();
        kernel::mask_top(&mut words, nbits);
        let (Some(lo), Some(hi)) = (kernel::lowest_bit(&words), kernel::highest_bit(&words)) else {
            return Self::zero();
        };
        let len = hi - lo + 1;
        let words = if lo == 0 {
            words.truncate(kernel::limbs_for(len));
            words
        } else {
            kernel::extract(&words, lo, len)
        };
        LaurentPoly {
            order: order + lo as i64,
            len,
            words,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.len == 0
    }

    /// `ord(f)`, the exponent of the trailing monomial; `None` for zero.
    pub fn order(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.order)
    }

    /// `deg(f)`, the exponent of the leading monomial; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.order + self.len as i64 - 1)
    }

    /// Length of the coefficient string, `deg - ord + 1` (0 for zero).
    pub fn span(&self) -> usize {
        self.len
    }

    /// `max(|deg|, |ord|)`, 0 for zero.
    pub fn size(&self) -> u64 {
        match (self.order(), self.degree()) {
            (Some(o), Some(d)) => o.unsigned_abs().max(d.unsigned_abs()),
            _ => 0,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.len == 1
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Coefficient of `z^k`.
    pub fn coeff(&self, k: i64) -> bool {
        if self.is_zero() || k < self.order {
            return false;
        }
        let i = (k - self.order) as u64;
        i < self.len as u64 && kernel::get_bit(&self.words, i as usize)
    }

    /// Exponents of the nonzero coefficients, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.len)
            .filter(|&k| kernel::get_bit(&self.words, k))
            .map(|k| self.order + k as i64)
    }

    /// The coefficient string `a_ord … a_deg` as `'0'/'1'` characters.
    pub fn bit_string(&self) -> String {
        (0..self.len)
            .map(|k| {
                if kernel::get_bit(&self.words, k) {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    /// Multiplication by `z^k`.
    pub fn checked_shift(&self, k: i64) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let order = self.order.checked_add(k).ok_or(PolyError::Capacity)?;
        let degree = order
            .checked_add(self.len as i64 - 1)
            .ok_or(PolyError::Capacity)?;
        if order.abs() > MAX_EXPONENT || degree.abs() > MAX_EXPONENT {
            return Err(PolyError::Capacity);
        }
        Ok(LaurentPoly {
            order,
            len: self.len,
            words: self.words.clone(),
        })
    }

    /// Multiplication by `z^k`.
    ///
    /// # Panics
    ///
    /// Panics if an exponent leaves `±MAX_EXPONENT`; see
    /// [`checked_shift`](Self::checked_shift).
    pub fn shift(&self, k: i64) -> Self {
        self.checked_shift(k).expect("exponent overflow in shift")
    }

    /// `(f·z^{-ord f}, ord f)`: the plain polynomial with nonzero constant term
    /// and the unit factor that was removed.
    pub fn to_plain(&self) -> Result<(Self, i64), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut plain = self.clone();
        plain.order = 0;
        Ok((plain, self.order))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero());
        }
        let order = self
            .order
            .checked_add(rhs.order)
            .ok_or(PolyError::Capacity)?;
        let len = self.len + rhs.len - 1;
        let degree = order
            .checked_add(len as i64 - 1)
            .ok_or(PolyError::Capacity)?;
        if order.abs() > MAX_EXPONENT || degree.abs() > MAX_EXPONENT {
            return Err(PolyError::Capacity);
        }
        let words = if self.is_monomial() {
            rhs.words.clone()
        } else if rhs.is_monomial() {
            self.words.clone()
        } else {
            kernel::mul(&self.words, &rhs.words)
        };
        // both factors have a nonzero constant term, so the product has too
        Ok(Self::from_limbs(order, &words, len))
    }

    /// Division with remainder: `self = g·q + r` where `r = 0` or
    /// `ord(self) <= ord(r) <= deg(r) < ord(self) + deg(g) - ord(g)`.
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self), PolyError> {
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok((Self::zero(), Self::zero()));
        }
        let (q, r) = kernel::divmod(&self.words, self.len, &g.words, g.len);
        let q_order = self
            .order
            .checked_sub(g.order)
            .filter(|o| o.abs() <= MAX_EXPONENT)
            .ok_or(PolyError::Capacity)?;
        let qbits = q.len() * 64;
        let rbits = r.len() * 64;
        Ok((
            Self::from_limbs(q_order, &q, qbits),
            Self::from_limbs(self.order, &r, rbits),
        ))
    }

    /// Whether `self` divides `f`. Zero divides only zero.
    pub fn divides(&self, f: &Self) -> bool {
        if self.is_zero() {
            return f.is_zero();
        }
        if f.is_zero() || self.is_monomial() {
            return true;
        }
        if f.len < self.len {
            return false;
        }
        let (_, r) = kernel::divmod(&f.words, f.len, &self.words, self.len);
        r.iter().all(|&w| w == 0)
    }

    /// Exact quotient `f / self`, if `self` divides `f` (and is nonzero).
    pub fn exact_quotient_of(&self, f: &Self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (q, r) = f.divmod(self).ok()?;
        r.is_zero().then_some(q)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.order.min(rhs.order);
        let hi = self.degree().unwrap().max(rhs.degree().unwrap());
        let nbits = (hi - lo) as usize + 1;
        let mut words = vec![0u64; kernel::limbs_for(nbits) + 1];
        kernel::xor_shifted(&mut words, &self.words, (self.order - lo) as usize);
        kernel::xor_shifted(&mut words, &rhs.words, (rhs.order - lo) as usize);
        LaurentPoly::from_limbs(lo, &words, nbits)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    /// # Panics
    ///
    /// Panics on exponent overflow; see [`LaurentPoly::checked_mul`].
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("exponent overflow in mul")
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Dense toggle buffer over a fixed exponent window `[lo, hi]`, used to sum
/// many monomials or shifted polynomials without intermediate allocations.
pub(crate) struct ExponentBuffer {
    lo: i64,
    nbits: usize,
    words: Vec<u64>,
}

impl ExponentBuffer {
    pub(crate) fn new(lo: i64, hi: i64) -> Self {
        let nbits = if hi >= lo { (hi - lo) as usize + 1 } else { 0 };
        ExponentBuffer {
            lo,
            nbits,
            words: vec![0u64; kernel::limbs_for(nbits) + 1],
        }
    }

    #[inline]
    pub(crate) fn toggle(&mut self, e: i64) {
        debug_assert!(e >= self.lo && ((e - self.lo) as usize) < self.nbits);
        kernel::flip_bit(&mut self.words, (e - self.lo) as usize);
    }

    /// Adds `p·z^k`; the result must stay inside the window.
    pub(crate) fn add_shifted(&mut self, p: &LaurentPoly, k: i64) {
        if p.is_zero() {
            return;
        }
        let at = p.order + k - self.lo;
        debug_assert!(at >= 0 && (at as usize) + p.len <= self.nbits);
        kernel::xor_shifted(&mut self.words, &p.words, at as usize);
    }

    pub(crate) fn finish(self) -> LaurentPoly {
        LaurentPoly::from_limbs(self.lo, &self.words, self.nbits)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    ord: i64,
    bits: String,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            ord: self.order,
            bits: self.bit_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        LaurentPoly::from_bit_str(repr.ord, &repr.bits)
            .ok_or_else(|| serde::de::Error::custom("bits must be a 0/1 string"))
    }
}
