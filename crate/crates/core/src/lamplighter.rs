//! The lamplighter group `L₂ = ℤ ⋉ ℤ₂[z^±]`.
//!
//! Elements are pairs `(δ, f)` multiplied by
//! `(δ₁,f₁)(δ₂,f₂) = (δ₁+δ₂, f₁·z^{-δ₂} + f₂)`, with generators
//! `a = (0, 1)` and `t = (1, 0)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2poly::{ExponentBuffer, LaurentPoly};
use crate::wordlang::{Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("word contains the variable x")]
    ContainsVariable,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GroupElement {
    pub delta: i64,
    pub f: LaurentPoly,
}

impl GroupElement {
    pub fn new(delta: i64, f: LaurentPoly) -> Self {
        GroupElement { delta, f }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn a() -> Self {
        GroupElement::new(0, LaurentPoly::one())
    }

    pub fn t() -> Self {
        GroupElement::new(1, LaurentPoly::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.delta == 0 && self.f.is_zero()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        GroupElement {
            delta: self.delta + rhs.delta,
            f: &self.f.shift(-rhs.delta) + &rhs.f,
        }
    }

    /// `(δ,f)^{-1} = (-δ, f·z^{δ})`.
    pub fn inv(&self) -> Self {
        GroupElement {
            delta: -self.delta,
            f: self.f.shift(self.delta),
        }
    }

    /// `[g, h] = g⁻¹h⁻¹gh`, by direct multiplication.
    pub fn commutator(&self, h: &Self) -> Self {
        self.inv().mul(&h.inv()).mul(self).mul(h)
    }

    /// Closed form of [`commutator`](Self::commutator):
    /// `[(δ,f),(δ₁,f₁)] = (0, f·(1+z^{-δ₁}) + f₁·(1+z^{-δ}))`.
    pub fn commutator_closed(&self, h: &Self) -> Self {
        let mut f = &self.f + &self.f.shift(-h.delta);
        f += &h.f;
        f += &h.f.shift(-self.delta);
        GroupElement::new(0, f)
    }

    /// `g⁻¹·self·g`, by direct multiplication.
    pub fn conjugate(&self, g: &Self) -> Self {
        g.inv().mul(self).mul(g)
    }

    /// Closed form of [`conjugate`](Self::conjugate): for `self = (δ₁,f₁)`
    /// and `g = (δ,f)`, `(δ₁, f·z^{-δ₁} + f + f₁·z^{-δ})`.
    pub fn conjugate_closed(&self, g: &Self) -> Self {
        let mut f = g.f.shift(-self.delta);
        f += &g.f;
        f += &self.f.shift(-g.delta);
        GroupElement::new(self.delta, f)
    }
}

/// Evaluates a word over `{a, t}`, reading right to left: prepending `a` to
/// a suffix `(δ, f)` adds `z^{-δ}` to `f`, prepending `t^{±1}` moves `δ`.
pub fn eval_word(w: &Word) -> Result<GroupElement, EvalError> {
    if w.contains_x() {
        return Err(EvalError::ContainsVariable);
    }
    let n = w.len() as i64;
    let mut buf = ExponentBuffer::new(-n, n);
    let mut delta = 0i64;
    for l in w.letters().iter().rev() {
        match l.generator {
            Generator::A => buf.toggle(-delta),
            Generator::T => delta += l.sign(),
            Generator::X => unreachable!(),
        }
    }
    Ok(GroupElement::new(delta, buf.finish()))
}

/// Evaluates `w` with `x ↦ x_val`, by folding [`GroupElement::mul`].
pub fn substitute(w: &Word, x_val: &GroupElement) -> GroupElement {
    let x_inv = x_val.inv();
    let a = GroupElement::a();
    let t = GroupElement::t();
    let t_inv = t.inv();
    w.letters().iter().fold(GroupElement::identity(), |acc, l| {
        let g = match (l.generator, l.inverse) {
            (Generator::A, _) => &a,
            (Generator::T, false) => &t,
            (Generator::T, true) => &t_inv,
            (Generator::X, false) => x_val,
            (Generator::X, true) => &x_inv,
        };
        acc.mul(g)
    })
}

/// A word over `{a, t}` evaluating to `g`: `Π_j t^{k_j} a t^{-k_j}` over the
/// exponents `k_j` of `g.f·z^{g.delta}`, then `t^{g.delta}`, with adjacent
/// `t`-powers merged.
pub fn pair_to_word(g: &GroupElement) -> Word {
    let mut w = Word::new();
    let mut pending = 0i64;
    for k in g.f.shift(g.delta).exponents() {
        w.push_power(Generator::T, pending + k);
        w.push(crate::wordlang::Letter::A);
        pending = -k;
    }
    w.push_power(Generator::T, pending + g.delta);
    w
}
