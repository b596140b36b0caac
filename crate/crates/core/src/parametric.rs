//! δ-parametric polynomials `Σᵢ fᵢ(z)·z^{iδ}` and their grid-point view.
//!
//! A monomial `z^{j+iδ}` is the grid point `(i, j)`, i.e. `x^i t^j` in the
//! group ring of `ℤ²`, so the same type serves both readings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::gf2poly::parse::Scanner;
use crate::gf2poly::{ExponentBuffer, LaurentPoly, ParsePolyError, PolyError, MAX_EXPONENT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParametricError {
    #[error("operation undefined for the trivial parametric polynomial")]
    Trivial,
}

/// A finite set of grid points `(x, t)`; toggling realizes addition mod 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GridPointSet {
    points: BTreeSet<(i64, i64)>,
}

impl GridPointSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the point if absent, removes it if present.
    pub fn toggle(&mut self, p: (i64, i64)) {
        if !self.points.remove(&p) {
            self.points.insert(p);
        }
    }

    pub fn contains(&self, p: (i64, i64)) -> bool {
        self.points.contains(&p)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in ascending `(x, t)` order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.points.iter().copied()
    }
}

impl FromIterator<(i64, i64)> for GridPointSet {
    /// Collects points with set semantics (duplicates collapse).
    fn from_iter<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        GridPointSet {
            points: iter.into_iter().collect(),
        }
    }
}

/// `(s, t, A)`: lowest and highest block index and the largest absolute
/// exponent occurring in any block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaBounds {
    pub s: i64,
    pub t: i64,
    pub a: u64,
}

/// The set of `δ` at which a parametric polynomial vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroSet {
    All,
    Finite(BTreeSet<i64>),
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParametricPoly {
    blocks: BTreeMap<i64, LaurentPoly>,
}

impl ParametricPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The parametric polynomial with a single block `f` at index `i`.
    pub fn block(i: i64, f: LaurentPoly) -> Self {
        let mut p = Self::zero();
        p.add_block(i, &f);
        p
    }

    /// Builds from `(i, fᵢ)` pairs; repeated indices are added, zero blocks
    /// dropped.
    pub fn from_blocks<I: IntoIterator<Item = (i64, LaurentPoly)>>(blocks: I) -> Self {
        let mut p = Self::zero();
        for (i, f) in blocks {
            p.add_block(i, &f);
        }
        p
    }

    fn add_block(&mut self, i: i64, f: &LaurentPoly) {
        if f.is_zero() {
            return;
        }
        let sum = match self.blocks.get(&i) {
            Some(g) => g + f,
            None => f.clone(),
        };
        if sum.is_zero() {
            self.blocks.remove(&i);
        } else {
            self.blocks.insert(i, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn get(&self, i: i64) -> Option<&LaurentPoly> {
        self.blocks.get(&i)
    }

    /// Nonzero blocks by ascending index.
    pub fn blocks(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> + '_ {
        self.blocks.iter().map(|(&i, f)| (i, f))
    }

    /// `ord_δ`, the lowest block index.
    pub fn ord_delta(&self) -> Option<i64> {
        self.blocks.keys().next().copied()
    }

    /// `deg_δ`, the highest block index.
    pub fn deg_delta(&self) -> Option<i64> {
        self.blocks.keys().next_back().copied()
    }

    /// Number of monomials.
    pub fn weight(&self) -> usize {
        self.blocks.values().map(LaurentPoly::weight).sum()
    }

    /// Point `(i, j)` contributes `z^j` to block `i`.
    pub fn from_grid(s: &GridPointSet) -> Self {
        let mut by_block: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for (i, j) in s.iter() {
            by_block.entry(i).or_default().push(j);
        }
        ParametricPoly {
            blocks: by_block
                .into_iter()
                .map(|(i, js)| (i, LaurentPoly::from_exponents(js)))
                .filter(|(_, f)| !f.is_zero())
                .collect(),
        }
    }

    pub fn to_grid(&self) -> GridPointSet {
        self.blocks()
            .flat_map(|(i, f)| f.exponents().map(move |j| (i, j)))
            .collect()
    }

    /// `Σᵢ fᵢ·z^{iδ}` for a concrete `δ`.
    pub fn checked_instantiate(&self, delta: i64) -> Result<LaurentPoly, PolyError> {
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for (i, f) in self.blocks() {
            let k = i.checked_mul(delta).ok_or(PolyError::Capacity)?;
            let o = f
                .order()
                .unwrap()
                .checked_add(k)
                .ok_or(PolyError::Capacity)?;
            let d = f
                .degree()
                .unwrap()
                .checked_add(k)
                .ok_or(PolyError::Capacity)?;
            lo = lo.min(o);
            hi = hi.max(d);
        }
        if lo < -MAX_EXPONENT || hi > MAX_EXPONENT {
            return Err(PolyError::Capacity);
        }
        if self.blocks.len() == 1 {
            let (i, f) = self.blocks().next().unwrap();
            return f.checked_shift(i * delta);
        }
        if (hi - lo) as u64 > DENSE_WINDOW_LIMIT {
            let mut acc = LaurentPoly::zero();
            for (i, f) in self.blocks() {
                acc += &f.checked_shift(i * delta)?;
            }
            return Ok(acc);
        }
        let mut buf = ExponentBuffer::new(lo, hi);
        for (i, f) in self.blocks() {
            buf.add_shifted(f, i * delta);
        }
        Ok(buf.finish())
    }

    /// # Panics
    ///
    /// Panics if an exponent leaves the supported range; see
    /// [`checked_instantiate`](Self::checked_instantiate).
    pub fn instantiate(&self, delta: i64) -> LaurentPoly {
        self.checked_instantiate(delta)
            .expect("exponent overflow in instantiate")
    }

    /// Block index `i ↦ -i`.
    pub fn flip(&self) -> Self {
        ParametricPoly {
            blocks: self.blocks.iter().map(|(&i, f)| (-i, f.clone())).collect(),
        }
    }

    /// Multiplication by the monomial `t^a x^b = z^{a+bδ}`.
    pub fn mul_monomial(&self, a: i64, b: i64) -> Self {
        ParametricPoly {
            blocks: self
                .blocks
                .iter()
                .map(|(&i, f)| (i + b, f.shift(a)))
                .collect(),
        }
    }

    pub fn delta_bounds(&self) -> Result<DeltaBounds, ParametricError> {
        let (s, t) = match (self.ord_delta(), self.deg_delta()) {
            (Some(s), Some(t)) => (s, t),
            _ => return Err(ParametricError::Trivial),
        };
        let a = self.blocks.values().map(LaurentPoly::size).max().unwrap();
        Ok(DeltaBounds { s, t, a })
    }

    /// The exact set of `δ` with `instantiate(δ) = 0`.
    ///
    /// At a zero every monomial cancels against a monomial of another block
    /// (monomials within one block never collide), so fixing one monomial
    /// `z^{j₀+i₀δ}` pins `δ` to `(j₀-j)/(i-i₀)` for some `(i, j)` with
    /// `i ≠ i₀`. Each candidate is then checked by instantiation.
    pub fn zero_instantiations(&self) -> ZeroSet {
        let Some((i0, f0)) = self.blocks().next() else {
            return ZeroSet::All;
        };
        let j0 = f0.order().unwrap();
        let mut zeros = BTreeSet::new();
        for (i, f) in self.blocks().skip(1) {
            for j in f.exponents() {
                let (num, den) = (j0 - j, i - i0);
                if num % den == 0 {
                    let d = num / den;
                    if !zeros.contains(&d) && self.checked_instantiate(d).is_ok_and(|p| p.is_zero())
                    {
                        zeros.insert(d);
                    }
                }
            }
        }
        ZeroSet::Finite(zeros)
    }
}

/// Above this many bits, instantiation sums shifted blocks instead of
/// filling a dense window.
const DENSE_WINDOW_LIMIT: u64 = 1 << 26;

impl std::ops::Add for &ParametricPoly {
    type Output = ParametricPoly;

    fn add(self, rhs: &ParametricPoly) -> ParametricPoly {
        let mut out = self.clone();
        for (i, f) in rhs.blocks() {
            out.add_block(i, f);
        }
        out
    }
}

impl std::ops::Add for ParametricPoly {
    type Output = ParametricPoly;

    fn add(self, rhs: ParametricPoly) -> ParametricPoly {
        &self + &rhs
    }
}

impl fmt::Debug for ParametricPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParametricPoly({self})")
    }
}

impl fmt::Display for ParametricPoly {
    /// Terms `z^(j+id)` by ascending `(i, j)`; constant-block terms use the
    /// plain polynomial form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, j) in self.to_grid().iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let dpart = match i {
                1 => "d".to_string(),
                -1 => "-d".to_string(),
                _ => format!("{i}d"),
            };
            match (i, j) {
                (0, _) => crate::gf2poly::parse::write_monomial(f, j)?,
                (1, 0) => write!(f, "z^d")?,
                (_, 0) => write!(f, "z^({dpart})")?,
                _ if i < 0 => write!(f, "z^({j}{dpart})")?,
                _ => write!(f, "z^({j}+{dpart})")?,
            }
        }
        Ok(())
    }
}

/// One signed term of a linear exponent: `k`, `kd` or `d`, returned as
/// `(constant, d-coefficient)`.
fn linear_term(sc: &mut Scanner<'_>, sign: i64) -> Result<(i64, i64), ParsePolyError> {
    let at = sc.pos;
    let mut coef = None;
    sc.skip_ws();
    if matches!(sc.peek_raw(), Some(c) if c.is_ascii_digit()) {
        coef = Some(sc.int()?);
    }
    if sc.peek_raw() == Some(b'd') {
        sc.pos += 1;
        Ok((0, sign * coef.unwrap_or(1)))
    } else {
        coef.map(|c| (sign * c, 0)).ok_or_else(|| ParsePolyError {
            position: at,
            message: "expected an integer or d".to_string(),
        })
    }
}

fn linear_exponent(sc: &mut Scanner<'_>) -> Result<(i64, i64), ParsePolyError> {
    if !sc.eat(b'(') {
        let sign = if sc.eat(b'-') { -1 } else { 1 };
        return linear_term(sc, sign);
    }
    let (mut j, mut i) = (0i64, 0i64);
    let mut first = true;
    loop {
        let sign = if sc.eat(b'-') {
            -1
        } else if sc.eat(b'+') || first {
            1
        } else {
            return Err(ParsePolyError {
                position: sc.pos,
                message: "expected '+', '-' or ')'".to_string(),
            });
        };
        first = false;
        let (dj, di) = linear_term(sc, sign)?;
        j = j
            .checked_add(dj)
            .filter(|v| v.abs() <= MAX_EXPONENT)
            .ok_or(range_err(sc.pos))?;
        i = i
            .checked_add(di)
            .filter(|v| v.abs() <= MAX_EXPONENT)
            .ok_or(range_err(sc.pos))?;
        if sc.eat(b')') {
            return Ok((j, i));
        }
    }
}

fn range_err(position: usize) -> ParsePolyError {
    ParsePolyError {
        position,
        message: "integer out of range".to_string(),
    }
}

impl FromStr for ParametricPoly {
    type Err = ParsePolyError;

    /// Terms `0 | 1 | z | z^k | z^d | z^(a+bd)` joined by `+`, e.g.
    /// `z^(1+2d) + z^d + 1`. Duplicate terms cancel.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut sc = Scanner::new(s);
        let mut points = GridPointSet::new();
        loop {
            let at = {
                sc.skip_ws();
                sc.pos
            };
            match sc.peek() {
                Some(b'0') => sc.pos += 1,
                Some(b'1') => {
                    sc.pos += 1;
                    points.toggle((0, 0));
                }
                Some(b'z') => {
                    sc.pos += 1;
                    let (j, i) = if sc.eat(b'^') {
                        linear_exponent(&mut sc)?
                    } else {
                        (1, 0)
                    };
                    points.toggle((i, j));
                }
                _ => {
                    return Err(ParsePolyError {
                        position: at,
                        message: "expected a term 1, z or z^k".to_string(),
                    })
                }
            }
            if sc.at_end() {
                break;
            }
            if !sc.eat(b'+') {
                return Err(ParsePolyError {
                    position: sc.pos,
                    message: "expected '+'".to_string(),
                });
            }
        }
        Ok(ParametricPoly::from_grid(&points))
    }
}

#[derive(Serialize, Deserialize)]
struct BlockRepr {
    i: i64,
    f: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct ParametricRepr {
    blocks: Vec<BlockRepr>,
}

impl Serialize for ParametricPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ParametricRepr {
            blocks: self
                .blocks()
                .map(|(i, f)| BlockRepr { i, f: f.clone() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParametricPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = ParametricRepr::deserialize(deserializer)?;
        Ok(ParametricPoly::from_blocks(
            r.blocks.into_iter().map(|b| (b.i, b.f)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn pp(s: &str) -> ParametricPoly {
        s.parse().unwrap()
    }

    fn grid(points: &[(i64, i64)]) -> GridPointSet {
        points.iter().copied().collect()
    }

    #[test]
    fn from_grid_examples() {
        let n = ParametricPoly::from_grid(&grid(&[(0, 0), (1, 1)]));
        assert_eq!(n, ParametricPoly::from_blocks([(0, p("1")), (1, p("z"))]));
        let d = ParametricPoly::from_grid(&grid(&[(1, 0), (2, 0), (2, 1)]));
        assert_eq!(
            d,
            ParametricPoly::from_blocks([(1, p("1")), (2, p("1 + z"))])
        );
        assert!(ParametricPoly::from_grid(&GridPointSet::new()).is_zero());
    }

    #[test]
    fn instantiate_examples() {
        let n = ParametricPoly::from_blocks([(0, p("1")), (1, p("z"))]);
        assert_eq!(n.instantiate(1), p("1 + z^2"));
        let d = ParametricPoly::from_blocks([(1, p("1")), (2, p("1 + z"))]);
        assert_eq!(d.instantiate(1), p("z + z^2 + z^3"));
        let c = ParametricPoly::from_blocks([(0, p("1")), (1, p("1"))]);
        assert!(c.instantiate(0).is_zero());
    }

    #[test]
    fn flip_examples() {
        let c = ParametricPoly::from_blocks([(0, p("1")), (1, p("1"))]);
        assert_eq!(
            c.flip(),
            ParametricPoly::from_blocks([(0, p("1")), (-1, p("1"))])
        );
        assert_eq!(c.flip().flip(), c);
        let b = ParametricPoly::block(1, p("1 + z"));
        assert_eq!(b.flip().instantiate(2), p("z^-2 + z^-1"));
        assert_eq!(b.instantiate(-2), p("z^-2 + z^-1"));
    }

    #[test]
    fn delta_bounds_examples() {
        let f = ParametricPoly::from_blocks([
            (-1, p("1 + z^-2")),
            (0, p("z^2 + z + z^-1")),
            (2, p("1 + z")),
        ]);
        assert_eq!(f.delta_bounds().unwrap(), DeltaBounds { s: -1, t: 2, a: 2 });
        assert_eq!(
            ParametricPoly::block(0, p("1")).delta_bounds().unwrap(),
            DeltaBounds { s: 0, t: 0, a: 0 }
        );
        let d = ParametricPoly::from_blocks([(1, p("1")), (2, p("1 + z"))]);
        assert_eq!(d.delta_bounds().unwrap(), DeltaBounds { s: 1, t: 2, a: 1 });
        assert_eq!(
            ParametricPoly::zero().delta_bounds(),
            Err(ParametricError::Trivial)
        );
    }

    #[test]
    fn zero_instantiation_examples() {
        let c = ParametricPoly::from_blocks([(0, p("1")), (1, p("1"))]);
        assert_eq!(c.zero_instantiations(), ZeroSet::Finite([0].into()));
        let b = ParametricPoly::block(1, p("1 + z"));
        assert_eq!(b.zero_instantiations(), ZeroSet::Finite(BTreeSet::new()));
        assert_eq!(ParametricPoly::zero().zero_instantiations(), ZeroSet::All);
        // z^{2δ} + z^{1+δ} + z^δ + z^{1}: zero at δ = 1 only
        let q = pp("z^(2d) + z^(1+d) + z^d + z");
        assert_eq!(q.zero_instantiations(), ZeroSet::Finite([0, 1].into()));
    }

    #[test]
    fn text_form() {
        let q = pp("z^(1+2d) + z^d + 1");
        assert_eq!(q.to_string(), "1 + z^d + z^(1+2d)");
        assert_eq!(pp(&q.to_string()), q);
        assert_eq!(
            pp("z^(-d) + z^(3-2d) + z^-4").to_string(),
            "z^(3-2d) + z^(-d) + z^-4"
        );
        assert_eq!(pp("z^(2 + d - 3)"), pp("z^(-1+d)"));
        assert!(pp("z^d + z^d").is_zero());
        assert_eq!("z^(1 d)".parse::<ParametricPoly>().unwrap_err().position, 5);
        assert!("z^(".parse::<ParametricPoly>().is_err());
        assert!("y".parse::<ParametricPoly>().is_err());
    }

    #[test]
    fn json_form() {
        let q = ParametricPoly::from_blocks([(-1, p("z")), (2, p("1 + z"))]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(
            s,
            r#"{"blocks":[{"i":-1,"f":{"ord":1,"bits":"1"}},{"i":2,"f":{"ord":0,"bits":"11"}}]}"#
        );
        assert_eq!(serde_json::from_str::<ParametricPoly>(&s).unwrap(), q);
    }

    fn arb_grid(max: usize, r: i64) -> impl Strategy<Value = GridPointSet> {
        proptest::collection::vec((-r..=r, -r..=r), 0..max).prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #[test]
        fn grid_round_trip(s in arb_grid(64, 32)) {
            prop_assert_eq!(ParametricPoly::from_grid(&s).to_grid(), s);
        }

        #[test]
        fn instantiate_is_monomial_sum(s in arb_grid(40, 32), d in -16i64..=16) {
            let mut expected = Vec::new();
            for (i, j) in s.iter() {
                expected.push(j + i * d);
            }
            prop_assert_eq!(
                ParametricPoly::from_grid(&s).instantiate(d),
                LaurentPoly::from_exponents(expected)
            );
        }

        #[test]
        fn flip_law(s in arb_grid(40, 32), d in -16i64..=16) {
            let q = ParametricPoly::from_grid(&s);
            prop_assert_eq!(q.flip().instantiate(d), q.instantiate(-d));
        }

        #[test]
        fn zero_set_matches_brute_force(s in arb_grid(12, 6)) {
            let q = ParametricPoly::from_grid(&s);
            let brute: BTreeSet<i64> = (-64..=64).filter(|&d| q.instantiate(d).is_zero()).collect();
            match q.zero_instantiations() {
                ZeroSet::All => prop_assert!(q.is_zero()),
                ZeroSet::Finite(z) => prop_assert_eq!(z, brute),
            }
        }

        #[test]
        fn add_and_monomial_shift(s in arb_grid(20, 8), u in arb_grid(20, 8), a in -5i64..5, b in -5i64..5, d in -6i64..6) {
            let (q, r) = (ParametricPoly::from_grid(&s), ParametricPoly::from_grid(&u));
            prop_assert_eq!((&q + &r).instantiate(d), &q.instantiate(d) + &r.instantiate(d));
            prop_assert_eq!(q.mul_monomial(a, b).instantiate(d), q.instantiate(d).shift(a + b * d));
            prop_assert!((&q + &q).is_zero());
        }

        #[test]
        fn text_round_trip(s in arb_grid(20, 8)) {
            let q = ParametricPoly::from_grid(&s);
            prop_assert_eq!(pp(&q.to_string()), q);
        }
    }
}
