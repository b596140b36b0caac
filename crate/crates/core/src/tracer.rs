//! Extraction of `(t_w, x_w, num(w), den(w))` from a word.
//!
//! The word is read right to left as a walk on the `(x, t)` grid. The current
//! point is `(-x_w, -t_w)`:
//!
//! * `x`: toggle the current point in `D`, then `x_w += 1`;
//! * `x⁻¹`: `x_w -= 1`, then toggle the new current point in `D`;
//! * `a^{±1}`: toggle the current point in `N`;
//! * `t^{±1}`: `t_w ± 1`.
//!
//! With `num = from_grid(N)` and `den = from_grid(D)`, substituting
//! `x = (δ, f)` into `w` yields `(t_w + δ·x_w, num_δ + f·den_δ)`.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::gf2poly::{ExponentBuffer, LaurentPoly, PolyError, MAX_EXPONENT};
use crate::parametric::{GridPointSet, ParametricPoly};
use crate::wordlang::{Generator, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceResult {
    pub t_w: i64,
    pub x_w: i64,
    pub num: ParametricPoly,
    pub den: ParametricPoly,
    pub n: GridPointSet,
    pub d: GridPointSet,
    /// Visited points, starting at the origin; only filled by
    /// [`trace_with_path`].
    pub path: Vec<(i64, i64)>,
}

fn trace_impl(w: &Word, record_path: bool) -> TraceResult {
    let (mut x_w, mut t_w) = (0i64, 0i64);
    let mut n = GridPointSet::new();
    let mut d = GridPointSet::new();
    let mut path = Vec::new();
    if record_path {
        path.reserve(w.len() + 1);
        path.push((0, 0));
    }
    for l in w.letters().iter().rev() {
        match (l.generator, l.inverse) {
            (Generator::X, false) => {
                d.toggle((-x_w, -t_w));
                x_w += 1;
            }
            (Generator::X, true) => {
                x_w -= 1;
                d.toggle((-x_w, -t_w));
            }
            (Generator::A, _) => n.toggle((-x_w, -t_w)),
            (Generator::T, _) => t_w += l.sign(),
        }
        if record_path {
            path.push((-x_w, -t_w));
        }
    }
    TraceResult {
        t_w,
        x_w,
        num: ParametricPoly::from_grid(&n),
        den: ParametricPoly::from_grid(&d),
        n,
        d,
        path,
    }
}

pub fn trace(w: &Word) -> TraceResult {
    trace_impl(w, false)
}

/// Like [`trace`], also recording the walk.
pub fn trace_with_path(w: &Word) -> TraceResult {
    trace_impl(w, true)
}

/// `(num_δ(w), den_δ(w))` in one pass, without building the grid sets.
///
/// The exponent of the current point, `-t_w - x_w·δ`, is maintained
/// incrementally and toggled into a dense buffer spanning
/// `±|w|·(|δ|+1)`.
pub fn instantiate_num_den(w: &Word, delta: i64) -> Result<(LaurentPoly, LaurentPoly), PolyError> {
    let len = w.len() as i128;
    let radius = len * (delta.unsigned_abs() as i128 + 1);
    if radius > MAX_EXPONENT as i128 {
        return Err(PolyError::Capacity);
    }
    if radius <= 1 << 26 {
        let r = radius as i64;
        let mut num = ExponentBuffer::new(-r, r);
        let mut den = ExponentBuffer::new(-r, r);
        walk(
            w,
            delta,
            |is_num, e| {
                if is_num {
                    num.toggle(e)
                } else {
                    den.toggle(e)
                }
            },
        );
        Ok((num.finish(), den.finish()))
    } else {
        let mut num = Vec::new();
        let mut den = Vec::new();
        walk(
            w,
            delta,
            |is_num, e| {
                if is_num {
                    num.push(e)
                } else {
                    den.push(e)
                }
            },
        );
        Ok((
            LaurentPoly::from_exponents(num),
            LaurentPoly::from_exponents(den),
        ))
    }
}

/// Runs the tracing rules on exponents at a fixed `δ`, reporting each
/// toggled exponent as `(is_num, exponent)`.
#[inline]
fn walk(w: &Word, delta: i64, mut emit: impl FnMut(bool, i64)) {
    let mut cur = 0i64;
    for l in w.letters().iter().rev() {
        match (l.generator, l.inverse) {
            (Generator::X, false) => {
                emit(false, cur);
                cur -= delta;
            }
            (Generator::X, true) => {
                cur += delta;
                emit(false, cur);
            }
            (Generator::A, _) => emit(true, cur),
            (Generator::T, false) => cur -= 1,
            (Generator::T, true) => cur += 1,
        }
    }
}

/// First column of the lower unitriangular matrix
/// `[[x^{cx} t^{ct}, 0, 0], [num, 1, 0], [den, 0, 1]]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MagnusMatrix {
    /// `(cx, ct)`: exponents of `x` and `t` in the corner monomial.
    pub corner: (i64, i64),
    pub num: ParametricPoly,
    pub den: ParametricPoly,
}

impl MagnusMatrix {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Image of a single letter under `x ↦ X, t ↦ T, a ↦ A`.
    pub fn generator(l: Letter) -> Self {
        let one = || ParametricPoly::block(0, LaurentPoly::one());
        match (l.generator, l.inverse) {
            (Generator::X, false) => MagnusMatrix {
                corner: (-1, 0),
                num: ParametricPoly::zero(),
                den: one(),
            },
            (Generator::X, true) => MagnusMatrix {
                corner: (1, 0),
                num: ParametricPoly::zero(),
                den: ParametricPoly::block(1, LaurentPoly::one()),
            },
            (Generator::T, inv) => MagnusMatrix {
                corner: (0, if inv { 1 } else { -1 }),
                ..Self::default()
            },
            (Generator::A, _) => MagnusMatrix {
                corner: (0, 0),
                num: one(),
                den: ParametricPoly::zero(),
            },
        }
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let (bx, bt) = rhs.corner;
        MagnusMatrix {
            corner: (self.corner.0 + bx, self.corner.1 + bt),
            num: &self.num.mul_monomial(bt, bx) + &rhs.num,
            den: &self.den.mul_monomial(bt, bx) + &rhs.den,
        }
    }
}

/// The product of the generator matrices of the letters of `w`.
pub fn magnus(w: &Word) -> MagnusMatrix {
    w.letters()
        .iter()
        .rev()
        .fold(MagnusMatrix::identity(), |acc, &l| {
            MagnusMatrix::generator(l).mul(&acc)
        })
}

impl TraceResult {
    /// Figure data: a `kind\tx\tt` header, then one row per path vertex
    /// (`path`), then the points of `N` and `D`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("kind\tx\tt\n");
        for &(x, t) in &self.path {
            writeln!(out, "path\t{x}\t{t}").unwrap();
        }
        for (x, t) in self.n.iter() {
            writeln!(out, "N\t{x}\t{t}").unwrap();
        }
        for (x, t) in self.d.iter() {
            writeln!(out, "D\t{x}\t{t}").unwrap();
        }
        out
    }
}

#[derive(Serialize)]
struct TraceRepr<'a> {
    x_w: i64,
    t_w: i64,
    num: &'a ParametricPoly,
    den: &'a ParametricPoly,
    #[serde(rename = "N")]
    n: Vec<(i64, i64)>,
    #[serde(rename = "D")]
    d: Vec<(i64, i64)>,
}

impl Serialize for TraceResult {
    /// `{"x_w", "t_w", "num", "den", "N": [[x, t], …], "D": […]}`.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TraceRepr {
            x_w: self.x_w,
            t_w: self.t_w,
            num: &self.num,
            den: &self.den,
            n: self.n.iter().collect(),
            d: self.d.iter().collect(),
        }
        .serialize(serializer)
    }
}
