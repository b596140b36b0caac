//! The division-by-`f` automaton `Γ_f` over plain polynomials in `GF(2)[z]`.
//!
//! States are the residues modulo `f`, encoded as `n`-bit integers
//! (`n = deg f`, bit `k` is the coefficient of `z^k`). Reading bit `b` moves
//! `g` to `(g·z + b) mod f`. State 0 is initial and accepting, so a string
//! `g_m … g_0` is accepted iff `f` divides `g_m z^m + … + g_0`.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::OnceLock;

use num_bigint::BigUint;
use thiserror::Error;

use crate::gf2poly::LaurentPoly;

/// Largest supported degree of `f`.
pub const MAX_DEGREE: u32 = 63;

/// Default largest degree for which [`DivAutomaton::period`] is computed.
pub const DEFAULT_PERIOD_LIMIT: u32 = 16;

/// Largest degree for which structural checks enumerate the state graph.
pub const STRUCTURAL_LIMIT: u32 = 20;

/// Largest degree rendered by [`DivAutomaton::to_dot`].
pub const DOT_LIMIT: u32 = 10;

/// Up to this degree the period is found by breadth-first search over pairs.
const BFS_LIMIT: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("the divisor must be a nonzero polynomial with nonnegative exponents")]
    InvalidDivisor,
    #[error("degree {0} exceeds the supported maximum of {max}", max = MAX_DEGREE)]
    DegreeTooLarge(u32),
    #[error("state {state:#x} is not a residue of a degree-{n} divisor")]
    StateOutOfRange { state: u64, n: u32 },
    #[error("the divisor must have constant term 1")]
    ZeroConstantTerm,
    #[error("degree {n} exceeds the configured limit {limit}")]
    Capacity { n: u32, limit: u32 },
}

#[derive(Debug)]
pub struct DivAutomaton {
    f: u64,
    n: u32,
    period_limit: u32,
    period: OnceLock<u64>,
}

impl Clone for DivAutomaton {
    fn clone(&self) -> Self {
        let period = OnceLock::new();
        if let Some(&p) = self.period.get() {
            let _ = period.set(p);
        }
        DivAutomaton {
            f: self.f,
            n: self.n,
            period_limit: self.period_limit,
            period,
        }
    }
}

/// Outcome of [`DivAutomaton::structural_checks`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralReport {
    pub states: u64,
    pub strongly_connected: bool,
    /// Every state has exactly one incoming edge per label.
    pub unique_in: bool,
}

impl StructuralReport {
    pub fn passed(&self) -> bool {
        self.strongly_connected && self.unique_in
    }
}

impl DivAutomaton {
    /// `f` must be a nonzero polynomial (order ≥ 0) of degree at most 63.
    pub fn new(f: &LaurentPoly) -> Result<Self, AutomatonError> {
        let (Some(o), Some(d)) = (f.order(), f.degree()) else {
            return Err(AutomatonError::InvalidDivisor);
        };
        if o < 0 {
            return Err(AutomatonError::InvalidDivisor);
        }
        if d > MAX_DEGREE as i64 {
            return Err(AutomatonError::DegreeTooLarge(d as u32));
        }
        let bits = f.exponents().fold(0u64, |acc, e| acc | 1 << e);
        Ok(DivAutomaton {
            f: bits,
            n: d as u32,
            period_limit: DEFAULT_PERIOD_LIMIT,
            period: OnceLock::new(),
        })
    }

    /// The automaton of `f·z^{-ord f}`; unit factors change neither
    /// divisibility nor the period.
    pub fn for_divisor(f: &LaurentPoly) -> Result<Self, AutomatonError> {
        let (plain, _) = f.to_plain().map_err(|_| AutomatonError::InvalidDivisor)?;
        Self::new(&plain)
    }

    pub fn with_period_limit(mut self, limit: u32) -> Self {
        self.period_limit = limit;
        self
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn state_count(&self) -> u64 {
        1u64 << self.n
    }

    /// The divisor as a bit mask (bit `k` is the coefficient of `z^k`).
    pub fn divisor_bits(&self) -> u64 {
        self.f
    }

    #[inline]
    fn step_unchecked(&self, s: u64, b: bool) -> u64 {
        let mut r = (s << 1) | b as u64;
        if r >> self.n & 1 == 1 {
            r ^= self.f;
        }
        r
    }

    pub fn step(&self, state: u64, bit: bool) -> Result<u64, AutomatonError> {
        if state >> self.n != 0 {
            return Err(AutomatonError::StateOutOfRange { state, n: self.n });
        }
        Ok(self.step_unchecked(state, bit))
    }

    /// Reads `bits` (most significant first) from `start`.
    pub fn run(&self, start: u64, bits: &[bool]) -> Result<u64, AutomatonError> {
        let mut s = self.step(start, false).map(|_| start)?;
        for &b in bits {
            s = self.step_unchecked(s, b);
        }
        Ok(s)
    }

    /// Whether `f` divides `g_m z^m + … + g_0` for `bits = g_m … g_0`.
    pub fn accepts(&self, bits: &[bool]) -> bool {
        self.run(0, bits).unwrap() == 0
    }

    fn require_unit_constant(&self) -> Result<(), AutomatonError> {
        if self.f & 1 == 0 {
            Err(AutomatonError::ZeroConstantTerm)
        } else {
            Ok(())
        }
    }

    /// Strong connectivity (forward and backward search from state 0) and
    /// unique in-edges per label, over all `2^n` states.
    pub fn structural_checks(&self) -> Result<StructuralReport, AutomatonError> {
        self.require_unit_constant()?;
        if self.n > STRUCTURAL_LIMIT {
            return Err(AutomatonError::Capacity {
                n: self.n,
                limit: STRUCTURAL_LIMIT,
            });
        }
        let states = self.state_count();
        let size = states as usize;
        let mut in_count = vec![[0u8; 2]; size];
        let mut preds: Vec<Vec<u64>> = vec![Vec::new(); size];
        for s in 0..states {
            for b in [false, true] {
                let t = self.step_unchecked(s, b) as usize;
                in_count[t][b as usize] = in_count[t][b as usize].saturating_add(1);
                preds[t].push(s);
            }
        }
        let unique_in = in_count.iter().all(|c| c[0] == 1 && c[1] == 1);
        let reach = |forward: bool| {
            let mut seen = vec![false; size];
            let mut queue = VecDeque::from([0u64]);
            seen[0] = true;
            let mut count = 1u64;
            while let Some(s) = queue.pop_front() {
                let next: Vec<u64> = if forward {
                    vec![self.step_unchecked(s, false), self.step_unchecked(s, true)]
                } else {
                    preds[s as usize].clone()
                };
                for t in next {
                    if !seen[t as usize] {
                        seen[t as usize] = true;
                        count += 1;
                        queue.push_back(t);
                    }
                }
            }
            count
        };
        let strongly_connected = reach(true) == states && reach(false) == states;
        Ok(StructuralReport {
            states,
            strongly_connected,
            unique_in,
        })
    }

    /// `P_f`: the number of pairs `(z^m mod f, Σ_{k<m} b_k z^k mod f)`
    /// reachable from `(1, 0)` under `(p, g) ↦ (p·z, g·z + b)`.
    ///
    /// Up to degree 12 this is a breadth-first search; above, it uses the
    /// count the search produces when `f(0) = 1`, `ord(z mod f)·2^n`.
    pub fn period(&self) -> Result<u64, AutomatonError> {
        self.require_unit_constant()?;
        if self.n > self.period_limit {
            return Err(AutomatonError::Capacity {
                n: self.n,
                limit: self.period_limit,
            });
        }
        Ok(*self.period.get_or_init(|| {
            if self.n <= BFS_LIMIT {
                self.period_by_search()
            } else {
                self.period_closed_form()
            }
        }))
    }

    pub(crate) fn period_by_search(&self) -> u64 {
        if self.n == 0 {
            return 1;
        }
        let n = self.n;
        let index = |p: u64, g: u64| ((p << n) | g) as usize;
        let mut seen = vec![0u64; (1usize << (2 * n)).div_ceil(64)];
        let mark = |seen: &mut Vec<u64>, i: usize| {
            let fresh = seen[i / 64] >> (i % 64) & 1 == 0;
            seen[i / 64] |= 1 << (i % 64);
            fresh
        };
        let mut queue = VecDeque::from([(1u64, 0u64)]);
        mark(&mut seen, index(1, 0));
        let mut count = 1u64;
        while let Some((p, g)) = queue.pop_front() {
            let pz = self.step_unchecked(p, false);
            for b in [false, true] {
                let gz = self.step_unchecked(g, b);
                if mark(&mut seen, index(pz, gz)) {
                    count += 1;
                    queue.push_back((pz, gz));
                }
            }
        }
        count
    }

    pub(crate) fn period_closed_form(&self) -> u64 {
        if self.n == 0 {
            return 1;
        }
        let mut p = self.step_unchecked(1, false);
        let mut ord = 1u64;
        while p != 1 {
            p = self.step_unchecked(p, false);
            ord += 1;
        }
        ord << self.n
    }

    /// GraphViz digraph with one node per state, labeled by its polynomial,
    /// and edges labeled by the bit read.
    pub fn to_dot(&self) -> Result<String, AutomatonError> {
        if self.n > DOT_LIMIT {
            return Err(AutomatonError::Capacity {
                n: self.n,
                limit: DOT_LIMIT,
            });
        }
        let mut out = String::from("digraph division_automaton {\n  rankdir=LR;\n");
        for s in 0..self.state_count() {
            let peripheries = if s == 0 { ", peripheries=2" } else { "" };
            writeln!(out, "  s{s} [label=\"{}\"{peripheries}];", state_label(s)).unwrap();
        }
        for s in 0..self.state_count() {
            for b in [false, true] {
                let t = self.step_unchecked(s, b);
                writeln!(out, "  s{s} -> s{t} [label=\"{}\"];", b as u8).unwrap();
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// The state as a polynomial in text form.
pub fn state_label(s: u64) -> String {
    LaurentPoly::from_exponents((0..64).filter(|k| s >> k & 1 == 1)).to_string()
}

/// `4^n`, the upper bound on `P_f` for `deg f = n`.
pub fn period_bound(n: u32) -> BigUint {
    BigUint::from(1u8) << (2 * n as u64)
}
