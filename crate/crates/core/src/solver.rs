//! Deciding `w(a, t, x) = 1` over the lamplighter group.
//!
//! With `x = (δ, f)`, `w` evaluates to `(t_w + δ·x_w, num_δ + f·den_δ)`, so a
//! solution needs `t_w + δ·x_w = 0` and `den_δ | num_δ`. When `x_w ≠ 0` this
//! pins `δ`; otherwise `δ` is searched outward from 0 up to a per-instance
//! witness bound beyond which no first witness can appear.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::divauto::{period_bound, AutomatonError, DivAutomaton, DEFAULT_PERIOD_LIMIT};
use crate::gf2poly::{LaurentPoly, PolyError};
use crate::lamplighter::{pair_to_word, substitute, GroupElement};
use crate::parametric::{ParametricPoly, ZeroSet};
use crate::tracer::{instantiate_num_den, trace};
use crate::wordlang::Word;

/// Default cap on the scanned `|δ|`.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Largest accepted budget; keeps every instantiated exponent in range.
pub const MAX_BUDGET: u64 = 1 << 40;

/// Bounds needing more bits than this are not materialized.
const MAX_BOUND_BITS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

impl From<PolyError> for SolverError {
    fn from(e: PolyError) -> Self {
        SolverError::Capacity(e.to_string())
    }
}

impl From<AutomatonError> for SolverError {
    fn from(e: AutomatonError) -> Self {
        SolverError::Capacity(e.to_string())
    }
}

/// Why an equation has no solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoReason {
    /// `σ_x = 0` but `σ_t ≠ 0`.
    ShiftMismatch,
    /// `-t_w / x_w` is not an integer.
    DeltaNotIntegral,
    /// The forced `δ` gives `den_δ ∤ num_δ`.
    NotDivisible,
    /// `den` is trivial and `num_δ ≠ 0` for every `δ`.
    NumeratorNeverZero,
    /// No witness up to the witness bounds on either side.
    NoWitness,
}

impl NoReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            NoReason::ShiftMismatch => "shift_mismatch",
            NoReason::DeltaNotIntegral => "delta_not_integral",
            NoReason::NotDivisible => "not_divisible",
            NoReason::NumeratorNeverZero => "numerator_never_zero",
            NoReason::NoWitness => "no_witness",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "shift_mismatch" => NoReason::ShiftMismatch,
            "delta_not_integral" => NoReason::DeltaNotIntegral,
            "not_divisible" => NoReason::NotDivisible,
            "numerator_never_zero" => NoReason::NumeratorNeverZero,
            "no_witness" => NoReason::NoWitness,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Yes {
        delta: i64,
        f: LaurentPoly,
        /// A word over `{a, t}` for the solution `x = (delta, f)`.
        solution: Word,
    },
    No {
        reason: NoReason,
    },
    /// Neither a witness nor a proof of absence within the budget. Bounds too
    /// large to materialize are `None`.
    Unknown {
        theoretical_bound: Option<BigUint>,
        witness_bound: Option<BigUint>,
        budget: u64,
    },
}

impl SolveOutcome {
    pub fn verdict(&self) -> &'static str {
        match self {
            SolveOutcome::Yes { .. } => "Yes",
            SolveOutcome::No { .. } => "No",
            SolveOutcome::Unknown { .. } => "Unknown",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, SolveOutcome::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, SolveOutcome::No { .. })
    }

    /// The solution pair of a `Yes` outcome.
    pub fn element(&self) -> Option<GroupElement> {
        match self {
            SolveOutcome::Yes { delta, f, .. } => Some(GroupElement::new(*delta, f.clone())),
            _ => None,
        }
    }
}

fn fmt_bound(b: &Option<BigUint>) -> String {
    b.as_ref()
        .map_or_else(|| "too large to represent".to_string(), |b| b.to_string())
}

impl fmt::Display for SolveOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveOutcome::Yes {
                delta,
                f: lamps,
                solution,
            } => write!(
                f,
                "Yes\ndelta: {delta}\nf: {lamps}\nsolution: {}",
                if solution.is_empty() {
                    "1".to_string()
                } else {
                    solution.to_string()
                }
            ),
            SolveOutcome::No { reason } => write!(f, "No\nreason: {}", reason.as_str()),
            SolveOutcome::Unknown {
                theoretical_bound,
                witness_bound,
                budget,
            } => write!(
                f,
                "Unknown\ntheoretical bound: {}\nwitness bound: {}\nbudget: {budget}",
                fmt_bound(theoretical_bound),
                fmt_bound(witness_bound)
            ),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct OutcomeRepr {
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    delta: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    f: Option<LaurentPoly>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    solution: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    theoretical_bound: Option<Option<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    witness_bound: Option<Option<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    budget: Option<u64>,
}

impl Serialize for SolveOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut r = OutcomeRepr {
            verdict: self.verdict().to_string(),
            delta: None,
            f: None,
            solution: None,
            reason: None,
            theoretical_bound: None,
            witness_bound: None,
            budget: None,
        };
        match self {
            SolveOutcome::Yes { delta, f, solution } => {
                r.delta = Some(*delta);
                r.f = Some(f.clone());
                r.solution = Some(solution.to_string());
            }
            SolveOutcome::No { reason } => r.reason = Some(reason.as_str().to_string()),
            SolveOutcome::Unknown {
                theoretical_bound,
                witness_bound,
                budget,
            } => {
                r.theoretical_bound = Some(theoretical_bound.as_ref().map(|b| b.to_string()));
                r.witness_bound = Some(witness_bound.as_ref().map(|b| b.to_string()));
                r.budget = Some(*budget);
            }
        }
        r.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SolveOutcome {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = OutcomeRepr::deserialize(deserializer)?;
        let big = |s: Option<Option<String>>| -> Result<Option<BigUint>, D::Error> {
            s.flatten()
                .map(|s| s.parse::<BigUint>().map_err(D::Error::custom))
                .transpose()
        };
        match r.verdict.as_str() {
            "Yes" => Ok(SolveOutcome::Yes {
                delta: r.delta.ok_or_else(|| D::Error::missing_field("delta"))?,
                f: r.f.ok_or_else(|| D::Error::missing_field("f"))?,
                solution: r
                    .solution
                    .ok_or_else(|| D::Error::missing_field("solution"))?
                    .parse()
                    .map_err(D::Error::custom)?,
            }),
            "No" => Ok(SolveOutcome::No {
                reason: r
                    .reason
                    .as_deref()
                    .and_then(NoReason::parse)
                    .ok_or_else(|| D::Error::custom("missing or unknown reason"))?,
            }),
            "Unknown" => Ok(SolveOutcome::Unknown {
                theoretical_bound: big(r.theoretical_bound)?,
                witness_bound: big(r.witness_bound)?,
                budget: r.budget.ok_or_else(|| D::Error::missing_field("budget"))?,
            }),
            v => Err(D::Error::custom(format!("unknown verdict {v:?}"))),
        }
    }
}

/// Result of a one-sided or two-sided witness scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivScan {
    Witness(i64),
    /// The whole range up to the witness bound was scanned.
    Exhausted,
    /// The scan stopped at the budget before reaching the witness bound.
    BudgetExceeded,
}

/// Witness bounds for both scan directions of a `σ_x = 0` instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessBounds {
    /// Bound for `δ ≥ 0` (`None` if too large to materialize).
    pub positive: Option<BigUint>,
    /// Bound for `δ ≤ 0`, from the flipped instance.
    pub negative: Option<BigUint>,
    /// Whether a period was replaced by the `4^n` bound.
    pub fallback: bool,
}

impl WitnessBounds {
    /// The larger of the two bounds.
    pub fn max(&self) -> Option<BigUint> {
        match (&self.positive, &self.negative) {
            (Some(p), Some(n)) => Some(p.max(n).clone()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solver {
    /// Largest `|δ|` the scan visits.
    pub budget: u64,
    /// Worker threads for the scan; results do not depend on this.
    pub threads: usize,
    /// Largest degree for which periods are computed exactly.
    pub period_limit: u32,
}

impl Default for Solver {
    fn default() -> Self {
        Solver {
            budget: DEFAULT_BUDGET,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            period_limit: DEFAULT_PERIOD_LIMIT,
        }
    }
}

/// Candidates per parallel batch and thread.
const BATCH_PER_THREAD: u64 = 64;

/// Orders witnesses by `|δ|`, nonnegative first.
fn scan_key(d: i64) -> (u64, bool) {
    (d.unsigned_abs(), d < 0)
}

impl Solver {
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    /// Decides `w = 1`, producing a verified solution when one is found.
    pub fn decide(&self, w: &Word) -> Result<SolveOutcome, SolverError> {
        if self.budget > MAX_BUDGET {
            return Err(SolverError::Capacity(format!(
                "budget {} exceeds the maximum {MAX_BUDGET}",
                self.budget
            )));
        }
        let s = w.exponent_sums();
        if s.x != 0 {
            return self.solve_sigma_nonzero(w);
        }
        if s.t != 0 {
            return Ok(SolveOutcome::No {
                reason: NoReason::ShiftMismatch,
            });
        }
        let r = trace(w);
        if r.den.is_zero() {
            return Ok(match r.num.zero_instantiations() {
                ZeroSet::All => yes(w, 0, LaurentPoly::zero()),
                ZeroSet::Finite(z) => match z.into_iter().min_by_key(|&d| scan_key(d)) {
                    Some(d) => yes(w, d, LaurentPoly::zero()),
                    None => SolveOutcome::No {
                        reason: NoReason::NumeratorNeverZero,
                    },
                },
            });
        }
        let bounds = self.witness_bounds_of(&r.den, &r.num)?;
        let theoretical = materialize_theoretical(w.len());
        // no first witness lies beyond either bound
        let limit = |side: &Option<BigUint>| -> (u64, bool) {
            let cap = [side.as_ref(), theoretical.as_ref()]
                .into_iter()
                .flatten()
                .min()
                .and_then(|b| b.to_u64());
            match cap {
                Some(c) if c <= self.budget => (c, true),
                _ => (self.budget, false),
            }
        };
        let (lp, full_p) = limit(&bounds.positive);
        let (ln, full_n) = limit(&bounds.negative);
        match self.scan(&r.den, &r.num, lp, ln)? {
            Some(d) => {
                let den = r.den.checked_instantiate(d)?;
                let num = r.num.checked_instantiate(d)?;
                let f = if den.is_zero() {
                    LaurentPoly::zero()
                } else {
                    den.exact_quotient_of(&num).expect("scan witness divides")
                };
                Ok(yes(w, d, f))
            }
            None if full_p && full_n => Ok(SolveOutcome::No {
                reason: NoReason::NoWitness,
            }),
            None => Ok(SolveOutcome::Unknown {
                theoretical_bound: theoretical,
                witness_bound: bounds.max(),
                budget: self.budget,
            }),
        }
    }

    /// The case `σ_x(w) ≠ 0`: `δ = -t_w/x_w` and `f = num_δ/den_δ`.
    pub fn solve_sigma_nonzero(&self, w: &Word) -> Result<SolveOutcome, SolverError> {
        let s = w.exponent_sums();
        if s.x == 0 {
            return Err(SolverError::Precondition("sigma_x(w) must be nonzero"));
        }
        if s.t % s.x != 0 {
            return Ok(SolveOutcome::No {
                reason: NoReason::DeltaNotIntegral,
            });
        }
        let delta = -s.t / s.x;
        let (num, den) = instantiate_num_den(w, delta)?;
        if den.is_zero() {
            return Ok(if num.is_zero() {
                yes(w, delta, LaurentPoly::zero())
            } else {
                SolveOutcome::No {
                    reason: NoReason::NotDivisible,
                }
            });
        }
        Ok(match den.exact_quotient_of(&num) {
            Some(f) => yes(w, delta, f),
            None => SolveOutcome::No {
                reason: NoReason::NotDivisible,
            },
        })
    }

    /// Bounds for `DIV(fP, gP)` on both sides, replacing uncomputable periods
    /// by `4^n`.
    pub fn witness_bounds_of(
        &self,
        f: &ParametricPoly,
        g: &ParametricPoly,
    ) -> Result<WitnessBounds, SolverError> {
        let (positive, fb_p) = self.witness_bound_or_fallback(f, g)?;
        let (negative, fb_n) = self.witness_bound_or_fallback(&f.flip(), &g.flip())?;
        Ok(WitnessBounds {
            positive,
            negative,
            fallback: fb_p || fb_n,
        })
    }

    /// Bounds for the `σ_x = 0, σ_t = 0` case of `w`; `None` when the case
    /// does not apply or `den(w)` is trivial.
    pub fn witness_bounds(&self, w: &Word) -> Result<Option<WitnessBounds>, SolverError> {
        let s = w.exponent_sums();
        if s.x != 0 || s.t != 0 {
            return Ok(None);
        }
        let r = trace(w);
        if r.den.is_zero() {
            return Ok(None);
        }
        self.witness_bounds_of(&r.den, &r.num).map(Some)
    }

    /// [`witness_bound`] with this solver's period limit; `Ok(None)` when the
    /// bound is too large to materialize.
    fn witness_bound_or_fallback(
        &self,
        f: &ParametricPoly,
        g: &ParametricPoly,
    ) -> Result<(Option<BigUint>, bool), SolverError> {
        match witness_bound_with(f, g, self.period_limit) {
            Ok(b) => Ok((Some(b), false)),
            Err(BoundError::Period(n)) => {
                Ok((witness_bound_from_period(f, g, &period_bound(n)), true))
            }
            Err(BoundError::TooLarge) => Ok((None, false)),
            Err(BoundError::Trivial) => {
                Err(SolverError::Precondition("the divisor must be nontrivial"))
            }
        }
    }

    /// `DIV₊`: the least `δ ≥ 0` up to the witness bound (capped by the budget)
    /// with `f_δ | g_δ`.
    pub fn div_plus(&self, f: &ParametricPoly, g: &ParametricPoly) -> Result<DivScan, SolverError> {
        let (bound, _) = self.witness_bound_or_fallback(f, g)?;
        let (limit, full) = self.cap(&bound);
        Ok(match self.scan(f, g, limit, 0)? {
            Some(d) => DivScan::Witness(d),
            None if full => DivScan::Exhausted,
            None => DivScan::BudgetExceeded,
        })
    }

    /// `DIV`: the witness of least `|δ|` (nonnegative first), scanning both
    /// sides up to their witness bounds.
    pub fn div(&self, f: &ParametricPoly, g: &ParametricPoly) -> Result<DivScan, SolverError> {
        let b = self.witness_bounds_of(f, g)?;
        let (lp, full_p) = self.cap(&b.positive);
        let (ln, full_n) = self.cap(&b.negative);
        Ok(match self.scan(f, g, lp, ln)? {
            Some(d) => DivScan::Witness(d),
            None if full_p && full_n => DivScan::Exhausted,
            None => DivScan::BudgetExceeded,
        })
    }

    fn cap(&self, bound: &Option<BigUint>) -> (u64, bool) {
        match bound.as_ref().and_then(|b| b.to_u64()) {
            Some(b) if b <= self.budget => (b, true),
            _ => (self.budget, false),
        }
    }

    /// Tests `δ = 0, 1, -1, 2, -2, …` with `δ ∈ [-ln, lp]`, returning the first
    /// `δ` in that order with `f_δ | g_δ`.
    fn scan(
        &self,
        f: &ParametricPoly,
        g: &ParametricPoly,
        lp: u64,
        ln: u64,
    ) -> Result<Option<i64>, SolverError> {
        let test = |d: i64| -> Result<bool, PolyError> {
            let fd = f.checked_instantiate(d)?;
            let gd = g.checked_instantiate(d)?;
            Ok(fd.divides(&gd))
        };
        let candidates = |m: u64| {
            let pos = (m <= lp).then_some(m as i64);
            let neg = (m > 0 && m <= ln).then_some(-(m as i64));
            pos.into_iter().chain(neg)
        };
        let top = lp.max(ln);
        if self.threads <= 1 || top < 2 * BATCH_PER_THREAD {
            for m in 0..=top {
                for d in candidates(m) {
                    if test(d)? {
                        return Ok(Some(d));
                    }
                }
            }
            return Ok(None);
        }
        let threads = self.threads as u64;
        let batch = BATCH_PER_THREAD * threads;
        let mut start = 0u64;
        while start <= top {
            let end = (start + batch - 1).min(top);
            let found = std::thread::scope(|sc| {
                let handles: Vec<_> = (0..threads)
                    .map(|k| {
                        let test = &test;
                        let candidates = &candidates;
                        sc.spawn(move || -> Result<Option<i64>, PolyError> {
                            let mut m = start + k;
                            while m <= end {
                                for d in candidates(m) {
                                    if test(d)? {
                                        return Ok(Some(d));
                                    }
                                }
                                m += threads;
                            }
                            Ok(None)
                        })
                    })
                    .collect();
                let mut best: Option<i64> = None;
                for h in handles {
                    if let Some(d) = h.join().expect("scan worker panicked")? {
                        if best.is_none_or(|b| scan_key(d).cmp(&scan_key(b)) == Ordering::Less) {
                            best = Some(d);
                        }
                    }
                }
                Ok::<_, PolyError>(best)
            })?;
            if found.is_some() {
                return Ok(found);
            }
            start = end + 1;
        }
        Ok(None)
    }
}

/// Convenience wrapper around [`Solver::decide`] with default settings and
/// the given budget.
pub fn decide(w: &Word, budget: Option<u64>) -> Result<SolveOutcome, SolverError> {
    Solver::default()
        .with_budget(budget.unwrap_or(DEFAULT_BUDGET))
        .decide(w)
}

fn yes(w: &Word, delta: i64, f: LaurentPoly) -> SolveOutcome {
    let x = GroupElement::new(delta, f);
    assert!(verify(w, &x), "solver produced a non-solution for {w}");
    SolveOutcome::Yes {
        delta,
        solution: pair_to_word(&x),
        f: x.f,
    }
}

/// Whether `x = sol` solves `w = 1`.
pub fn verify(w: &Word, sol: &GroupElement) -> bool {
    substitute(w, sol).is_identity()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum BoundError {
    Trivial,
    /// The period of the leading block (of this degree) is not computable.
    Period(u32),
    TooLarge,
}

/// The leading block of `f` as a plain polynomial and its degree.
fn leading_plain(f: &ParametricPoly) -> Option<(LaurentPoly, u64)> {
    let t = f.deg_delta()?;
    let (plain, _) = f.get(t)?.to_plain().ok()?;
    let n = plain.degree()? as u64;
    Some((plain, n))
}

/// Period of the leading block of `f`, if its degree is within `limit`.
fn leading_period(f: &ParametricPoly, limit: u32) -> Result<u64, BoundError> {
    let (plain, n) = leading_plain(f).ok_or(BoundError::Trivial)?;
    let saturate = |n: u64| BoundError::Period(n.min(u32::MAX as u64) as u32);
    if n > limit as u64 {
        return Err(saturate(n));
    }
    DivAutomaton::new(&plain)
        .and_then(|a| a.with_period_limit(limit).period())
        .map_err(|_| saturate(n))
}

fn witness_bound_with(
    f: &ParametricPoly,
    g: &ParametricPoly,
    period_limit: u32,
) -> Result<BigUint, BoundError> {
    if f.is_zero() {
        return Err(BoundError::Trivial);
    }
    if g.is_zero() {
        return Ok(BigUint::zero());
    }
    if delta_span_gap(f, g) < 0 {
        return witness_bound_from_period(f, g, &BigUint::from(1u8)).ok_or(BoundError::TooLarge);
    }
    let p = leading_period(f, period_limit)?;
    witness_bound_from_period(f, g, &BigUint::from(p)).ok_or(BoundError::TooLarge)
}

/// `Δ = [deg_δ g − ord_δ g] − [deg_δ f − ord_δ f]`.
fn delta_span_gap(f: &ParametricPoly, g: &ParametricPoly) -> i64 {
    let fb = f.delta_bounds().unwrap();
    let gb = g.delta_bounds().unwrap();
    (gb.t - gb.s) - (fb.t - fb.s)
}

/// The witness bound for a given period `P` of the leading block; `None`
/// when `P^Δ` would exceed the representable size.
fn witness_bound_from_period(
    f: &ParametricPoly,
    g: &ParametricPoly,
    p: &BigUint,
) -> Option<BigUint> {
    if g.is_zero() {
        return Some(BigUint::zero());
    }
    let a = BigUint::from(f.delta_bounds().unwrap().a);
    let b = BigUint::from(g.delta_bounds().unwrap().a).max(a.clone());
    let gap = delta_span_gap(f, g);
    if gap < 0 {
        return Some(2u8 * (&b + &a));
    }
    let gap = gap as u64;
    if p.bits().saturating_mul(gap) > MAX_BOUND_BITS {
        return None;
    }
    let pd = num_traits::pow(p.clone(), gap as usize);
    Some(pd + 2u8 * (&b + 4u8 * &a * gap) + 4u8 * &a + 1u8)
}

/// The per-instance witness bound for `DIV₊(f, g)`:
///
/// * `2B + 2A` when `Δ < 0`,
/// * `P^Δ + 2(B + 4AΔ) + 4A + 1` when `Δ ≥ 0`,
///
/// where `A` is the largest absolute exponent in `f`, `B` the same for `g`
/// raised to at least `A`, and `P` the period of the leading block of `f`.
/// Trivial `g` gives 0.
pub fn witness_bound(f: &ParametricPoly, g: &ParametricPoly) -> Result<BigUint, SolverError> {
    witness_bound_with(f, g, DEFAULT_PERIOD_LIMIT).map_err(|e| match e {
        BoundError::Trivial => SolverError::Precondition("the divisor must be nontrivial"),
        BoundError::Period(n) => SolverError::Capacity(format!(
            "period of a degree-{n} leading block exceeds the configured limit"
        )),
        BoundError::TooLarge => SolverError::Capacity("witness bound too large".to_string()),
    })
}

/// `2^{⌊|w|²/2⌋} + 2|w|² + 3|w| + 1`, a bound on `|δ|` of some solution of
/// any solvable `w` with `σ_x(w) = 0`.
pub fn theoretical_delta_bound(w: &Word) -> BigUint {
    theoretical_bound_for_len(w.len() as u64)
}

pub fn theoretical_bound_for_len(n: u64) -> BigUint {
    let n = BigUint::from(n);
    let sq = &n * &n;
    let e = (&sq >> 1u8).to_u64().expect("word length out of range");
    (BigUint::from(1u8) << e) + 2u8 * sq + 3u8 * n + 1u8
}

fn materialize_theoretical(len: usize) -> Option<BigUint> {
    let len = len as u64;
    (len.saturating_mul(len) / 2 <= MAX_BOUND_BITS).then(|| theoretical_bound_for_len(len))
}
