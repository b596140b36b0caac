//! Generic-case statistics: how often a uniformly random freely reduced word
//! has `σ_x = 0`.
//!
//! Along such a word the letter classes `x⁻¹`, `y` (any of `a^±, t^±`), `x`
//! form a Markov chain with matrix
//! `[[1/5, 4/5, 0], [1/5, 3/5, 1/5], [0, 4/5, 1/5]]` and stationary
//! distribution `(1/6, 2/3, 1/6)`.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::wordlang::{Generator, Letter, RandomLetters};

pub type Rational = Ratio<i64>;

/// Spheres with at most this many words are enumerated instead of sampled.
pub const EXACT_LIMIT: u64 = 1_000_000;

/// Trials per independently seeded shard.
const SHARD_SIZE: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpec {
    /// Row-stochastic transitions over the states `x⁻¹, y, x`.
    pub matrix: [[Rational; 3]; 3],
    pub initial: [Rational; 3],
}

impl Default for ChainSpec {
    fn default() -> Self {
        let q = |n, d| Rational::new(n, d);
        ChainSpec {
            matrix: [
                [q(1, 5), q(4, 5), q(0, 1)],
                [q(1, 5), q(3, 5), q(1, 5)],
                [q(0, 1), q(4, 5), q(1, 5)],
            ],
            initial: [q(1, 6), q(2, 3), q(1, 6)],
        }
    }
}

impl ChainSpec {
    pub fn row_sums(&self) -> [Rational; 3] {
        self.matrix.map(|row| row.iter().sum())
    }

    /// `πM`.
    pub fn apply(&self, pi: &[Rational; 3]) -> [Rational; 3] {
        std::array::from_fn(|j| (0..3).map(|i| pi[i] * self.matrix[i][j]).sum())
    }

    /// `max_j |(πM − π)_j|`.
    pub fn residual(&self, pi: &[Rational; 3]) -> Rational {
        let next = self.apply(pi);
        (0..3)
            .map(|j| (next[j] - pi[j]).abs())
            .fold(Rational::zero(), |a, b| a.max(b))
    }
}

/// Residual of the stationary distribution of the default chain; exactly 0.
pub fn stationary_check() -> Rational {
    let c = ChainSpec::default();
    c.residual(&c.initial)
}

/// `|S_m| = 6·5^{m-1}` (1 for `m = 0`), saturating.
pub fn sphere_size(m: u32) -> u64 {
    if m == 0 {
        return 1;
    }
    5u64.checked_pow(m - 1)
        .and_then(|p| p.checked_mul(6))
        .unwrap_or(u64::MAX)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigmaZeroEstimate {
    pub m: u32,
    /// Words (or samples) with `σ_x = 0`.
    pub hits: u64,
    /// Words enumerated or samples drawn.
    pub total: u64,
    /// `true` when the whole sphere was enumerated.
    pub exact: bool,
}

impl SigmaZeroEstimate {
    pub fn fraction(&self) -> f64 {
        self.hits as f64 / self.total as f64
    }

    /// `fraction·√m`, roughly constant for large `m`.
    pub fn scaled(&self) -> f64 {
        self.fraction() * (self.m as f64).sqrt()
    }
}

fn x_weight(l: Letter) -> i64 {
    if l.generator == Generator::X {
        l.sign()
    } else {
        0
    }
}

/// Fraction of `S_m` with `σ_x = 0`: exact by enumeration when
/// `|S_m| ≤ EXACT_LIMIT`, otherwise estimated from `trials` samples. Samples
/// are split into shards seeded from `seed`, so the result does not depend on
/// the thread count.
pub fn sigma_zero_fraction(m: u32, trials: u64, seed: u64) -> SigmaZeroEstimate {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    sigma_zero_fraction_with_threads(m, trials, seed, threads)
}

pub fn sigma_zero_fraction_with_threads(
    m: u32,
    trials: u64,
    seed: u64,
    threads: usize,
) -> SigmaZeroEstimate {
    if sphere_size(m) <= EXACT_LIMIT {
        return SigmaZeroEstimate {
            m,
            hits: enumerate_sigma_zero(m),
            total: sphere_size(m),
            exact: true,
        };
    }
    let shards = trials.div_ceil(SHARD_SIZE);
    let shard_hits = |k: u64| -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k);
        let n = SHARD_SIZE.min(trials - k * SHARD_SIZE);
        (0..n)
            .filter(|_| {
                RandomLetters::new(&mut rng)
                    .take(m as usize)
                    .map(x_weight)
                    .sum::<i64>()
                    == 0
            })
            .count() as u64
    };
    let threads = (threads.max(1) as u64).min(shards.max(1));
    let hits = std::thread::scope(|sc| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let shard_hits = &shard_hits;
                sc.spawn(move || {
                    (t..shards)
                        .step_by(threads as usize)
                        .map(shard_hits)
                        .sum::<u64>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling worker panicked"))
            .sum()
    });
    SigmaZeroEstimate {
        m,
        hits,
        total: trials,
        exact: false,
    }
}

/// Number of words in `S_m` with `σ_x = 0`, by depth-first enumeration.
fn enumerate_sigma_zero(m: u32) -> u64 {
    fn go(prev: Option<Letter>, left: u32, sigma: i64) -> u64 {
        if sigma.unsigned_abs() > left as u64 {
            return 0;
        }
        if left == 0 {
            return (sigma == 0) as u64;
        }
        Letter::ALL
            .iter()
            .filter(|&&l| prev != Some(l.inv()))
            .map(|&l| go(Some(l), left - 1, sigma + x_weight(l)))
            .sum()
    }
    go(None, m, 0)
}
