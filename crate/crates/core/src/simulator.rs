//! Seeded Monte Carlo play of the race game.
//!
//! Generator: ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`; worker `i` uses stream `i` of that key. A toss is a
//! head iff the next uniform draw in `[0, 1)` is `< p`. Results are
//! bit-identical for a fixed `(config, workers)`; changing the worker count
//! changes how trials map onto streams.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{normalize, GameParams};
use crate::minimizer::asymptotic_pstar;

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub params: GameParams,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl SimConfig {
    pub fn new(params: GameParams, p: f64, trials: u64, seed: u64) -> Self {
        SimConfig {
            params,
            p,
            trials,
            seed,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimResult {
    pub trials: u64,
    pub wins: u64,
    pub frequency: f64,
    pub stderr: f64,
    pub seed: u64,
    pub workers: usize,
    pub p: f64,
    /// Games per signed finishing turn: `+k` when the first player finished on
    /// their `k`-th toss, `-k` when the second player did.
    pub turn_counts: BTreeMap<i64, u64>,
}

impl SimResult {
    pub fn turn_histogram(&self) -> BTreeMap<i64, f64> {
        self.turn_counts
            .iter()
            .map(|(&k, &c)| (k, c as f64 / self.trials as f64))
            .collect()
    }
}

/// Plays one game; returns the signed turn on which it ended.
fn play<R: Rng>(rng: &mut R, n: u64, alpha: u64, beta: u64, p: f64) -> i64 {
    let (mut first, mut second) = (0u64, 0u64);
    let mut turns = 0i64;
    loop {
        turns += 1;
        first += alpha;
        if rng.random::<f64>() < p {
            first += beta;
        }
        if first >= n {
            return turns;
        }
        second += alpha;
        if rng.random::<f64>() < p {
            second += beta;
        }
        if second >= n {
            return -turns;
        }
    }
}

pub fn simulate(config: &SimConfig) -> Result<SimResult> {
    if !(0.0..=1.0).contains(&config.p) {
        return Err(Error::BiasOutOfRange(config.p.to_string()));
    }
    if config.trials == 0 {
        return Err(Error::NoTrials);
    }
    if config.workers == 0 {
        return Err(Error::NoWorkers);
    }
    let normalized = normalize(&config.params)?;
    let fits = |v: &num_bigint::BigInt| {
        v.to_u64()
            .filter(|x| x.checked_mul(2).is_some())
            .ok_or_else(|| Error::TooLarge(format!("{normalized} does not fit machine integers")))
    };
    let (n, alpha, beta) = (
        fits(normalized.n())?,
        fits(normalized.alpha())?,
        fits(normalized.beta())?,
    );
    // n + alpha + beta must not overflow.
    n.checked_add(alpha)
        .and_then(|x| x.checked_add(beta))
        .ok_or_else(|| Error::TooLarge(format!("{normalized} does not fit machine integers")))?;

    let workers = config.workers as u64;
    let per_worker = |i: u64| config.trials / workers + u64::from(i < config.trials % workers);
    let run = |i: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(i);
        let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
        for _ in 0..per_worker(i) {
            *counts
                .entry(play(&mut rng, n, alpha, beta, config.p))
                .or_default() += 1;
        }
        counts
    };
    let partials: Vec<BTreeMap<i64, u64>> = if workers == 1 {
        vec![run(0)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers).map(|i| scope.spawn(move || run(i))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("simulation worker panicked"))
                .collect()
        })
    };

    let mut turn_counts = BTreeMap::new();
    for partial in partials {
        for (k, c) in partial {
            *turn_counts.entry(k).or_default() += c;
        }
    }
    let wins: u64 = turn_counts.range(1..).map(|(_, c)| c).sum();
    let frequency = wins as f64 / config.trials as f64;
    Ok(SimResult {
        trials: config.trials,
        wins,
        frequency,
        stderr: (frequency * (1.0 - frequency) / config.trials as f64).sqrt(),
        seed: config.seed,
        workers: config.workers,
        p: config.p,
        turn_counts,
    })
}

/// Simulates at the large-game optimum `p*` for the game's `alpha / beta`.
pub fn simulate_at_pstar(
    params: &GameParams,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<SimResult> {
    let opt = asymptotic_pstar(&params.alpha, &params.beta)?;
    simulate(&SimConfig::new(params.clone(), opt.p_star, trials, seed).with_workers(workers))
}
