//! Exact distribution of the first player's finishing turn.
//!
//! `P(τ = k)` splits by the number `i` of heads among the first `k - 1`
//! tosses. If `i ≤ i_k` the player still needs a head on toss `k`, which is
//! only possible for `i = i_k`; if `i_k < i ≤ i_k_star` either outcome of toss
//! `k` finishes the game. Terms are only built for head counts in `[0, k-1]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_poly::{binomial, ceil_div, Poly, Rational};
use crate::game::{head_thresholds, turn_bounds, NormalizedParams, TurnBounds};

/// `C(trials, heads) · p^(heads + extra_heads) · (1-p)^tails`.
fn bernstein_term(trials: u64, heads: u64, extra_heads: u64, tails: u64) -> Poly {
    let coeff = Rational::from_integer(binomial(trials, heads as i64));
    let p_part = Poly::monomial(coeff, (heads + extra_heads) as usize);
    &p_part * &Poly::q().pow(tails as u32)
}

/// `P(τ = k)` as an expanded polynomial in `p`.
pub fn tau_pmf(k: u64, params: &NormalizedParams) -> Result<Poly> {
    let (ik, ik_star) = head_thresholds(k, params)?;
    let last = k as i64 - 1;
    let mut pmf = Poly::zero();
    // Toss k must be a head.
    if (0..=last).contains(&ik) {
        let i = ik as u64;
        pmf = &pmf + &bernstein_term(k - 1, i, 1, k - 1 - i);
    }
    // Toss k finishes either way.
    let lo = (ik + 1).max(0);
    let hi = ik_star.min(last);
    for j in lo..=hi {
        let j = j as u64;
        pmf = &pmf + &bernstein_term(k - 1, j, 0, k - 1 - j);
    }
    Ok(pmf)
}

/// `P(τ ≤ k)`: at least `⌈(n - k·alpha)/beta⌉` heads in `k` tosses.
///
/// This comes straight from the binomial head count and never touches the
/// per-turn decomposition, so it localizes a bad pmf to its turn.
pub fn tau_cdf(k: u64, params: &NormalizedParams) -> Poly {
    let remaining = params.n() - BigInt::from(k) * params.alpha();
    let need = ceil_div(&remaining, params.beta());
    let start = if need < BigInt::zero() {
        0
    } else {
        u64::try_from(need).unwrap_or(u64::MAX)
    };
    (start..=k).map(|i| bernstein_term(k, i, 0, k - i)).sum()
}

/// `P(τ = k)` for every `k` in the winning range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauDistribution {
    pub bounds: TurnBounds,
    pub pmf: BTreeMap<u64, Poly>,
}

impl TauDistribution {
    pub fn get(&self, k: u64) -> Option<&Poly> {
        self.pmf.get(&k)
    }

    /// Sum of all pmf polynomials; the constant 1 for a valid distribution.
    pub fn total_mass(&self) -> Poly {
        self.pmf.values().cloned().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &Poly)> {
        self.pmf.iter().map(|(k, v)| (*k, v))
    }
}

/// Builds the full distribution and checks it sums to one.
///
/// Fails with [`Error::Invariant`] naming the first turn whose cumulative
/// mass disagrees with the binomial tail `P(τ ≤ k)`.
pub fn tau_distribution(params: &NormalizedParams) -> Result<TauDistribution> {
    let bounds = turn_bounds(params)?;
    let mut pmf = BTreeMap::new();
    for k in bounds.turns() {
        pmf.insert(k, tau_pmf(k, params)?);
    }
    let dist = TauDistribution { bounds, pmf };
    let total = dist.total_mass();
    if !total.is_one() {
        let mut cumulative = Poly::zero();
        for (k, mass) in dist.iter() {
            cumulative = &cumulative + mass;
            if cumulative != tau_cdf(k, params) {
                return Err(Error::Invariant(format!(
                    "P(tau = k) mass is wrong first at k = {k} for {params}: total is {total}"
                )));
            }
        }
        return Err(Error::Invariant(format!(
            "P(tau = k) sums to {total} for {params}"
        )));
    }
    Ok(dist)
}
