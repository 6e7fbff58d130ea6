//! Brute-force ground truth by enumerating toss sequences.
//!
//! Only the game rules are used: each toss adds `alpha`, plus `beta` on heads,
//! and a sequence is classified at the first prefix whose total reaches `n`.
//! Nothing here shares code with the closed-form construction beyond the
//! polynomial type.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact_poly::{Poly, Rational};
use crate::game::NormalizedParams;

/// Largest number of tosses the oracle will enumerate (`2^20` leaves).
pub const MAX_ORACLE_TURNS: u64 = 20;

/// Finishing-turn distribution built by enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleDistribution {
    pub pmf: BTreeMap<u64, Poly>,
}

impl OracleDistribution {
    pub fn get(&self, k: u64) -> Option<&Poly> {
        self.pmf.get(&k)
    }

    pub fn total_mass(&self) -> Poly {
        self.pmf.values().cloned().sum()
    }
}

struct Rules<'a> {
    target: &'a BigInt,
    tail: &'a BigInt,
    head: BigInt,
}

/// `counts[k][h]`: sequences first reaching the target on toss `k` with `h` heads.
type Counts = BTreeMap<u64, BTreeMap<u64, u64>>;

fn walk(rules: &Rules, counts: &mut Counts, tosses: u64, heads: u64, points: &BigInt) {
    for (is_head, gain) in [(true, &rules.head), (false, rules.tail)] {
        let total = points + gain;
        let heads = heads + u64::from(is_head);
        if &total >= rules.target {
            *counts
                .entry(tosses + 1)
                .or_default()
                .entry(heads)
                .or_default() += 1;
        } else {
            walk(rules, counts, tosses + 1, heads, &total);
        }
    }
}

fn all_tails_turns(params: &NormalizedParams) -> Option<u64> {
    let mut points = BigInt::from(0);
    for turn in 1..=MAX_ORACLE_TURNS {
        points += params.alpha();
        if &points >= params.n() {
            return Some(turn);
        }
    }
    None
}

/// `P(τ = k)` for every reachable `k`, by full enumeration.
pub fn brute_force_tau_pmf(params: &NormalizedParams) -> Result<OracleDistribution> {
    if all_tails_turns(params).is_none() {
        return Err(Error::TooLarge(format!(
            "{params} needs more than {MAX_ORACLE_TURNS} tosses to enumerate"
        )));
    }
    let rules = Rules {
        target: params.n(),
        tail: params.alpha(),
        head: params.alpha() + params.beta(),
    };
    let mut counts = Counts::new();
    walk(&rules, &mut counts, 0, 0, &BigInt::from(0));

    let pmf = counts
        .into_iter()
        .map(|(k, by_heads)| {
            let poly = by_heads
                .into_iter()
                .map(|(h, count)| {
                    let weight = Poly::monomial(Rational::from_integer(count.into()), h as usize);
                    &weight * &Poly::q().pow((k - h) as u32)
                })
                .sum();
            (k, poly)
        })
        .collect();
    Ok(OracleDistribution { pmf })
}

/// `(1 + Σ_k P(τ = k)(p)²) / 2` from the enumerated distribution.
pub fn brute_force_advantage(params: &NormalizedParams, p: &Rational) -> Result<Rational> {
    if *p < Rational::from_integer(0.into()) || *p > Rational::from_integer(1.into()) {
        return Err(Error::BiasOutOfRange(p.to_string()));
    }
    let dist = brute_force_tau_pmf(params)?;
    let tie: Rational = dist
        .pmf
        .values()
        .map(|pmf| {
            let v = pmf.eval(p);
            &v * &v
        })
        .sum();
    Ok((tie + Rational::from_integer(1.into())) / Rational::from_integer(2.into()))
}
