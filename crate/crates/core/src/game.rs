//! Game parameters, scaling normalization and the turn/head threshold
//! arithmetic behind the stopping-time formulas.
//!
//! A game is fixed by `(n, alpha, beta)`: each toss awards `alpha` points on
//! tails and `alpha + beta` on heads, and the first player to reach `n` wins.
//! Parameters are exact rationals; every threshold below depends only on the
//! ratios of the three values, so a game is normalized to jointly coprime
//! integers before any counting happens.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_poly::{ceil_div, Rational};

/// Parses `"a"`, `"a/b"` or a finite decimal such as `"2.5"`.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = || Error::Parse {
        input: input.to_string(),
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let digits = format!("{whole}{frac}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err())?
    };
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    let value = Rational::new(num, den);
    Ok(if negative { -value } else { value })
}

/// Points needed to win, points per tail, bonus points per head.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameParams {
    pub n: Rational,
    pub alpha: Rational,
    pub beta: Rational,
}

impl GameParams {
    pub fn new(n: Rational, alpha: Rational, beta: Rational) -> Self {
        GameParams { n, alpha, beta }
    }

    pub fn from_integers(n: i64, alpha: i64, beta: i64) -> Self {
        let r = |v: i64| Rational::from_integer(v.into());
        GameParams::new(r(n), r(alpha), r(beta))
    }

    /// Parses each value with [`parse_rational`].
    pub fn parse(n: &str, alpha: &str, beta: &str) -> Result<Self> {
        Ok(GameParams::new(
            parse_rational(n)?,
            parse_rational(alpha)?,
            parse_rational(beta)?,
        ))
    }

    /// Every parameter scaled by `c`.
    pub fn scaled(&self, c: &Rational) -> Self {
        GameParams::new(&self.n * c, &self.alpha * c, &self.beta * c)
    }
}

impl fmt::Display for GameParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(n={}, alpha={}, beta={})",
            self.n, self.alpha, self.beta
        )
    }
}

impl FromStr for GameParams {
    type Err = Error;

    /// `"n,alpha,beta"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        match parts.as_slice() {
            [n, a, b] => GameParams::parse(n, a, b),
            _ => Err(Error::Parse {
                input: s.to_string(),
            }),
        }
    }
}

/// Rejects any non-positive parameter, naming the first offender.
pub fn validate(params: &GameParams) -> Result<&GameParams> {
    for (field, value) in [
        ("n", &params.n),
        ("alpha", &params.alpha),
        ("beta", &params.beta),
    ] {
        if !value.is_positive() {
            return Err(Error::NonPositive { field });
        }
    }
    Ok(params)
}

/// Jointly coprime positive integers describing the same game.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalizedParams {
    n: BigInt,
    alpha: BigInt,
    beta: BigInt,
}

impl NormalizedParams {
    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn alpha(&self) -> &BigInt {
        &self.alpha
    }

    pub fn beta(&self) -> &BigInt {
        &self.beta
    }

    /// Normalizes an integer triple (shorthand for tests and grids).
    pub fn from_integers(n: i64, alpha: i64, beta: i64) -> Result<Self> {
        normalize(&GameParams::from_integers(n, alpha, beta))
    }

    pub fn to_params(&self) -> GameParams {
        GameParams::new(
            Rational::from_integer(self.n.clone()),
            Rational::from_integer(self.alpha.clone()),
            Rational::from_integer(self.beta.clone()),
        )
    }
}

impl fmt::Display for NormalizedParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.alpha, self.beta)
    }
}

/// Clears denominators with their lcm, then divides out the common gcd.
pub fn normalize(params: &GameParams) -> Result<NormalizedParams> {
    validate(params)?;
    let values = [&params.n, &params.alpha, &params.beta];
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<BigInt> = values
        .iter()
        .map(|v| (*v * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    Ok(NormalizedParams {
        n: &scaled[0] / &gcd,
        alpha: &scaled[1] / &gcd,
        beta: &scaled[2] / &gcd,
    })
}

/// Range of turn counts on which the first player can finish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TurnBounds {
    /// `⌈n / (alpha + beta)⌉`: all heads.
    pub l: u64,
    /// `⌈n / alpha⌉`: all tails.
    pub m: u64,
}

impl TurnBounds {
    /// The first player wins with certainty when both extremes coincide.
    pub fn is_degenerate(&self) -> bool {
        self.l == self.m
    }

    pub fn contains(&self, k: u64) -> bool {
        self.l <= k && k <= self.m
    }

    pub fn turns(&self) -> impl Iterator<Item = u64> {
        self.l..=self.m
    }
}

pub fn turn_bounds(params: &NormalizedParams) -> Result<TurnBounds> {
    let to_u64 = |v: BigInt| {
        v.to_u64()
            .ok_or_else(|| Error::TooLarge(format!("turn count {v} does not fit in 64 bits")))
    };
    let l = to_u64(ceil_div(&params.n, &(&params.alpha + &params.beta)))?;
    let m = to_u64(ceil_div(&params.n, &params.alpha))?;
    debug_assert!(1 <= l && l <= m);
    Ok(TurnBounds { l, m })
}

/// Head-count thresholds for finishing on turn `k`, unclamped.
///
/// `i_k = ⌈(n - k·alpha)/beta⌉ - 1` is the largest head count in the first
/// `k - 1` tosses that still needs a head on toss `k` to finish.
/// `i_k_star = ⌈(n - (k-1)·alpha)/beta⌉ - 1` is the largest head count in the
/// first `k - 1` tosses that has not yet finished. Either value may be
/// negative or exceed `k - 1`.
pub fn head_thresholds(k: u64, params: &NormalizedParams) -> Result<(i64, i64)> {
    let bounds = turn_bounds(params)?;
    if !bounds.contains(k) {
        return Err(Error::TurnOutOfRange {
            k,
            l: bounds.l,
            m: bounds.m,
        });
    }
    let threshold = |turns: u64| -> Result<i64> {
        let remaining = &params.n - BigInt::from(turns) * &params.alpha;
        let value: BigInt = ceil_div(&remaining, &params.beta) - 1;
        value.to_i64().ok_or_else(|| {
            Error::TooLarge(format!("head threshold {value} does not fit in 64 bits"))
        })
    };
    Ok((threshold(k)?, threshold(k - 1)?))
}
