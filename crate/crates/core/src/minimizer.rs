//! Minimizing the first player's advantage over the coin bias.
//!
//! [`minimize_advantage`] finds the global minimizer of the exact advantage
//! polynomial on `[0, 1]`: every real root of its derivative in `(0, 1)` is
//! bracketed exactly (see [`crate::roots`]), the advantage is compared exactly
//! at each bracket and at both endpoints, and the smallest `p` wins ties. No
//! unimodality is assumed; for several games the advantage has more than one
//! local minimum.
//!
//! For long games the minimizer approaches `p* = 1 + t - sqrt(1 + t + t²)`
//! with `t = alpha / beta`, the minimizer of
//! `sigma²(p) = (alpha + beta·p)³ / (beta²·p·(1 - p))`.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::advantage::{advantage_normalized, AdvantageResult};
use crate::error::{Error, Result};
use crate::exact_poly::{Poly, Rational};
use crate::game::{normalize, GameParams};
use crate::roots::{isolate_unit_roots, RootBracket};

/// Default bracket width for `p_n*`.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A stationary point of the advantage, with the advantage at the bracket
/// midpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub bracket: RootBracket,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimizationResult {
    /// `I ≡ 1`; no minimizer is reported.
    pub degenerate: bool,
    /// Bracket containing `p_n*` (a single point when located exactly).
    pub bracket: Option<RootBracket>,
    /// Midpoint of `bracket`, rounded.
    pub p_star_n: Option<f64>,
    /// The advantage at the bracket midpoint, exactly.
    pub value_exact: Rational,
    pub value: f64,
    pub tol: f64,
    /// Another candidate attained exactly the same minimum value.
    pub tie: bool,
    pub critical_points: Vec<CriticalPoint>,
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn tolerance(tol: f64) -> Result<Rational> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    Rational::from_float(tol).ok_or(Error::InvalidTolerance(tol))
}

/// Global minimizer of `poly` over `[0, 1]`.
pub fn minimize_on_unit_interval(poly: &Poly, tol: f64) -> Result<MinimizationResult> {
    let tol_exact = tolerance(tol)?;
    let derivative = poly.derivative();
    let critical_points: Vec<CriticalPoint> = if derivative.is_zero() {
        Vec::new()
    } else {
        isolate_unit_roots(&derivative, &tol_exact)
            .into_iter()
            .map(|bracket| CriticalPoint {
                value: poly.eval(&bracket.midpoint()),
                bracket,
            })
            .collect()
    };

    let endpoint = |x: Rational| CriticalPoint {
        value: poly.eval(&x),
        bracket: RootBracket {
            lo: x.clone(),
            hi: x,
            cluster: false,
        },
    };
    let mut candidates = vec![endpoint(Rational::zero())];
    candidates.extend(critical_points.iter().cloned());
    candidates.push(endpoint(Rational::one()));

    // Candidates are sorted by position, so the first strict minimum is the
    // smallest p among exact ties.
    let mut best = 0;
    let mut tie = false;
    for (i, c) in candidates.iter().enumerate().skip(1) {
        match c.value.cmp(&candidates[best].value) {
            std::cmp::Ordering::Less => {
                best = i;
                tie = false;
            }
            std::cmp::Ordering::Equal => tie = true,
            std::cmp::Ordering::Greater => {}
        }
    }
    let winner = candidates.swap_remove(best);
    Ok(MinimizationResult {
        degenerate: false,
        p_star_n: Some(to_f64(&winner.bracket.midpoint())),
        value: to_f64(&winner.value),
        value_exact: winner.value,
        bracket: Some(winner.bracket),
        tol,
        tie,
        critical_points,
    })
}

/// `p_n*` and `I(p_n*)` for a finite game.
pub fn minimize_advantage(params: &GameParams, tol: f64) -> Result<MinimizationResult> {
    tolerance(tol)?;
    let advantage = advantage_normalized(&normalize(params)?)?;
    minimize_result(&advantage, tol)
}

/// Same as [`minimize_advantage`] for an already computed polynomial.
pub fn minimize_result(advantage: &AdvantageResult, tol: f64) -> Result<MinimizationResult> {
    if advantage.degenerate {
        tolerance(tol)?;
        return Ok(MinimizationResult {
            degenerate: true,
            bracket: None,
            p_star_n: None,
            value_exact: Rational::one(),
            value: 1.0,
            tol,
            tie: false,
            critical_points: Vec::new(),
        });
    }
    minimize_on_unit_interval(&advantage.poly, tol)
}

/// Large-game optimum, which depends on `alpha / beta` only.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticOptimum {
    pub t: Rational,
    pub p_star: f64,
    pub sigma_sq_at_p_star: f64,
}

fn check_positive(alpha: &Rational, beta: &Rational) -> Result<()> {
    if !alpha.is_positive() {
        return Err(Error::NonPositive { field: "alpha" });
    }
    if !beta.is_positive() {
        return Err(Error::NonPositive { field: "beta" });
    }
    Ok(())
}

/// `1 + t - sqrt(1 + t + t²)` for `t > 0`.
pub fn p_star_of_ratio(t: f64) -> f64 {
    // Multiplied through by the conjugate to avoid cancellation for large t.
    t / (1.0 + t + (1.0 + t + t * t).sqrt())
}

pub fn asymptotic_pstar(alpha: &Rational, beta: &Rational) -> Result<AsymptoticOptimum> {
    check_positive(alpha, beta)?;
    let t = alpha / beta;
    let p_star = p_star_of_ratio(to_f64(&t));
    Ok(AsymptoticOptimum {
        sigma_sq_at_p_star: sigma_squared(p_star, alpha, beta)?,
        t,
        p_star,
    })
}

/// `(alpha + beta·p)³ / (beta²·p·(1 - p))` for `p ∈ (0, 1)`.
pub fn sigma_squared(p: f64, alpha: &Rational, beta: &Rational) -> Result<f64> {
    check_positive(alpha, beta)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::BiasAtPole(p.to_string()));
    }
    let (a, b) = (to_f64(alpha), to_f64(beta));
    Ok((a + b * p).powi(3) / (b * b * p * (1.0 - p)))
}

/// `d ln(sigma²) / dp = 3·beta/(alpha + beta·p) - 1/p + 1/(1 - p)`.
pub fn log_sigma_squared_slope(p: f64, alpha: f64, beta: f64) -> f64 {
    3.0 * beta / (alpha + beta * p) - 1.0 / p + 1.0 / (1.0 - p)
}

/// `I(p*)` evaluated exactly at the binary value of `p*`.
pub fn advantage_at_asymptotic(params: &GameParams) -> Result<f64> {
    let advantage = advantage_normalized(&normalize(params)?)?;
    if advantage.degenerate {
        return Ok(1.0);
    }
    let opt = asymptotic_pstar(&params.alpha, &params.beta)?;
    let p = Rational::from_float(opt.p_star)
        .ok_or_else(|| Error::Invariant(format!("p* = {} is not finite", opt.p_star)))?;
    Ok(to_f64(&advantage.poly.eval(&p)))
}
