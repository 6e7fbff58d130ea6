//! The first player's winning probability as an exact polynomial in `p`.
//!
//! Both finishing times are independent and identically distributed, and the
//! first player wins every tie, so `I(p) = (1 + Σ_k P(τ = k)²) / 2`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_poly::{Poly, Rational};
use crate::game::{normalize, turn_bounds, GameParams, NormalizedParams, TurnBounds};
use crate::stopping::{tau_distribution, TauDistribution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdvantageResult {
    pub params: NormalizedParams,
    pub poly: Poly,
    /// `I ≡ 1`; happens exactly when `l == m`.
    pub degenerate: bool,
    pub bounds: TurnBounds,
}

/// `Σ_k P(τ = k)²` from an already built distribution.
pub fn tie_polynomial(dist: &TauDistribution) -> Poly {
    dist.pmf.values().map(|pmf| pmf * pmf).sum()
}

/// `(1 + Σ_k P(τ = k)²) / 2` from an already built distribution.
pub fn assemble_advantage(dist: &TauDistribution) -> Poly {
    let half = Rational::new(1.into(), 2.into());
    (&Poly::one() + &tie_polynomial(dist)).scale(&half)
}

fn check_assembled(params: &NormalizedParams, bounds: TurnBounds, poly: &Poly) -> Result<()> {
    let fail = |what: String| Err(Error::Invariant(format!("advantage for {params}: {what}")));
    if !poly.is_integral() {
        return fail(format!("non-integer coefficient in {poly}"));
    }
    if !poly.coeff(0).is_one() || !poly.eval(&Rational::one()).is_one() {
        return fail(format!("{poly} is not 1 at p = 0 and p = 1"));
    }
    if bounds.is_degenerate() {
        if !poly.is_one() {
            return fail(format!("l = m but the assembled polynomial is {poly}"));
        }
    } else {
        let expected = 2 * bounds.m as usize - 2;
        if poly.degree() != Some(expected) {
            return fail(format!(
                "degree {:?} differs from 2m - 2 = {expected}",
                poly.degree()
            ));
        }
    }
    Ok(())
}

/// Exact advantage polynomial with its structural checks applied.
pub fn advantage_polynomial(params: &GameParams) -> Result<AdvantageResult> {
    let normalized = normalize(params)?;
    advantage_normalized(&normalized)
}

pub fn advantage_normalized(params: &NormalizedParams) -> Result<AdvantageResult> {
    let bounds = turn_bounds(params)?;
    let degenerate = bounds.is_degenerate();
    let assembled = assemble_advantage(&tau_distribution(params)?);
    check_assembled(params, bounds, &assembled)?;
    let poly = if degenerate { Poly::one() } else { assembled };
    Ok(AdvantageResult {
        params: params.clone(),
        poly,
        degenerate,
        bounds,
    })
}

fn check_bias(p: &Rational) -> Result<()> {
    if *p < Rational::zero() || *p > Rational::one() {
        return Err(Error::BiasOutOfRange(p.to_string()));
    }
    Ok(())
}

/// Exact `I(p)` for `p ∈ [0, 1]`.
pub fn advantage_at(params: &GameParams, p: &Rational) -> Result<Rational> {
    check_bias(p)?;
    Ok(advantage_polynomial(params)?.poly.eval(p))
}

/// `P(τ₁ = τ₂) = Σ_k P(τ = k)²`, which equals `2·I(p) - 1`.
pub fn tie_probability(params: &GameParams) -> Result<Poly> {
    let normalized = normalize(params)?;
    Ok(tie_polynomial(&tau_distribution(&normalized)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::rational;

    fn game(n: i64, a: i64, b: i64) -> GameParams {
        GameParams::from_integers(n, a, b)
    }

    #[test]
    fn polynomial_examples() {
        let r = advantage_polynomial(&game(3, 1, 1)).unwrap();
        assert_eq!(r.poly, Poly::from_i64s(&[1, -2, 5, -4, 1]));
        assert!(!r.degenerate);

        let r = advantage_polynomial(&game(2, 2, 1)).unwrap();
        assert!(r.poly.is_one());
        assert!(r.degenerate);

        let r = advantage_polynomial(&game(10, 2, 3)).unwrap();
        assert_eq!(
            r.poly,
            Poly::from_i64s(&[1, -4, 22, -64, 102, -90, 43, -10, 1])
        );
    }

    #[test]
    fn advantage_at_examples() {
        let g = game(3, 1, 1);
        assert_eq!(advantage_at(&g, &rational(0, 1)).unwrap(), rational(1, 1));
        assert_eq!(advantage_at(&g, &rational(1, 1)).unwrap(), rational(1, 1));
        assert_eq!(advantage_at(&g, &rational(1, 2)).unwrap(), rational(13, 16));
        assert!(matches!(
            advantage_at(&g, &rational(3, 2)),
            Err(Error::BiasOutOfRange(_))
        ));
        assert!(advantage_at(&g, &rational(-1, 2)).is_err());
    }

    #[test]
    fn tie_probability_examples() {
        let tie = tie_probability(&game(3, 1, 1)).unwrap();
        assert_eq!(tie, Poly::from_i64s(&[1, -4, 10, -8, 2]));
        assert!(tie_probability(&game(2, 2, 1)).unwrap().is_one());
        for (n, a, b) in [(5, 1, 1), (7, 2, 3), (9, 3, 1)] {
            let tie = tie_probability(&game(n, a, b)).unwrap();
            assert!(tie.eval(&rational(0, 1)).is_one());
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert_eq!(
            advantage_polynomial(&game(5, 0, 1)).unwrap_err(),
            Error::NonPositive { field: "alpha" }
        );
    }

    #[test]
    fn reconstruction_and_bounds() {
        let half = rational(1, 2);
        let grid: Vec<Rational> = (0..=64).map(|i| rational(i, 64)).collect();
        for n in 1..=12 {
            for a in 1..=4 {
                for b in 1..=4 {
                    let g = game(n, a, b);
                    let r = advantage_polynomial(&g).unwrap();
                    let tie = tie_probability(&g).unwrap();
                    assert_eq!(r.poly, (&Poly::one() + &tie).scale(&half));
                    if r.degenerate {
                        assert!(r.poly.is_one());
                        assert_eq!(r.bounds.l, r.bounds.m);
                    } else {
                        assert_eq!(r.poly.degree(), Some(2 * r.bounds.m as usize - 2));
                    }
                    for x in &grid {
                        let v = r.poly.eval(x);
                        assert!(v >= half && v <= rational(1, 1), "{g} at {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn rational_params_match_scaled_integers() {
        let a = advantage_polynomial(&"3/2,1/2,1".parse().unwrap()).unwrap();
        let b = advantage_polynomial(&game(3, 1, 2)).unwrap();
        assert_eq!(a.poly, b.poly);
    }
}
