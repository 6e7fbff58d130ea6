//! Real-root isolation on the open unit interval.
//!
//! Isolation subdivides dyadic intervals and bounds the number of roots in each
//! with Descartes' rule of signs applied to the Möbius-transformed polynomial.
//! Once an interval holds exactly one (hence simple) root with nonzero values
//! at both ends, it is narrowed by sign bisection using exact rational
//! evaluation. Nothing here rounds.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact_poly::{Poly, Rational};

/// A closed interval known to contain a root; `lo == hi` for an exact root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: Rational,
    pub hi: Rational,
    /// The bracket may hold several roots (or one multiple root) that could
    /// not be separated at the requested width.
    pub cluster: bool,
}

impl RootBracket {
    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Sign changes in a coefficient sequence, zeros skipped.
fn sign_variations(coeffs: &[BigInt]) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        let negative = c.is_negative();
        if last.is_some_and(|prev| prev != negative) {
            count += 1;
        }
        last = Some(negative);
    }
    count
}

/// `Q(x + 1)` in place.
fn taylor_shift_one(coeffs: &mut [BigInt]) {
    let d = coeffs.len();
    for i in 0..d {
        for j in (i..d.saturating_sub(1)).rev() {
            let (lo, hi) = coeffs.split_at_mut(j + 1);
            lo[j] += &hi[0];
        }
    }
}

/// Upper bound on the number of roots of `Q` in `(0, 1)`, exact when 0 or 1.
fn descartes_bound(coeffs: &[BigInt]) -> usize {
    // (x + 1)^d Q(1 / (x + 1)) maps (0, 1) onto (0, ∞).
    let mut transformed: Vec<BigInt> = coeffs.iter().rev().cloned().collect();
    taylor_shift_one(&mut transformed);
    sign_variations(&transformed)
}

/// `2^d Q(x / 2)`: the left half of the current interval, rescaled.
fn left_half(coeffs: &[BigInt]) -> Vec<BigInt> {
    let d = coeffs.len() - 1;
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c << (d - i))
        .collect()
}

/// Dyadic interval `[k / 2^level, (k + 1) / 2^level]` with the polynomial
/// `2^(level·d) P((k + x) / 2^level)`.
struct Node {
    k: BigInt,
    level: u32,
    coeffs: Vec<BigInt>,
}

fn dyadic(k: &BigInt, level: u32) -> Rational {
    Rational::new(k.clone(), BigInt::one() << level)
}

/// Brackets every root of `poly` in the open interval `(0, 1)`, each to
/// width at most `tol`, sorted by position. Panics on the zero polynomial.
pub fn isolate_unit_roots(poly: &Poly, tol: &Rational) -> Vec<RootBracket> {
    assert!(!poly.is_zero(), "the zero polynomial has no isolated roots");
    assert!(tol.is_positive());
    let coeffs = poly.cleared_denominators();
    if coeffs.len() <= 1 {
        return Vec::new();
    }

    let mut found = Vec::new();
    let mut stack = vec![Node {
        k: BigInt::zero(),
        level: 0,
        coeffs,
    }];
    while let Some(node) = stack.pop() {
        let lo = dyadic(&node.k, node.level);
        let hi = dyadic(&(&node.k + 1), node.level);
        let width = &hi - &lo;
        match descartes_bound(&node.coeffs) {
            0 => continue,
            1 => {
                let at_lo = !node.coeffs[0].is_zero();
                let at_hi = !node.coeffs.iter().sum::<BigInt>().is_zero();
                if at_lo && at_hi {
                    found.push(refine_simple_root(poly, lo, hi, tol));
                    continue;
                }
            }
            _ => {}
        }
        if width <= *tol {
            found.push(RootBracket {
                lo,
                hi,
                cluster: true,
            });
            continue;
        }
        let left = left_half(&node.coeffs);
        let mut right = left.clone();
        taylor_shift_one(&mut right);
        if right[0].is_zero() {
            let mid = dyadic(&(&node.k * 2 + 1), node.level + 1);
            found.push(RootBracket {
                lo: mid.clone(),
                hi: mid,
                cluster: false,
            });
        }
        let level = node.level + 1;
        stack.push(Node {
            k: &node.k * 2 + 1,
            level,
            coeffs: right,
        });
        stack.push(Node {
            k: &node.k * 2,
            level,
            coeffs: left,
        });
    }
    found.sort_by(|a, b| a.lo.cmp(&b.lo));
    found
}

/// Sign bisection on `[lo, hi]`, which holds exactly one simple root and no
/// root at either end.
fn refine_simple_root(
    poly: &Poly,
    mut lo: Rational,
    mut hi: Rational,
    tol: &Rational,
) -> RootBracket {
    let two = Rational::from_integer(2.into());
    let lo_negative = poly.eval(&lo).is_negative();
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        let value = poly.eval(&mid);
        if value.is_zero() {
            return RootBracket {
                lo: mid.clone(),
                hi: mid,
                cluster: false,
            };
        }
        if value.is_negative() == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RootBracket {
        lo,
        hi,
        cluster: false,
    }
}
