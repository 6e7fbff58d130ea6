//! Exact analysis of the alternating biased-coin race game.
//!
//! Two players alternate tossing a coin with heads probability `p`. A toss is
//! worth `alpha` points on tails and `alpha + beta` on heads; the first player
//! to accumulate `n` points wins. This crate computes the first player's
//! winning probability `I(p | n, alpha, beta)` as an exact polynomial in `p`,
//! locates the bias that minimizes it, and checks both against a brute-force
//! enumerator and a seeded simulator.
//!
//! ```
//! use coinrace_core::{advantage_polynomial, GameParams};
//!
//! let result = advantage_polynomial(&GameParams::from_integers(3, 1, 1)).unwrap();
//! assert_eq!(result.poly.to_string(), "1 - 2p + 5p^2 - 4p^3 + p^4");
//! ```

pub mod advantage;
pub mod error;
pub mod exact_poly;
pub mod game;
pub mod minimizer;
pub mod oracle;
pub mod roots;
pub mod simulator;
pub mod stopping;

pub use advantage::{advantage_at, advantage_polynomial, tie_probability, AdvantageResult};
pub use error::{Error, Result};
pub use exact_poly::{binomial, poly_add, poly_derivative, poly_eval, poly_mul, Poly, Rational};
pub use game::{
    head_thresholds, normalize, parse_rational, turn_bounds, validate, GameParams,
    NormalizedParams, TurnBounds,
};
pub use minimizer::{
    advantage_at_asymptotic, asymptotic_pstar, minimize_advantage, sigma_squared,
    AsymptoticOptimum, MinimizationResult, DEFAULT_TOL,
};
pub use oracle::{brute_force_advantage, brute_force_tau_pmf, OracleDistribution};
pub use simulator::{simulate, simulate_at_pstar, SimConfig, SimResult};
pub use stopping::{tau_distribution, tau_pmf, TauDistribution};
