//! Exact approximation costs and Kronecker constants for finite integer sets.
//!
//! For a set of positive integers `n_1 < ... < n_d` and targets `t_j`, the
//! approximation cost is the least `max_j <n_j x - t_j>` over real `x`, where
//! `<u>` is the distance from `u` to the nearest integer. The angular
//! constant is the worst cost over all targets and the binary constant the
//! worst over targets in `{0, 1/2}`.
//!
//! * [`arith`]: exact rationals, nearest-integer distance, Bezout pairs.
//! * [`pair`]: the two-element problem in closed form.
//! * [`greedy`]: certified upper bounds for `{a, b, n}`.
//! * [`closed_form`]: residues and the closed-form constants for `{a, b, n}`.
//! * [`oracle`]: brute-force ground truth for any finite set.
//! * [`report`] and [`cli`]: sweeps, verification, file formats, commands.

pub mod arith;
pub mod cli;
pub mod closed_form;
pub mod error;
pub mod greedy;
pub mod oracle;
pub mod pair;
pub mod report;

pub use arith::{angular_norm, bezout_coprime, nearest_int_distance, Rational};
pub use closed_form::{
    alpha_formula, alpha_witness, beta_formula, binary_mu, congruence_data, in_asymptotic_regime,
    ln_value, toggle_reduce, Triple,
};
pub use error::{Error, Result};
pub use greedy::{greedy_bound, greedy_en_certificate, Certificate, TripleProblem};
pub use oracle::{alpha_grid_lower_bound, beta_exact, mu_exact, OracleResult, SpectrumProblem};
pub use pair::{best_pair_approx, mu_pair, second_best_approx, BalancedApprox, PairProblem};
