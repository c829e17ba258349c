//! Exact brute-force approximation costs for arbitrary finite spectra.
//!
//! `x -> max_j <n_j x - t_j>` is piecewise linear with slopes `±n_j`, so its
//! minimum over a period sits where two pieces of opposite slope meet. For
//! frequencies `n_i, n_j` (including `i = j`) such points have the form
//! `x = (t_i + t_j + s) / (n_i + n_j)` for an integer `s`; enumerating every
//! pair and every `s` with `x` in `[0, 1)` finds the minimum. Work is
//! `O(d^2 * max(n_i + n_j))` candidate evaluations.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Default cap on the set size for the `2^d` binary enumeration.
pub const DEFAULT_BINARY_CAP: usize = 12;

/// Grid searches refuse to visit more targets than this.
pub const GRID_POINT_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumProblem {
    spectrum: Vec<i64>,
    targets: Vec<Rational>,
}

impl SpectrumProblem {
    pub fn new(spectrum: Vec<i64>, targets: Vec<Rational>) -> Result<Self> {
        validate_spectrum(&spectrum)?;
        if spectrum.len() != targets.len() {
            return Err(Error::InvalidInput(format!(
                "{} frequencies but {} targets",
                spectrum.len(),
                targets.len()
            )));
        }
        Ok(SpectrumProblem { spectrum, targets })
    }

    pub fn spectrum(&self) -> &[i64] {
        &self.spectrum
    }

    pub fn targets(&self) -> &[Rational] {
        &self.targets
    }

    /// `n_j * x - t_j` for every frequency.
    pub fn offsets(&self, x: &Rational) -> Vec<Rational> {
        self.spectrum
            .iter()
            .zip(&self.targets)
            .map(|(&n, t)| n * x - t)
            .collect()
    }

    /// Angular norm of the offsets at `x`.
    pub fn cost_at(&self, x: &Rational) -> Rational {
        self.offsets(x)
            .iter()
            .map(Rational::nearest_int_distance)
            .max()
            .expect("spectrum is non-empty")
    }
}

pub fn validate_spectrum(spectrum: &[i64]) -> Result<()> {
    if spectrum.is_empty() {
        return Err(Error::InvalidInput("empty spectrum".into()));
    }
    if spectrum[0] <= 0 {
        return Err(Error::InvalidInput(format!(
            "frequencies must be positive, got {}",
            spectrum[0]
        )));
    }
    if spectrum.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(format!(
            "frequencies must be strictly increasing: {spectrum:?}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub value: Rational,
    /// Smallest minimizer in `[0, 1)`.
    pub x_star: Rational,
    #[serde(serialize_with = "crate::report::ser_bigint_vec")]
    pub k_star: Vec<BigInt>,
    pub candidates_examined: u64,
}

/// Exact minimum of `x -> ||<n x - t>||_inf` over one period.
pub fn mu_exact(p: &SpectrumProblem) -> OracleResult {
    let d = p.spectrum.len();
    let mut best: Option<(Rational, Rational)> = None;
    let mut examined = 0u64;
    for i in 0..d {
        for j in i..d {
            let span = p.spectrum[i] + p.spectrum[j];
            let base = &p.targets[i] + &p.targets[j];
            // x = (base + s) / span in [0, 1)  <=>  -base <= s < span - base
            let first = (-&base).ceil();
            let last = (span - &base).ceil() - 1;
            let mut s = first;
            while s <= last {
                examined += 1;
                let x = (&base + Rational::from(&s)) / span;
                let bound = best.as_ref().map(|(v, _)| v);
                if let Some(value) = cost_if_not_worse(p, &x, bound) {
                    let better = match &best {
                        None => true,
                        Some((v, bx)) => value < *v || (value == *v && x < *bx),
                    };
                    if better {
                        best = Some((value, x));
                    }
                }
                s += 1;
            }
        }
    }
    let (value, x_star) = best.expect("every pair contributes at least one candidate");
    let k_star = p
        .offsets(&x_star)
        .iter()
        .map(Rational::nearest_integer)
        .collect();
    OracleResult {
        value,
        x_star,
        k_star,
        candidates_examined: examined,
    }
}

/// Cost at `x`, or `None` as soon as a component exceeds `bound`.
fn cost_if_not_worse(
    p: &SpectrumProblem,
    x: &Rational,
    bound: Option<&Rational>,
) -> Option<Rational> {
    let mut worst = Rational::zero();
    for (&n, t) in p.spectrum.iter().zip(&p.targets) {
        let dist = (n * x - t).nearest_int_distance();
        if let Some(b) = bound {
            if &dist > b {
                return None;
            }
        }
        if dist > worst {
            worst = dist;
        }
    }
    Some(worst)
}

/// Upper limit on the candidate count of [`mu_exact`]:
/// `sum over i <= j of (n_i + n_j + 1)`.
pub fn candidate_budget(spectrum: &[i64]) -> u64 {
    let mut total = 0u64;
    for (i, &ni) in spectrum.iter().enumerate() {
        for &nj in &spectrum[i..] {
            total += (ni + nj) as u64 + 1;
        }
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extremum {
    pub value: Rational,
    pub argmax: Vec<Rational>,
    pub targets_evaluated: u64,
}

fn binary_target(d: usize, mask: u64) -> Vec<Rational> {
    (0..d)
        .map(|j| {
            if mask >> (d - 1 - j) & 1 == 1 {
                Rational::half()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// Maximum of [`mu_exact`] over all `{0, 1/2}` targets.
///
/// Targets related by toggling at odd frequencies share a cost, so only the
/// lexicographically smaller member of each pair is evaluated.
pub fn beta_exact(spectrum: &[i64], cap: usize) -> Result<Extremum> {
    validate_spectrum(spectrum)?;
    let d = spectrum.len();
    if d > cap || d > 62 {
        return Err(Error::TooLarge { size: d, cap });
    }
    let toggle_mask: u64 = spectrum
        .iter()
        .enumerate()
        .filter(|(_, &n)| n % 2 != 0)
        .map(|(j, _)| 1u64 << (d - 1 - j))
        .sum();
    let masks: Vec<u64> = (0..1u64 << d).filter(|&m| m <= m ^ toggle_mask).collect();
    let best = masks
        .par_iter()
        .map(|&mask| {
            let targets = binary_target(d, mask);
            let p = SpectrumProblem::new(spectrum.to_vec(), targets).expect("validated");
            (mu_exact(&p).value, mask)
        })
        .reduce_with(pick_max)
        .expect("at least the zero target");
    Ok(Extremum {
        value: best.0,
        argmax: binary_target(d, best.1),
        targets_evaluated: masks.len() as u64,
    })
}

/// Larger value wins; on ties the smaller index (earlier target) wins.
fn pick_max(x: (Rational, u64), y: (Rational, u64)) -> (Rational, u64) {
    if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
        y
    } else {
        x
    }
}

/// Lower bound for the angular constant: the largest [`mu_exact`] over
/// targets with `t_1 = 0` and every other entry in `{0, 1/D, ..., (D-1)/D}`.
pub fn alpha_grid_lower_bound(spectrum: &[i64], denominator: i64) -> Result<Extremum> {
    validate_spectrum(spectrum)?;
    if denominator < 2 {
        return Err(Error::InvalidInput(format!(
            "grid denominator must be at least 2, got {denominator}"
        )));
    }
    let d = spectrum.len();
    let free = (d - 1) as u32;
    let count = (denominator as u64)
        .checked_pow(free)
        .filter(|&c| c <= GRID_POINT_LIMIT)
        .ok_or(Error::TooLarge {
            size: d,
            cap: GRID_POINT_LIMIT as usize,
        })?;
    let target_of = |index: u64| -> Vec<Rational> {
        let mut digits = vec![0i64; d];
        let mut rest = index;
        for slot in digits.iter_mut().skip(1).rev() {
            *slot = (rest % denominator as u64) as i64;
            rest /= denominator as u64;
        }
        digits
            .into_iter()
            .map(|k| Rational::new(k, denominator))
            .collect()
    };
    let best = (0..count)
        .into_par_iter()
        .map(|index| {
            let p = SpectrumProblem::new(spectrum.to_vec(), target_of(index)).expect("validated");
            (mu_exact(&p).value, index)
        })
        .reduce_with(pick_max)
        .expect("grid is non-empty");
    Ok(Extremum {
        value: best.0,
        argmax: target_of(best.1),
        targets_evaluated: count,
    })
}
