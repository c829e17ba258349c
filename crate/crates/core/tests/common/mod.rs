//! Helpers shared by the integration tests, including a second oracle that
//! shares no code with `mu_exact` beyond rational arithmetic.
#![allow(dead_code)]

use kronlab::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Distance to the nearest integer, from `floor` alone.
fn dist(u: &Rational) -> Rational {
    let below = u - Rational::from(u.floor());
    let above = Rational::one() - &below;
    below.min(above)
}

fn cost(spectrum: &[i64], targets: &[Rational], x: &Rational) -> Rational {
    spectrum
        .iter()
        .zip(targets)
        .map(|(&n, t)| dist(&(n * x - t)))
        .max()
        .unwrap()
}

/// Minimum of `x -> max_j <n_j x - t_j>` over `[0, 1)` by scanning the
/// intervals between breakpoints, where every component is linear.
///
/// Breakpoints are the `x` with `n_j x - t_j` in `(1/2) Z`. On each interval
/// the objective is a maximum of lines, so its minimum sits at an endpoint or
/// where two of the lines cross.
pub fn scan_mu(spectrum: &[i64], targets: &[Rational]) -> Rational {
    let mut points = vec![Rational::zero(), Rational::one()];
    for (&n, t) in spectrum.iter().zip(targets) {
        // x = (t + k/2) / n in [0, 1]
        let lo = (Rational::from(-2) * t).floor();
        let hi = (Rational::from(2 * n) - Rational::from(2) * t).ceil();
        let mut k = lo;
        while k <= hi {
            let x = (t + Rational::new(k.clone(), 2)) / n;
            if !x.is_negative() && x <= Rational::one() {
                points.push(x);
            }
            k += 1;
        }
    }
    points.sort();
    points.dedup();

    let mut best = cost(spectrum, targets, &points[0]);
    for w in points.windows(2) {
        let (p, r) = (&w[0], &w[1]);
        best = best.min(cost(spectrum, targets, r));
        let mid = (p + r) / 2;
        // on (p, r): <n x - t> = s (n x - t - c) with c, s fixed
        let lines: Vec<(Rational, Rational)> = spectrum
            .iter()
            .zip(targets)
            .map(|(&n, t)| {
                let u = n * &mid - t;
                let c = Rational::from(u.floor());
                let frac = &u - &c;
                if frac <= Rational::half() {
                    (Rational::from(n), -(t + &c))
                } else {
                    (Rational::from(-n), t + &c + Rational::one())
                }
            })
            .collect();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let slope = &lines[i].0 - &lines[j].0;
                if slope.is_zero() {
                    continue;
                }
                let x = (&lines[j].1 - &lines[i].1) / slope;
                if &x > p && &x < r {
                    best = best.min(cost(spectrum, targets, &x));
                }
            }
        }
    }
    best
}

/// Rationals `p/q` with `|p/q| <= bound` and `1 <= q <= max_den`.
pub fn rational(max_den: i64, bound: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den).prop_flat_map(move |den| {
        (-bound * den..=bound * den).prop_map(move |num| Rational::new(num, den))
    })
}

/// Strictly increasing positive spectra of length `1..=max_len` with
/// entries at most `max_n`.
pub fn spectrum(max_len: usize, max_n: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::btree_set(1..=max_n, 1..=max_len).prop_map(|s| s.into_iter().collect())
}

pub fn spectrum_with_targets(
    max_len: usize,
    max_n: i64,
) -> impl Strategy<Value = (Vec<i64>, Vec<Rational>)> {
    spectrum(max_len, max_n).prop_flat_map(|s| {
        let d = s.len();
        (Just(s), proptest::collection::vec(rational(30, 2), d))
    })
}

/// Coprime `a < b` with `b <= max_b`.
pub fn coprime_pair(max_b: i64) -> impl Strategy<Value = (i64, i64)> {
    (2..=max_b)
        .prop_flat_map(|b| (1..b, Just(b)))
        .prop_filter("coprime", |&(a, b)| num_integer::gcd(a, b) == 1)
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}
