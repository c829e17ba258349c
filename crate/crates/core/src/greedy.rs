//! Constructive upper bounds for `{a, b, n}`.
//!
//! Start from a balanced approximate of the pair `(t1, t2)`, pick an
//! alignment point `z` with `n*z = t3 (mod 1)` inside a window around it, and
//! slide `x` towards `z` just far enough to balance the third residual
//! against one of the first two. The resulting [`Certificate`] is always
//! re-evaluated from scratch; its cost is never taken from the construction.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{angular_norm, Rational};
use crate::closed_form::{alpha_formula, ln_value, pair_lift_bound, Triple};
use crate::error::{Error, Result};
use crate::pair::{best_pair_approx, second_best_approx, BalancedApprox, PairProblem, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleProblem {
    triple: Triple,
    targets: [Rational; 3],
}

impl TripleProblem {
    pub fn new(triple: Triple, targets: [Rational; 3]) -> Self {
        TripleProblem { triple, targets }
    }

    pub fn from_parts(a: i64, b: i64, n: i64, targets: [Rational; 3]) -> Result<Self> {
        Ok(TripleProblem::new(Triple::new(a, b, n)?, targets))
    }

    pub fn triple(&self) -> &Triple {
        &self.triple
    }

    pub fn targets(&self) -> &[Rational; 3] {
        &self.targets
    }

    pub fn pair(&self) -> PairProblem {
        PairProblem::new(
            self.triple.a,
            self.triple.b,
            self.targets[0].clone(),
            self.targets[1].clone(),
        )
        .expect("triples carry a valid pair")
    }

    pub fn negated(&self) -> TripleProblem {
        TripleProblem {
            triple: self.triple,
            targets: [-&self.targets[0], -&self.targets[1], -&self.targets[2]],
        }
    }

    /// `(n_j * x - t_j)` for each frequency.
    pub fn offsets(&self, x: &Rational) -> [Rational; 3] {
        let s = self.triple.spectrum();
        [
            s[0] * x - &self.targets[0],
            s[1] * x - &self.targets[1],
            s[2] * x - &self.targets[2],
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    SmallLambda,
    GreedyWindow,
    Oracle,
}

/// An approximate `x_star` for a triple problem with its exact cost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub x_star: Rational,
    #[serde(serialize_with = "crate::report::ser_bigints")]
    pub k: [BigInt; 3],
    pub cost: Rational,
    pub method: Method,
    /// The construction ran on `-t` and `x_star` was mapped back by negation.
    pub negated: bool,
}

impl Certificate {
    /// Evaluates `x_star` against `p`: each `k_j` is the integer nearest to
    /// `n_j * x_star - t_j` and the cost is the angular norm.
    pub fn evaluate(p: &TripleProblem, x_star: Rational, method: Method) -> Certificate {
        let offsets = p.offsets(&x_star);
        let cost = angular_norm(&offsets).expect("three components");
        let k = [
            offsets[0].nearest_integer(),
            offsets[1].nearest_integer(),
            offsets[2].nearest_integer(),
        ];
        Certificate {
            x_star,
            k,
            cost,
            method,
            negated: false,
        }
    }

    /// Recomputes the cost and integers and compares them with the stored ones.
    pub fn verify(&self, p: &TripleProblem) -> bool {
        let fresh = Certificate::evaluate(p, self.x_star.clone(), self.method);
        let residuals_match = p
            .offsets(&self.x_star)
            .iter()
            .zip(&self.k)
            .all(|(o, k)| (o - Rational::from(k)).abs() <= self.cost);
        fresh.cost == self.cost && residuals_match
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowCase {
    /// `a*x - t1 - k1 >= 0`
    PositiveSign,
    /// `a*x - t1 - k1 < 0`
    NegativeSign,
}

impl From<Sign> for WindowCase {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Plus => WindowCase::PositiveSign,
            Sign::Minus => WindowCase::NegativeSign,
        }
    }
}

/// Admissible alignment points `z` around a balanced approximate for a
/// target bound `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZWindow {
    pub lo: Rational,
    pub hi: Rational,
    pub case: WindowCase,
    pub anchor_x: Rational,
    pub bound: Rational,
    pub lambda: Rational,
}

impl ZWindow {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, z: &Rational) -> bool {
        &self.lo <= z && z <= &self.hi
    }

    /// The `k3` with `(t3 + k3)/n` in the window closest to `n * anchor_x`,
    /// the smaller one on ties.
    pub fn alignment(&self, t3: &Rational, n: i64) -> Option<BigInt> {
        let kmin = (n * &self.lo - t3).ceil();
        let kmax = (n * &self.hi - t3).floor();
        if kmin > kmax {
            return None;
        }
        let ideal = (n * &self.anchor_x - t3).nearest_integer();
        Some(ideal.clamp(kmin, kmax))
    }
}

/// Both windows of [`BalancedApprox`] `ba` for bound `bound >= ba.lambda`:
/// the positive-sign window first, then the negative-sign one.
pub fn z_windows(
    ba: &BalancedApprox,
    bound: &Rational,
    p: &TripleProblem,
) -> Result<(ZWindow, ZWindow)> {
    if bound < &ba.lambda {
        return Err(Error::EmptyWindow {
            bound: bound.to_string(),
            lambda: ba.lambda.to_string(),
        });
    }
    let Triple { a, b, n } = *p.triple();
    let x = &ba.x;
    let lam = &ba.lambda;
    let down_b = (n * lam - (b + n) * bound) / (b * n);
    let up_a = ((a + n) * bound - n * lam) / (a * n);
    let down_a = (n * lam - (a + n) * bound) / (a * n);
    let up_b = ((b + n) * bound - n * lam) / (b * n);
    let make = |lo: Rational, hi: Rational, case| ZWindow {
        lo: x + lo,
        hi: x + hi,
        case,
        anchor_x: x.clone(),
        bound: bound.clone(),
        lambda: lam.clone(),
    };
    Ok((
        make(down_b, up_a, WindowCase::PositiveSign),
        make(down_a, up_b, WindowCase::NegativeSign),
    ))
}

fn slack(t: &Triple) -> Rational {
    Rational::new(t.b - t.a, 2 * t.n)
}

/// Moves `x` straight onto an alignment point; valid when the pair cost is
/// at most `(b - a)/(2n)`, giving cost at most `(3b - a)/(2n)`.
pub fn small_lambda_certificate(p: &TripleProblem, ba: &BalancedApprox) -> Result<Certificate> {
    let t = p.triple();
    if ba.lambda > slack(t) {
        return Err(Error::NotApplicable(format!(
            "pair cost {} exceeds (b-a)/(2n) = {}",
            ba.lambda,
            slack(t)
        )));
    }
    let t3 = &p.targets()[2];
    let k3 = (t.n * &ba.x - t3).nearest_integer();
    let z = (t3 + Rational::from(k3)) / t.n;
    Ok(Certificate::evaluate(p, z, Method::SmallLambda))
}

/// Slides `ba.x` towards the alignment point `z` inside `window`.
pub fn modify(
    ba: &BalancedApprox,
    z: &Rational,
    p: &TripleProblem,
    window: &ZWindow,
) -> Result<Certificate> {
    let t = p.triple();
    let (a, b, n) = (t.a, t.b, t.n);
    if window.anchor_x != ba.x || window.lambda != ba.lambda {
        return Err(Error::NotApplicable(
            "window was built for a different approximate".into(),
        ));
    }
    if window.case != WindowCase::from(ba.sign) {
        return Err(Error::NotApplicable(
            "window case does not match the residual sign".into(),
        ));
    }
    if ba.lambda <= slack(t) {
        return Err(Error::NotApplicable(format!(
            "pair cost {} does not exceed (b-a)/(2n) = {}",
            ba.lambda,
            slack(t)
        )));
    }
    if !(n * z - &p.targets()[2]).is_integer() {
        return Err(Error::InvalidInput(format!(
            "n*z is not congruent to t3 for z = {z}"
        )));
    }
    if !window.contains(z) {
        return Err(Error::WindowViolation {
            z: z.to_string(),
            lo: window.lo.to_string(),
            hi: window.hi.to_string(),
        });
    }
    let gap = (n * (z - &ba.x)).abs();
    if gap > Rational::one() {
        return Err(Error::NotApplicable(format!(
            "|n z - n x| = {gap} exceeds 1"
        )));
    }
    if gap <= ba.lambda {
        return Ok(Certificate::evaluate(p, ba.x.clone(), Method::GreedyWindow));
    }
    let excess = &gap - &ba.lambda;
    let towards_lower = z <= &ba.x;
    // which of the pair residuals the third one gets balanced against
    let partner = match (ba.sign, towards_lower) {
        (Sign::Plus, true) | (Sign::Minus, false) => b,
        (Sign::Plus, false) | (Sign::Minus, true) => a,
    };
    let delta = excess / (partner + n);
    let x_star = if towards_lower {
        &ba.x - delta
    } else {
        &ba.x + delta
    };
    Ok(Certificate::evaluate(p, x_star, Method::GreedyWindow))
}

/// Cost the modification step reaches for alignment point `z` (no check of
/// the window); `lambda` when `|nz - nx| <= lambda`.
pub fn predicted_cost(ba: &BalancedApprox, z: &Rational, t: &Triple) -> Rational {
    let gap = (t.n * (z - &ba.x)).abs();
    if gap <= ba.lambda {
        return ba.lambda.clone();
    }
    let towards_lower = z <= &ba.x;
    let partner = match (ba.sign, towards_lower) {
        (Sign::Plus, true) | (Sign::Minus, false) => t.b,
        (Sign::Plus, false) | (Sign::Minus, true) => t.a,
    };
    &ba.lambda + partner * (gap - &ba.lambda) / (partner + t.n)
}

/// Certificate with cost at most
/// `max((n(a+b)mu + ab)/(2ab + an + bn), (3b - a)/(2n))`, `mu` the pair cost.
pub fn greedy_bound(p: &TripleProblem) -> Certificate {
    let ba = best_pair_approx(&p.pair());
    greedy_bound_from(p, &ba)
}

fn greedy_bound_from(p: &TripleProblem, ba: &BalancedApprox) -> Certificate {
    let t = p.triple();
    if ba.lambda.is_zero() || ba.lambda <= slack(t) {
        return small_lambda_certificate(p, ba).expect("pair cost is below the slack");
    }
    let bound = pair_lift_bound(t, &ba.lambda);
    let (plus, minus) = z_windows(ba, &bound, p).expect("lifted bound exceeds the pair cost");
    let window = match ba.sign {
        Sign::Plus => plus,
        Sign::Minus => minus,
    };
    let t3 = &p.targets()[2];
    let k3 = window
        .alignment(t3, t.n)
        .expect("window of width 1/n holds an alignment point");
    let z = (t3 + Rational::from(k3)) / t.n;
    modify(ba, &z, p, &window).expect("alignment point satisfies the modification preconditions")
}

/// Certificate with cost at most the closed-form constant `E_n`.
///
/// Works on `t` or `-t`, whichever gives a best pair approximate with a
/// non-negative `a` residual. Pair costs up to `1/(a+b) - L_n` go through
/// [`greedy_bound`]; larger ones search the union of the window around the
/// best point and the window around the second-best point, both at bound
/// `E_n`. Fails with [`Error::NotInAsymptoticRegime`] when `n` is too small
/// for either route, returning the [`greedy_bound`] certificate inside.
pub fn greedy_en_certificate(p: &TripleProblem) -> Result<Certificate> {
    let t = *p.triple();
    let pair = p.pair();
    let best = best_pair_approx(&pair);
    let negate = best.sign == Sign::Minus && best.lambda.is_positive();
    let work = if negate { p.negated() } else { p.clone() };
    let best = if negate {
        best_pair_approx(&work.pair())
    } else {
        best
    };

    let en = alpha_formula(&t).value;
    let ln = ln_value(&t);
    let gap = Rational::new(1, t.a + t.b);

    let outcome = if best.lambda <= &gap - &ln {
        Some(greedy_bound_from(&work, &best))
    } else {
        union_search(&work, &best, &en)
    };

    let finish = |cert: Certificate| {
        if negate {
            let mut back = Certificate::evaluate(p, -&cert.x_star, cert.method);
            back.negated = true;
            back
        } else {
            cert
        }
    };
    match outcome {
        Some(cert) if cert.cost <= en => Ok(finish(cert)),
        _ => Err(Error::NotInAsymptoticRegime {
            a: t.a,
            b: t.b,
            n: t.n,
            best_effort: Box::new(greedy_bound(p)),
        }),
    }
}

fn union_search(p: &TripleProblem, best: &BalancedApprox, en: &Rational) -> Option<Certificate> {
    let t = p.triple();
    let t3 = &p.targets()[2];
    let second = second_best_approx(&p.pair(), best);
    let (near, _) = z_windows(best, en, p).ok()?;
    let (_, far) = z_windows(&second, en, p).ok()?;

    let distance = |k: &BigInt, anchor: &Rational| (t.n * anchor - t3 - Rational::from(k)).abs();
    let options = [(near, best), (far, &second)]
        .into_iter()
        .filter_map(|(w, ba)| {
            w.alignment(t3, t.n)
                .map(|k| (distance(&k, &ba.x), k, w, ba))
        });
    let (_, k3, window, ba) = options.min_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)))?;
    let z = (t3 + Rational::from(k3)) / t.n;
    modify(ba, &z, p, &window).ok()
}
