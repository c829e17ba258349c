//! The two-frequency problem `{a, b}` with `a < b` coprime.
//!
//! Every solution here is *balanced*: the residuals of `a*x` and `b*x`
//! against their targets are equal in size and opposite in sign, which pins
//! `x = (t1 + k1 + t2 + k2) / (a + b)` once the integers are chosen.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{bezout_coprime, gcd, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairProblem {
    a: i64,
    b: i64,
    t1: Rational,
    t2: Rational,
}

impl PairProblem {
    pub fn new(a: i64, b: i64, t1: Rational, t2: Rational) -> Result<Self> {
        if a <= 0 || a >= b {
            return Err(Error::InvalidInput(format!(
                "pair needs 0 < a < b, got ({a}, {b})"
            )));
        }
        if gcd(a, b) != 1 {
            return Err(Error::NotCoprime { a, b });
        }
        Ok(PairProblem { a, b, t1, t2 })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn t1(&self) -> &Rational {
        &self.t1
    }

    pub fn t2(&self) -> &Rational {
        &self.t2
    }

    /// `a*t2 - b*t1`; the balanced residual for integers `(k1, k2)` is
    /// `(defect - (b*k1 - a*k2)) / (a + b)`.
    fn defect(&self) -> Rational {
        self.a * &self.t2 - self.b * &self.t1
    }

    /// Minimizing value of `b*k1 - a*k2`, floor choice on ties.
    fn optimal_shift(&self) -> BigInt {
        let d = self.defect();
        let m = d.floor();
        let below = &d - &Rational::from(&m);
        let above = Rational::from(&m + 1) - &d;
        if above < below {
            m + 1
        } else {
            m
        }
    }

    /// The balanced approximate built on integers `(k1, k2)`.
    pub fn balanced_at(&self, k1: BigInt, k2: BigInt) -> BalancedApprox {
        let x =
            (&self.t1 + Rational::from(&k1) + &self.t2 + Rational::from(&k2)) / (self.a + self.b);
        let residual = self.a * &x - &self.t1 - Rational::from(&k1);
        let sign = if residual.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        };
        BalancedApprox {
            lambda: residual.abs(),
            x,
            k1,
            k2,
            sign,
        }
    }
}

/// `x` together with the integers that balance its two residuals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalancedApprox {
    pub x: Rational,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub k1: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub k2: BigInt,
    pub lambda: Rational,
    /// Sign of `a*x - t1 - k1`; `Plus` when that residual is zero.
    pub sign: Sign,
}

impl BalancedApprox {
    /// `a*x - (t1 + k1)`.
    pub fn residual_a(&self, p: &PairProblem) -> Rational {
        p.a * &self.x - &p.t1 - Rational::from(&self.k1)
    }

    /// `b*x - (t2 + k2)`.
    pub fn residual_b(&self, p: &PairProblem) -> Rational {
        p.b * &self.x - &p.t2 - Rational::from(&self.k2)
    }

    pub fn is_balanced(&self, p: &PairProblem) -> bool {
        let ra = self.residual_a(p);
        let rb = self.residual_b(p);
        ra == -&rb
            && ra.abs() == self.lambda
            && self.x
                == (&p.t1 + Rational::from(&self.k1) + &p.t2 + Rational::from(&self.k2))
                    / (p.a + p.b)
    }
}

/// Approximation cost of `(t1, t2)` relative to `{a, b}`.
pub fn mu_pair(p: &PairProblem) -> Rational {
    let d = p.defect();
    let m = p.optimal_shift();
    (d - Rational::from(m)).abs() / (p.a + p.b)
}

/// A best approximate in balanced form.
///
/// The integers solve `b*k1 - a*k2 = m*` and, among all solutions, `k1` has
/// the smallest magnitude (non-negative on ties).
pub fn best_pair_approx(p: &PairProblem) -> BalancedApprox {
    if p.t1.is_zero() && p.t2.is_zero() {
        return BalancedApprox {
            x: Rational::zero(),
            k1: BigInt::zero(),
            k2: BigInt::zero(),
            lambda: Rational::zero(),
            sign: Sign::Plus,
        };
    }
    let m = p.optimal_shift();
    let (k1, k2) = solve_shift(p.a, p.b, &m);
    p.balanced_at(k1, k2)
}

/// Solutions of `b*k1 - a*k2 = m` with `k1` closest to zero.
fn solve_shift(a: i64, b: i64, m: &BigInt) -> (BigInt, BigInt) {
    let (g, h) = bezout_coprime(a, b).expect("pair problems are coprime");
    // a*g - b*h = 1  =>  b*(-h*m) - a*(-g*m) = m; general solution adds (a, b)*s
    let base1 = -(BigInt::from(h) * m);
    let base2 = -(BigInt::from(g) * m);
    let a_big = BigInt::from(a);
    let s_floor = (-&base1).div_floor(&a_big);
    let pick = |s: &BigInt| (&base1 + &a_big * s, &base2 + BigInt::from(b) * s);
    let lo = pick(&s_floor);
    let hi = pick(&(&s_floor + 1));
    if hi.0.abs() <= lo.0.abs() {
        hi
    } else {
        lo
    }
}

/// The balanced point on the other side of the best one, at the
/// complementary cost `1/(a+b) - mu_pair`.
pub fn second_best_approx(p: &PairProblem, best: &BalancedApprox) -> BalancedApprox {
    let (g, h) = bezout_coprime(p.a, p.b).expect("pair problems are coprime");
    let step = best.sign.as_i64();
    let k1 = &best.k1 - BigInt::from(step * h);
    let k2 = &best.k2 - BigInt::from(step * g);
    let mut second = p.balanced_at(k1, k2);
    if second.lambda.is_zero() {
        second.sign = best.sign.flip();
    }
    second
}
